#include "dyntw/harness.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "dyntw/oracles.hpp"

namespace dyntw {

using nlohmann::json;

std::vector<ScriptLine> parse_script(std::istream& in) {
    std::vector<ScriptLine> out;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::istringstream ls(raw);
        std::string op;
        if (!(ls >> op) || op[0] == '#') continue;
        ScriptLine line;
        line.line_no = lineno;
        std::string extra;
        if (op == "insert" || op == "delete") {
            long long u = 0;
            long long v = 0;
            if (!(ls >> u >> v) || (ls >> extra)) throw ScriptError(lineno, "expected '" + op + " u v'");
            line.kind = ScriptLine::Kind::Change;
            line.change = op == "insert" ? EdgeChange::insert(static_cast<VertexId>(u), static_cast<VertexId>(v))
                                         : EdgeChange::erase(static_cast<VertexId>(u), static_cast<VertexId>(v));
        } else if (op == "query") {
            std::string prop;
            if (!(ls >> prop) || (ls >> extra)) throw ScriptError(lineno, "expected 'query <property>'");
            try {
                line.property = parse_property(prop);
            } catch (const std::invalid_argument& e) {
                throw ScriptError(lineno, e.what());
            }
            line.kind = ScriptLine::Kind::Query;
        } else {
            throw ScriptError(lineno, "unknown command '" + op + "'");
        }
        out.push_back(line);
    }
    return out;
}

std::string to_string(const ScriptLine& l) {
    if (l.kind == ScriptLine::Kind::Query) return "query " + std::string(property_name(l.property));
    return to_string(l.change);
}

void write_script(std::ostream& out, const std::vector<ScriptLine>& script) {
    for (const auto& l : script) out << to_string(l) << '\n';
}

std::vector<ScriptLine> gen_script(const ScriptGenOptions& opt) {
    const PartialKTree t = gen_partial_ktree(opt.tree);
    std::vector<EdgeChange> changes = insertion_script(t);
    const auto mixed = mixed_changes(t, {opt.mixed_steps, opt.delete_prob, opt.seed ^ 0x9e3779b97f4a7c15ULL});
    changes.insert(changes.end(), mixed.begin(), mixed.end());

    std::mt19937_64 rng(opt.seed);
    std::bernoulli_distribution ask(opt.query_prob);
    std::uniform_int_distribution<int> which(0, 2);
    std::vector<ScriptLine> out;
    for (const auto& c : changes) {
        out.push_back(ScriptLine::of(c));
        if (ask(rng)) out.push_back(ScriptLine::query(kAllProperties[which(rng)]));
    }
    return out;
}

namespace {

json answer_json(const Answer& a) {
    json j;
    j["feasible"] = a.feasible;
    if (a.property != Property::ThreeCol) {
        j["optimum"] = a.optimum;
        j["witness"] = a.witness;
    }
    return j;
}

json counters_json(const StepCounters& c) {
    return json{{"table_units_built", c.table_units_built},
                {"foreground_units", c.foreground_units},
                {"special_bags", c.special_bags},
                {"center_size", c.center_size},
                {"skeleton_dp_states", c.skeleton_dp_states}};
}

}  // namespace

std::string to_json_line(const RunRecord& r) {
    json j;
    j["step"] = r.step;
    if (r.line.kind == ScriptLine::Kind::Change) {
        j["op"] = r.line.change.kind == ChangeKind::Insert ? "insert" : "delete";
        j["u"] = r.line.change.u;
        j["v"] = r.line.change.v;
    } else {
        j["op"] = "query";
        j["property"] = property_name(r.line.property);
    }
    if (r.answer) j["answer"] = answer_json(*r.answer);
    j["phase"] = phase_name(r.phase);
    j["serving"] = r.serving;
    j["counters"] = counters_json(r.counters);
    return j.dump();
}

bool answer_matches_oracle(const DynamicGraph& g, const Answer& a, std::string* why) {
    const Answer o = brute_answer(g, a.property);
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (a.feasible != o.feasible) return fail("decision differs from oracle");
    if (a.property == Property::ThreeCol) return true;
    if (a.optimum != o.optimum)
        return fail("optimum " + std::to_string(a.optimum) + " but oracle says " + std::to_string(o.optimum));
    if (static_cast<int64_t>(a.witness.size()) != a.optimum) return fail("witness size differs from optimum");
    const bool valid = a.property == Property::VertexCover ? is_vertex_cover(g, a.witness) : is_dominating_set(g, a.witness);
    if (!valid) return fail("witness is not feasible");
    return true;
}

RunResult run_script(const std::vector<ScriptLine>& script, const RunConfig& cfg) {
    RunResult res;
    Engine engine(cfg.engine);
    engine.take_counters();
    int step = 0;
    for (const auto& line : script) {
        RunRecord rec;
        rec.step = ++step;
        rec.line = line;
        try {
            if (line.kind == ScriptLine::Kind::Change)
                engine.apply(line.change);
            else
                rec.answer = engine.query(line.property);
        } catch (const ScriptError&) {
            throw;
        } catch (const std::exception& e) {
            throw ScriptError(line.line_no ? line.line_no : step, std::string(e.what()) + " (" + to_string(line) + ")");
        }
        rec.phase = engine.phase();
        rec.serving = engine.serving();
        rec.counters = engine.take_counters();
        res.records.push_back(rec);
        if (cfg.verify && rec.answer) {
            std::string why;
            if (!answer_matches_oracle(engine.graph(), *rec.answer, &why)) {
                res.verified = false;
                res.mismatch = "step " + std::to_string(step) + " (" + to_string(line) + "): " + why;
                break;
            }
        }
    }
    res.handovers = engine.handovers();
    return res;
}

BenchSummary bench(const std::vector<ScriptLine>& script, const EngineConfig& cfg) {
    BenchSummary s;
    s.mode = cfg.mode;
    const auto t0 = std::chrono::steady_clock::now();
    Engine engine(cfg);
    std::vector<uint64_t> per_change;
    uint64_t carry = engine.take_counters().table_units_built;  // construction work
    s.total_units += carry;
    for (const auto& line : script) {
        if (line.kind == ScriptLine::Kind::Change) {
            engine.apply(line.change);
            ++s.changes;
        } else {
            engine.query(line.property);
            ++s.queries;
        }
        const StepCounters c = engine.take_counters();
        s.total_units += c.table_units_built;
        s.foreground_units += c.foreground_units;
        if (engine.serving() || cfg.mode == RecomputeMode::FullRecompute) s.serving_foreground_units += c.foreground_units;
        s.skeleton_dp_states += c.skeleton_dp_states;
        s.max_special_bags = std::max(s.max_special_bags, c.special_bags);
        s.max_center_size = std::max(s.max_center_size, c.center_size);
        if (line.kind == ScriptLine::Kind::Change) per_change.push_back(c.table_units_built);
    }
    s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    s.handovers = engine.handovers();
    if (!per_change.empty()) {
        s.max_units_per_change = *std::max_element(per_change.begin(), per_change.end());
        uint64_t sum = 0;
        for (auto u : per_change) sum += u;
        s.mean_units_per_change = static_cast<double>(sum) / static_cast<double>(per_change.size());
        std::sort(per_change.begin(), per_change.end());
        s.median_units_per_change = static_cast<double>(per_change[per_change.size() / 2]);
    }
    return s;
}

std::string to_json_line(const BenchSummary& s) {
    json j{{"mode", mode_name(s.mode)},
           {"changes", s.changes},
           {"queries", s.queries},
           {"total_units", s.total_units},
           {"foreground_units", s.foreground_units},
           {"serving_foreground_units", s.serving_foreground_units},
           {"max_units_per_change", s.max_units_per_change},
           {"mean_units_per_change", s.mean_units_per_change},
           {"median_units_per_change", s.median_units_per_change},
           {"skeleton_dp_states", s.skeleton_dp_states},
           {"max_special_bags", s.max_special_bags},
           {"max_center_size", s.max_center_size},
           {"handovers", s.handovers},
           {"seconds", s.seconds}};
    return j.dump();
}

}  // namespace dyntw
