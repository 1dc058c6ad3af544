// One pass/fail line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "dyntw/decomposition.hpp"
#include "dyntw/engine.hpp"
#include "dyntw/harness.hpp"
#include "dyntw/oracles.hpp"
#include "dyntw/skeleton.hpp"

using namespace dyntw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string failure;

    void fail(const std::string& why) {
        if (pass) failure = why;
        pass = false;
    }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
    std::cout << "criterion " << id << " [" << title << "]: " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail
              << ")";
    if (!o.pass) std::cout << " first failure: " << o.failure;
    std::cout << std::endl;
    failures += !o.pass;
}

std::string fmt(double x, int digits = 2) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

KTreeOptions tree_options(int32_t n, int k, double keep, uint64_t seed, int32_t block = 0) {
    KTreeOptions o;
    o.n = n;
    o.k = k;
    o.keep_prob = keep;
    o.seed = seed;
    o.block_size = block;
    return o;
}

ScriptGenOptions script_options(int32_t n, int k, uint64_t seed) {
    ScriptGenOptions o;
    o.tree = tree_options(n, k, 0.6, seed, 16);
    o.mixed_steps = 10 * epoch_length(n, 1.0);
    o.query_prob = 0.5;
    o.seed = seed;
    return o;
}

// 1. Decomposition pipeline.
Outcome decomposition_pipeline() {
    Outcome o;
    const auto t0 = Clock::now();
    double worst_c = 0;
    double worst_ratio = 0;
    int runs = 0;
    for (int k = 1; k <= 4; ++k) {
        for (int32_t n : {16, 32, 64, 128, 256}) {
            for (uint64_t s = 1; s <= 10; ++s) {
                ++runs;
                const auto g = DynamicGraph::from_edges(n, gen_partial_ktree(tree_options(n, k, 0.7, s)).kept);
                const std::string tag = "k=" + std::to_string(k) + " n=" + std::to_string(n) + " seed=" +
                                        std::to_string(s);
                try {
                    const auto td = decompose(g, 64);
                    const auto ntd = nicefy(balance(td), n);
                    if (!verify_td(g, ntd.td()).ok()) o.fail(tag + ": verify_td reports violations");
                    if (ntd.td().max_degree() > 2) o.fail(tag + ": degree above 2");
                    const std::set<Bag> distinct(ntd.td().bags.begin(), ntd.td().bags.end());
                    if (distinct.size() != ntd.size()) o.fail(tag + ": repeated bags");
                    if (!ntd.niceness_problems().empty()) o.fail(tag + ": " + ntd.niceness_problems().front());
                    const int w = std::max(td.width(), 1);
                    if (ntd.width() > 3 * w + 4) o.fail(tag + ": width " + std::to_string(ntd.width()));
                    worst_ratio = std::max(worst_ratio, static_cast<double>(ntd.width()) / w);
                    worst_c = std::max(worst_c, static_cast<double>(ntd.depth()) / std::log2(n));
                } catch (const std::exception& e) {
                    o.fail(tag + ": " + e.what());
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    if (worst_c > 6) o.fail("depth factor c=" + fmt(worst_c) + " above 6");
    if (secs >= 30) o.fail("took " + fmt(secs) + " s");
    o.detail = std::to_string(runs) + " decompositions, max depth/log2 n c=" + fmt(worst_c) +
               ", max width/w_heuristic=" + fmt(worst_ratio) + ", " + fmt(secs) + " s";
    return o;
}

// 2. Static oracle equivalence.
Outcome static_equivalence() {
    Outcome o;
    const auto t0 = Clock::now();
    int graphs = 0;
    int queries = 0;
    for (uint64_t s = 1; s <= 500; ++s) {
        const int k = 1 + static_cast<int>(s % 3);
        const auto n = static_cast<int32_t>(std::max<uint64_t>(k + 1, 4 + s % 11));
        const double keep = 0.5 + 0.1 * static_cast<double>(s % 5);
        const auto g = DynamicGraph::from_edges(n, gen_partial_ktree(tree_options(n, k, keep, s)).kept);
        ++graphs;
        try {
            const auto store = compute_tables(g, k);
            for (Property p : kAllProperties) {
                ++queries;
                const Answer got = query_static(*store, g, p);
                const Answer want = brute_answer(g, p);
                std::string why;
                if (got.feasible != want.feasible || got.optimum != want.optimum ||
                    !answer_matches_oracle(g, got, &why))
                    o.fail("seed " + std::to_string(s) + " " + std::string(property_name(p)) + ": " + why);
            }
        } catch (const std::exception& e) {
            o.fail("seed " + std::to_string(s) + ": " + e.what());
        }
    }
    const double secs = seconds_since(t0);
    if (secs >= 60) o.fail("took " + fmt(secs) + " s");
    o.detail = std::to_string(graphs) + " graphs, " + std::to_string(queries) + " queries, " + fmt(secs) + " s";
    return o;
}

// 3 and 4 share the dynamic runs.
struct DynamicOutcome {
    Outcome correctness;
    Outcome structure;
};

void check_structure(const LiveState& live, Outcome& o, const std::string& tag, size_t& max_s, size_t& max_iface) {
    const auto& ntd = live.tables().ntd();
    const auto& s = live.special().nodes;
    const size_t m = live.changes_absorbed();
    max_s = std::max(max_s, s.size());
    if (s.size() > 4 * m + 1)
        o.fail(tag + ": |S|=" + std::to_string(s.size()) + " after " + std::to_string(m) + " changes");
    const size_t ell = ntd.max_bag();
    for (const auto& petal : live.center().petals) {
        max_iface = std::max(max_iface, petal.interface_vertices.size());
        if (petal.interface_vertices.size() > 3 * ell + 1)
            o.fail(tag + ": petal interface " + std::to_string(petal.interface_vertices.size()));
    }
    std::vector<int> hits(ntd.size(), 0);
    for (const auto& t : maximal_clean_triangles(ntd, s))
        for (NodeId j : triangle_nodes(ntd, t))
            if (!s.count(j)) ++hits[static_cast<size_t>(j)];
    for (NodeId j = 0; j < static_cast<NodeId>(ntd.size()); ++j)
        if (hits[static_cast<size_t>(j)] != (s.count(j) ? 0 : 1))
            o.fail(tag + ": node " + std::to_string(j) + " covered " + std::to_string(hits[static_cast<size_t>(j)]) +
                   " times");
}

DynamicOutcome dynamic_runs() {
    DynamicOutcome d;
    Outcome& c = d.correctness;
    Outcome& st = d.structure;
    const auto t0 = Clock::now();
    double structure_secs = 0;
    size_t queries = 0;
    uint64_t min_handovers = ~uint64_t{0};
    size_t max_s = 0;
    size_t max_iface = 0;
    size_t states_checked = 0;
    for (uint64_t s = 1; s <= 100; ++s) {
        const int32_t n = s % 2 ? 64 : 128;
        const int k = 1 + static_cast<int>(s % 3);
        const auto script = gen_script(script_options(n, k, s));
        EngineConfig cfg;
        cfg.n = n;
        cfg.k_budget = k;
        Engine engine(cfg);
        const std::string tag = "script " + std::to_string(s);
        try {
            for (const auto& line : script) {
                const std::string at = tag + " line " + std::to_string(line.line_no);
                if (line.kind == ScriptLine::Kind::Change) {
                    engine.apply(line.change);
                    const auto ts = Clock::now();
                    for (const LiveState* live : {engine.live(), engine.pending()}) {
                        if (!live) continue;
                        check_structure(*live, st, at, max_s, max_iface);
                        ++states_checked;
                    }
                    structure_secs += seconds_since(ts);
                    continue;
                }
                ++queries;
                const Answer got = engine.query(line.property);
                if (!(got == brute_answer(engine.graph(), line.property)))
                    c.fail(at + ": " + std::string(property_name(line.property)) + " differs from the oracle");
            }
        } catch (const std::exception& e) {
            c.fail(tag + ": " + e.what());
        }
        min_handovers = std::min(min_handovers, engine.handovers());
        if (engine.handovers() < 5) c.fail(tag + ": only " + std::to_string(engine.handovers()) + " handovers");
    }
    const double secs = seconds_since(t0) - structure_secs;
    if (secs >= 120) c.fail("took " + fmt(secs) + " s");
    c.detail = "100 scripts, " + std::to_string(queries) + " queries, min handovers " +
               std::to_string(min_handovers) + ", " + fmt(secs) + " s";
    st.detail = std::to_string(states_checked) + " live states, max |S|=" + std::to_string(max_s) +
                ", max petal interface " + std::to_string(max_iface) + ", " + fmt(structure_secs) + " s";
    return d;
}

// 5. Opposite changes inside phase 1 cancel.
Outcome delta_semantics() {
    Outcome o;
    int epochs = 0;
    for (uint64_t s = 1; s <= 20; ++s) {
        const int32_t n = 64;
        const auto tree = gen_partial_ktree(tree_options(n, 2, 0.6, s, 16));
        EngineConfig cfg;
        cfg.n = n;
        cfg.k_budget = 2;
        Engine engine(cfg);
        const std::string tag = "seed " + std::to_string(s);
        try {
            for (const auto& c : insertion_script(tree)) engine.apply(c);
            // Filler changes toggle one k-tree edge, so components stay within oracle bounds.
            const Edge filler = tree.ktree_edges.front();
            auto toggle = [&](const Edge& e) {
                engine.apply(engine.graph().has_edge(e.u, e.v) ? EdgeChange::erase(e.u, e.v)
                                                               : EdgeChange::insert(e.u, e.v));
            };
            while (engine.counter() != 0) toggle(filler);
            // Phase 1 of a fresh epoch: one absent edge and one present edge.
            Edge absent = filler;
            for (const auto& e : tree.ktree_edges)
                if (e != filler && !engine.graph().has_edge(e.u, e.v)) absent = e;
            Edge present = filler;
            for (const auto& e : engine.graph().edges())
                if (e != filler) present = e;
            const size_t before = engine.delta().size();
            engine.apply(EdgeChange::insert(absent.u, absent.v));
            engine.apply(EdgeChange::erase(absent.u, absent.v));
            if (engine.phase() == Phase::Recomputing) {
                engine.apply(EdgeChange::erase(present.u, present.v));
                engine.apply(EdgeChange::insert(present.u, present.v));
            }
            if (engine.delta().contains(absent) || engine.delta().contains(present) ||
                engine.delta().size() != before)
                o.fail(tag + ": buffer kept a cancelled change");
            const uint64_t h = engine.handovers();
            while (engine.handovers() == h) toggle(filler);
            ++epochs;
            for (Property p : kAllProperties)
                if (!(engine.query(p) == brute_answer(engine.graph(), p)))
                    o.fail(tag + ": " + std::string(property_name(p)) + " differs after the epoch");
        } catch (const std::exception& e) {
            o.fail(tag + ": " + e.what());
        }
    }
    o.detail = std::to_string(epochs) + " epochs with cancelled pairs";
    return o;
}

// 6. Skeleton DP against flat enumeration.
Outcome skeleton_vs_flat() {
    Outcome o;
    int compared = 0;
    uint64_t s = 0;
    size_t max_c = 0;
    while (compared < 200 && s < 5000) {
        ++s;
        const auto n = static_cast<int32_t>(12 + s % 20);
        const int k = 1 + static_cast<int>(s % 3);
        const auto tree = gen_partial_ktree(tree_options(n, k, 0.6, s));
        const auto tables = compute_tables(DynamicGraph::from_edges(n, tree.kept), k);
        LiveState live(tables);
        try {
            for (const auto& c : mixed_changes(tree, {1 + static_cast<int>(s % 4), 0.4, s})) live.absorb(c);
            const size_t csize = live.center().vertices.size();
            if (csize > 12) continue;
            max_c = std::max(max_c, csize);
            ++compared;
            for (Property p : kAllProperties)
                if (!(live.skeleton_answer(p) == live.flat_answer(p)))
                    o.fail("seed " + std::to_string(s) + " " + std::string(property_name(p)));
        } catch (const std::exception& e) {
            o.fail("seed " + std::to_string(s) + ": " + e.what());
        }
    }
    if (compared < 200) o.fail("only " + std::to_string(compared) + " states with |C| <= 12");
    o.detail = std::to_string(compared) + " live states, max |C|=" + std::to_string(max_c);
    return o;
}

// 7. Inline and background modes print the same records.
Outcome mode_equivalence() {
    Outcome o;
    size_t lines = 0;
    for (uint64_t s = 1; s <= 20; ++s) {
        const int32_t n = s % 2 ? 64 : 128;
        const int k = 1 + static_cast<int>(s % 3);
        const auto script = gen_script(script_options(n, k, 1000 + s));
        RunConfig a;
        a.engine.n = n;
        a.engine.k_budget = k;
        RunConfig b = a;
        b.engine.mode = RecomputeMode::Background;
        try {
            const auto ra = run_script(script, a);
            const auto rb = run_script(script, b);
            std::string ja;
            std::string jb;
            for (const auto& r : ra.records) ja += to_json_line(r) + "\n";
            for (const auto& r : rb.records) jb += to_json_line(r) + "\n";
            lines += ra.records.size();
            if (ja != jb) o.fail("script " + std::to_string(s) + ": outputs differ");
        } catch (const std::exception& e) {
            o.fail("script " + std::to_string(s) + ": " + e.what());
        }
    }
    o.detail = "20 scripts, " + std::to_string(lines) + " JSON lines compared";
    return o;
}

// 8. Work profile.
Outcome work_profile() {
    Outcome o;
    const int32_t n = 512;
    ScriptGenOptions opt = script_options(n, 2, 77);
    opt.tree.block_size = 0;
    const auto script = gen_script(opt);
    EngineConfig cfg;
    cfg.n = n;
    cfg.k_budget = 2;
    try {
        const BenchSummary epoch = bench(script, cfg);
        cfg.mode = RecomputeMode::FullRecompute;
        const BenchSummary full = bench(script, cfg);
        if (epoch.serving_foreground_units != 0)
            o.fail(std::to_string(epoch.serving_foreground_units) + " foreground units while serving");
        if (epoch.total_units > full.total_units) o.fail("epoch mode did more table work");
        const double ratio = static_cast<double>(full.total_units) / static_cast<double>(std::max<uint64_t>(1, epoch.total_units));
        o.detail = "n=512, " + std::to_string(epoch.changes) + " changes, serving foreground units " +
                   std::to_string(epoch.serving_foreground_units) + ", table units epoch " +
                   std::to_string(epoch.total_units) + " vs full " + std::to_string(full.total_units) +
                   ", saving " + fmt(ratio) + "x";
    } catch (const std::exception& e) {
        o.fail(e.what());
    }
    return o;
}

}  // namespace

int main() {
    report(1, "decomposition pipeline", decomposition_pipeline());
    report(2, "static oracle equivalence", static_equivalence());
    const auto dyn = dynamic_runs();
    report(3, "dynamic correctness at every step", dyn.correctness);
    report(4, "structural bounds", dyn.structure);
    report(5, "delta buffer semantics", delta_semantics());
    report(6, "skeleton DP equivalence", skeleton_vs_flat());
    report(7, "mode equivalence", mode_equivalence());
    report(8, "work profile", work_profile());
    std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
