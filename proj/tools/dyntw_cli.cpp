#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "dyntw/decomposition.hpp"
#include "dyntw/harness.hpp"
#include "dyntw/tables.hpp"
#include "dyntw/triangle.hpp"

using namespace dyntw;

namespace {

struct EngineFlags {
    int32_t n = 0;
    int k_budget = 4;
    double epoch_factor = 1.0;
    std::string mode = "inline";
    bool check_handover = false;
};

void add_engine_flags(CLI::App* app, EngineFlags& f) {
    app->add_option("--n", f.n, "universe size (default: largest vertex in the script + 1)");
    app->add_option("--k-budget", f.k_budget, "width budget for decompose")->capture_default_str();
    app->add_option("--epoch-factor", f.epoch_factor, "c in f(n) = ceil(c log2 n)")->capture_default_str();
    app->add_option("--mode", f.mode, "inline | background | full-recompute")->capture_default_str();
    app->add_flag("--check-handover", f.check_handover, "compare answers of outgoing and incoming state");
}

std::vector<ScriptLine> load_script(const std::string& path) {
    if (path == "-") return parse_script(std::cin);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open script " + path);
    return parse_script(in);
}

EngineConfig engine_config(const EngineFlags& f, const std::vector<ScriptLine>& script) {
    EngineConfig cfg;
    cfg.n = f.n;
    if (cfg.n <= 0) {
        for (const auto& l : script)
            if (l.kind == ScriptLine::Kind::Change) cfg.n = std::max({cfg.n, l.change.u + 1, l.change.v + 1});
    }
    cfg.k_budget = f.k_budget;
    cfg.epoch_factor = f.epoch_factor;
    cfg.mode = parse_mode(f.mode);
    cfg.check_handover = f.check_handover;
    return cfg;
}

// Output sink: a file when a path is given, stdout otherwise.
struct Sink {
    std::ofstream file;
    std::ostream* out = &std::cout;
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot write " + path);
        out = &file;
    }
};

DynamicGraph final_graph(const std::vector<ScriptLine>& script, int32_t n) {
    DynamicGraph g(n);
    for (const auto& l : script)
        if (l.kind == ScriptLine::Kind::Change) g.apply_change(l.change);
    return g;
}

void dump_tables(const std::string& path, const DynamicGraph& g, int k_budget) {
    auto store = compute_tables(g, k_budget);
    Sink sink(path);
    const auto& ntd = store->ntd();
    for (NodeId i = 0; i < static_cast<NodeId>(ntd.size()); ++i) {
        *sink.out << to_string(Triangle::open(i));
        for (Property p : kAllProperties) *sink.out << ' ' << property_name(p) << '=' << store->up(p, i).feasible_count();
        *sink.out << '\n';
    }
    for (Property p : kAllProperties)
        std::cerr << property_name(p) << ": " << store->entry_count(p) << " entries over " << ntd.size() << " nodes\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyntw: dynamic queries on bounded-treewidth graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a change script over a partial k-tree");
    ScriptGenOptions gopt;
    gopt.tree.n = 64;
    std::string gen_out;
    gen->add_option("--n", gopt.tree.n, "universe size")->capture_default_str();
    gen->add_option("--k", gopt.tree.k, "k of the underlying k-tree")->capture_default_str();
    gen->add_option("--keep", gopt.tree.keep_prob, "probability of keeping each k-tree edge")->capture_default_str();
    gen->add_option("--block-size", gopt.tree.block_size, "separate k-trees per block (0: one)")->capture_default_str();
    gen->add_option("--mixed-steps", gopt.mixed_steps, "insert/delete steps after the build")->capture_default_str();
    gen->add_option("--delete-prob", gopt.delete_prob, "deletion share of mixed steps")->capture_default_str();
    gen->add_option("--query-prob", gopt.query_prob, "chance of a query after each change")->capture_default_str();
    gen->add_option("--seed", gopt.seed, "random seed")->capture_default_str();
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // run
    auto* run = app.add_subcommand("run", "execute a script, one JSON record per line");
    EngineFlags rflags;
    std::string run_script_path = "-";
    std::string run_json;
    std::string dump_td_path;
    std::string dump_tables_path;
    bool verify = false;
    add_engine_flags(run, rflags);
    run->add_option("--script", run_script_path, "script path ('-' for stdin)")->capture_default_str();
    run->add_option("--json", run_json, "JSON-lines output path (default stdout)");
    run->add_flag("--verify", verify, "check every query against the brute-force oracle");
    run->add_option("--dump-td", dump_td_path, "write the final graph's nice decomposition");
    run->add_option("--dump-tables", dump_tables_path, "write per-node table entry counts for the final graph");

    // bench
    auto* benchc = app.add_subcommand("bench", "count table work for a script");
    EngineFlags bflags;
    std::string bench_script_path = "-";
    std::string bench_json;
    bool compare = false;
    add_engine_flags(benchc, bflags);
    benchc->add_option("--script", bench_script_path, "script path ('-' for stdin)")->capture_default_str();
    benchc->add_option("--json", bench_json, "JSON-lines output path (default stdout)");
    benchc->add_flag("--compare", compare, "also run full-recompute mode and report the ratio");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            gopt.tree.seed = gopt.seed;
            const auto script = gen_script(gopt);
            Sink sink(gen_out);
            write_script(*sink.out, script);
            return 0;
        }
        if (*run) {
            const auto script = load_script(run_script_path);
            RunConfig cfg;
            cfg.engine = engine_config(rflags, script);
            cfg.verify = verify;
            const RunResult res = run_script(script, cfg);
            {
                Sink sink(run_json);
                for (const auto& r : res.records) *sink.out << to_json_line(r) << '\n';
            }
            std::cerr << res.records.size() << " records, " << res.handovers << " handovers\n";
            if (!dump_td_path.empty() || !dump_tables_path.empty()) {
                const DynamicGraph g = final_graph(script, cfg.engine.n);
                if (!dump_td_path.empty()) {
                    Sink sink(dump_td_path);
                    build_nice_decomposition(g, cfg.engine.k_budget).dump(*sink.out);
                }
                if (!dump_tables_path.empty()) dump_tables(dump_tables_path, g, cfg.engine.k_budget);
            }
            if (!res.verified) {
                std::cerr << "oracle mismatch: " << res.mismatch << '\n';
                return 1;
            }
            if (verify) std::cerr << "all queries match the oracle\n";
            return 0;
        }
        if (*benchc) {
            const auto script = load_script(bench_script_path);
            const EngineConfig cfg = engine_config(bflags, script);
            Sink sink(bench_json);
            const BenchSummary s = bench(script, cfg);
            *sink.out << to_json_line(s) << '\n';
            std::cerr << mode_name(s.mode) << ": " << s.total_units << " table units, " << s.handovers
                      << " handovers\n";
            if (compare) {
                EngineConfig full = cfg;
                full.mode = RecomputeMode::FullRecompute;
                const BenchSummary fs = bench(script, full);
                *sink.out << to_json_line(fs) << '\n';
                const double ratio = s.total_units ? static_cast<double>(fs.total_units) / s.total_units : 0.0;
                std::cerr << "full-recompute: " << fs.total_units << " table units, saving ratio " << ratio << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
