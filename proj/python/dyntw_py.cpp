#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dyntw/decomposition.hpp"
#include "dyntw/engine.hpp"
#include "dyntw/harness.hpp"
#include "dyntw/oracles.hpp"
#include "dyntw/tables.hpp"

namespace py = pybind11;
using namespace dyntw;

namespace {

py::dict to_dict(const Answer& a) {
    py::dict d;
    d["property"] = std::string(property_name(a.property));
    d["feasible"] = a.feasible;
    if (plugin_for(a.property).is_optimization()) {
        d["optimum"] = a.optimum;
        d["witness"] = a.witness;
    }
    return d;
}

DynamicGraph graph_of(int32_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    DynamicGraph g(n);
    for (auto [u, v] : edges) g.apply_change(EdgeChange::insert(u, v));
    return g;
}

std::vector<ScriptLine> script_of(const std::string& text) {
    std::istringstream in(text);
    return parse_script(in);
}

}  // namespace

PYBIND11_MODULE(dyntw_py, m) {
    m.doc() = "Dynamic 3-colourability, vertex cover and dominating set on bounded-treewidth graphs";

    py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
    py::register_exception<ScriptError>(m, "ScriptError", PyExc_ValueError);
    py::register_exception<WidthExceeded>(m, "WidthExceeded", PyExc_ValueError);
    py::register_exception<TooLarge>(m, "TooLarge", PyExc_ValueError);

    py::class_<Engine>(m, "Engine")
        .def(py::init([](int32_t n, int k_budget, double epoch_factor, const std::string& mode) {
                 EngineConfig cfg;
                 cfg.n = n;
                 cfg.k_budget = k_budget;
                 cfg.epoch_factor = epoch_factor;
                 cfg.mode = parse_mode(mode);
                 return std::make_unique<Engine>(cfg);
             }),
             py::arg("n"), py::arg("k_budget") = 4, py::arg("epoch_factor") = 1.0, py::arg("mode") = "inline")
        .def("insert", [](Engine& e, VertexId u, VertexId v) { e.apply(EdgeChange::insert(u, v)); })
        .def("delete", [](Engine& e, VertexId u, VertexId v) { e.apply(EdgeChange::erase(u, v)); })
        .def("query", [](Engine& e, const std::string& p) { return to_dict(e.query(parse_property(p))); })
        .def_property_readonly("edges",
                               [](const Engine& e) {
                                   std::vector<std::pair<VertexId, VertexId>> out;
                                   for (const auto& x : e.graph().edges()) out.emplace_back(x.u, x.v);
                                   return out;
                               })
        .def_property_readonly("phase", [](const Engine& e) { return std::string(phase_name(e.phase())); })
        .def_property_readonly("serving", &Engine::serving)
        .def_property_readonly("handovers", &Engine::handovers)
        .def_property_readonly("epoch_length", &Engine::epoch_length);

    m.def(
        "solve",
        [](int32_t n, const std::vector<std::pair<VertexId, VertexId>>& edges, const std::string& p, int k_budget) {
            const auto g = graph_of(n, edges);
            const auto store = compute_tables(g, k_budget);
            return to_dict(query_static(*store, g, parse_property(p)));
        },
        py::arg("n"), py::arg("edges"), py::arg("property"), py::arg("k_budget") = 4,
        "Answer a query from scratch with the table DP.");

    m.def(
        "oracle",
        [](int32_t n, const std::vector<std::pair<VertexId, VertexId>>& edges, const std::string& p) {
            return to_dict(brute_answer(graph_of(n, edges), parse_property(p)));
        },
        py::arg("n"), py::arg("edges"), py::arg("property"), "Brute-force reference answer.");

    m.def(
        "decomposition",
        [](int32_t n, const std::vector<std::pair<VertexId, VertexId>>& edges, int k_budget) {
            std::ostringstream out;
            build_nice_decomposition(graph_of(n, edges), k_budget).dump(out);
            return out.str();
        },
        py::arg("n"), py::arg("edges"), py::arg("k_budget") = 4, "Nice decomposition in the dump format.");

    m.def(
        "gen_script",
        [](int32_t n, int k, double keep, uint64_t seed, int mixed_steps, int block_size, double query_prob) {
            ScriptGenOptions o;
            o.tree.n = n;
            o.tree.k = k;
            o.tree.keep_prob = keep;
            o.tree.seed = seed;
            o.tree.block_size = block_size;
            o.mixed_steps = mixed_steps;
            o.query_prob = query_prob;
            o.seed = seed;
            std::ostringstream out;
            write_script(out, gen_script(o));
            return out.str();
        },
        py::arg("n"), py::arg("k"), py::arg("keep") = 0.6, py::arg("seed") = 1, py::arg("mixed_steps") = 0,
        py::arg("block_size") = 0, py::arg("query_prob") = 0.5);

    m.def(
        "run_script",
        [](const std::string& text, int32_t n, int k_budget, const std::string& mode, bool verify) {
            RunConfig cfg;
            cfg.engine.n = n;
            cfg.engine.k_budget = k_budget;
            cfg.engine.mode = parse_mode(mode);
            cfg.verify = verify;
            const auto res = run_script(script_of(text), cfg);
            std::vector<std::string> lines;
            for (const auto& r : res.records) lines.push_back(to_json_line(r));
            py::dict d;
            d["records"] = lines;
            d["handovers"] = res.handovers;
            d["verified"] = res.verified;
            d["mismatch"] = res.mismatch;
            return d;
        },
        py::arg("text"), py::arg("n"), py::arg("k_budget") = 4, py::arg("mode") = "inline",
        py::arg("verify") = false, "Run a change script; records are JSON strings.");
}
