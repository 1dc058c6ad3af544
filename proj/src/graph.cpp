#include "dyntw/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace dyntw {

std::string to_string(const EdgeChange& c) {
    std::ostringstream os;
    os << (c.kind == ChangeKind::Insert ? "insert " : "delete ") << c.u << ' ' << c.v;
    return os.str();
}

DynamicGraph::DynamicGraph(int32_t n) : n_(n), adj_(static_cast<size_t>(n)) {
    if (n < 0) throw GraphError(GraphError::Kind::OutOfRange, "negative universe size");
}

void DynamicGraph::check_vertex(VertexId v) const {
    if (v < 0 || v >= n_) {
        throw GraphError(GraphError::Kind::OutOfRange,
                         "vertex " + std::to_string(v) + " outside universe [0, " + std::to_string(n_) + ")");
    }
}

bool DynamicGraph::has_edge(VertexId u, VertexId v) const {
    if (u == v) return false;
    return edges_.count(Edge(u, v)) != 0;
}

void DynamicGraph::check_change(const EdgeChange& c) const {
    check_vertex(c.u);
    check_vertex(c.v);
    if (c.u == c.v) throw GraphError(GraphError::Kind::SelfLoop, "self-loop in " + to_string(c));
    const bool present = has_edge(c.u, c.v);
    if (c.kind == ChangeKind::Insert && present)
        throw GraphError(GraphError::Kind::DuplicateInsert, "duplicate insert: " + to_string(c));
    if (c.kind == ChangeKind::Delete && !present)
        throw GraphError(GraphError::Kind::MissingDelete, "delete of missing edge: " + to_string(c));
}

void DynamicGraph::apply_change(const EdgeChange& c) {
    check_change(c);
    const auto u = static_cast<size_t>(c.u);
    const auto v = static_cast<size_t>(c.v);
    if (c.kind == ChangeKind::Insert) {
        edges_.insert(c.edge());
        adj_[u].insert(c.v);
        adj_[v].insert(c.u);
    } else {
        edges_.erase(c.edge());
        adj_[u].erase(c.v);
        adj_[v].erase(c.u);
    }
    ++version_;
}

std::vector<VertexId> DynamicGraph::active_domain() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < n_; ++v)
        if (!adj_[static_cast<size_t>(v)].empty()) out.push_back(v);
    return out;
}

DynamicGraph DynamicGraph::from_edges(int32_t n, const std::vector<Edge>& edges) {
    DynamicGraph g(n);
    for (const auto& e : edges) g.apply_change(EdgeChange::insert(e.u, e.v));
    return g;
}

std::vector<Edge> parse_edge_list(std::istream& in) {
    std::vector<Edge> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        long long u = 0;
        long long v = 0;
        std::string rest;
        if (!(ls >> u >> v) || (ls >> rest)) {
            throw GraphError(GraphError::Kind::Parse,
                             "edge list line " + std::to_string(lineno) + ": expected 'u v'");
        }
        out.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
    }
    return out;
}

void write_edge_list(std::ostream& out, const DynamicGraph& g) {
    for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

}  // namespace dyntw
