#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dyntw {

using VertexId = int32_t;

// Undirected edge, always stored as (min, max).
struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    Edge() = default;
    Edge(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    auto operator<=>(const Edge&) const = default;
};

enum class ChangeKind { Insert, Delete };

struct EdgeChange {
    ChangeKind kind = ChangeKind::Insert;
    VertexId u = 0;
    VertexId v = 0;

    Edge edge() const { return Edge(u, v); }
    bool operator==(const EdgeChange&) const = default;

    static EdgeChange insert(VertexId u, VertexId v) { return {ChangeKind::Insert, u, v}; }
    static EdgeChange erase(VertexId u, VertexId v) { return {ChangeKind::Delete, u, v}; }
};

std::string to_string(const EdgeChange& c);

class GraphError : public std::runtime_error {
public:
    enum class Kind { DuplicateInsert, MissingDelete, SelfLoop, OutOfRange, Parse };

    GraphError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Mutable undirected graph over the fixed universe [0, n). Copies are
// independent values; snapshot() is a plain copy marked by intent.
class DynamicGraph {
public:
    DynamicGraph() = default;
    explicit DynamicGraph(int32_t n);

    int32_t universe_size() const { return n_; }
    uint64_t version() const { return version_; }
    const std::set<Edge>& edges() const { return edges_; }
    size_t edge_count() const { return edges_.size(); }

    bool has_edge(VertexId u, VertexId v) const;
    const std::set<VertexId>& neighbours(VertexId v) const { return adj_.at(static_cast<size_t>(v)); }
    size_t degree(VertexId v) const { return adj_.at(static_cast<size_t>(v)).size(); }

    // Throws GraphError on a malformed change; the graph is unchanged then.
    void apply_change(const EdgeChange& c);
    void check_change(const EdgeChange& c) const;

    std::vector<VertexId> active_domain() const;
    DynamicGraph snapshot() const { return *this; }

    // Builds a graph with version = edges.size(), as if inserted in order.
    static DynamicGraph from_edges(int32_t n, const std::vector<Edge>& edges);

    bool same_edges(const DynamicGraph& other) const { return edges_ == other.edges_; }

private:
    void check_vertex(VertexId v) const;

    int32_t n_ = 0;
    uint64_t version_ = 0;
    std::set<Edge> edges_;
    std::vector<std::set<VertexId>> adj_;
};

// Edge-list text: one "u v" per line, '#' comments and blank lines ignored.
std::vector<Edge> parse_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const DynamicGraph& g);

}  // namespace dyntw
