#pragma once

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "dyntw/decomposition.hpp"
#include "dyntw/graph.hpp"
#include "dyntw/plugin.hpp"
#include "dyntw/tables.hpp"
#include "dyntw/triangle.hpp"

namespace dyntw {

struct SpecialBagSet {
    std::set<NodeId> nodes;
    // Affected vertex -> node chosen for it (-1: in no bag, kept at the root).
    std::map<VertexId, NodeId> origin;
};

// Pairwise-LCA closure check.
bool lca_closed(const NiceTreeDecomposition& ntd, const std::set<NodeId>& s);

// Maximal clean triangles of an LCA-closed S containing the root: one per
// special node, whose lower corners are the topmost specials below it.
std::vector<Triangle> maximal_clean_triangles(const NiceTreeDecomposition& ntd, const std::set<NodeId>& s);

struct Petal {
    Triangle triangle;
    std::vector<VertexId> interface_vertices;
    std::vector<VertexId> inner_vertices;
    VertexId identifier = -1;  // smallest inner vertex, -1 if none
};

struct Center {
    std::vector<VertexId> vertices;          // C, ascending
    std::map<VertexId, int> enumeration;     // C -> [0, |C|)
    std::vector<VertexId> special_vertices;  // union of special bags
    std::vector<VertexId> uncovered;         // affected vertices in no bag
    std::vector<Petal> petals;

    // max over petals of |V(petal) ∩ C|
    size_t connection_width() const;
};

class EdgeOutsideCenter : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Answers queries for the current graph from tables built on an older
// snapshot, as long as every change since then has been absorbed.
class LiveState {
public:
    explicit LiveState(std::shared_ptr<const TableStore> tables);

    const TableStore& tables() const { return *tables_; }
    const DynamicGraph& graph() const { return graph_; }
    const SpecialBagSet& special() const { return special_; }
    const std::vector<VertexId>& uncovered() const { return uncovered_; }
    size_t changes_absorbed() const { return absorbed_; }
    // Changed edges relative to the snapshot.
    std::vector<Edge> inserted_edges() const;
    std::vector<Edge> deleted_edges() const;

    // Applies the change to the tracked graph and covers both endpoints
    // with special bags (update_special).
    void absorb(const EdgeChange& c);

    Center center() const;
    bool covered(VertexId v) const;

    // Variable elimination over the skeleton spanned by S: upward tables
    // hanging off it, edges owned by its nodes, and changed edges. `states`
    // accumulates the number of labellings enumerated.
    Answer skeleton_answer(Property p, uint64_t* states = nullptr) const;
    // Reference: enumerate all labellings of the special vertices and the
    // uncovered ones, combine per-petal tables. Throws TooLarge above `limit`.
    Answer flat_answer(Property p, size_t limit = 14) const;

private:
    void add_special(NodeId t);

    std::shared_ptr<const TableStore> tables_;
    DynamicGraph graph_;
    SpecialBagSet special_;
    std::vector<VertexId> uncovered_;
    std::set<VertexId> special_vertices_;
    size_t absorbed_ = 0;
};

}  // namespace dyntw
