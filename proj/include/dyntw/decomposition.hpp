#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyntw/graph.hpp"

namespace dyntw {

using NodeId = int32_t;
using Bag = std::vector<VertexId>;  // sorted, duplicate-free

// Rooted tree decomposition. Node ids are indices into the vectors; the root
// is its own parent. Children are ordered (left to right).
struct TreeDecomposition {
    NodeId root = 0;
    std::vector<NodeId> parent;
    std::vector<std::vector<NodeId>> children;
    std::vector<Bag> bags;

    size_t size() const { return bags.size(); }
    int width() const;       // max bag size - 1 (-1 for a lone empty bag)
    size_t max_bag() const;  // the DP layer's ℓ
    int depth() const;       // edges on the longest root-leaf path
    size_t max_degree() const;

    NodeId add_node(Bag bag, NodeId parent_id);
    // Drops unreachable nodes and renumbers in preorder (root becomes 0).
    TreeDecomposition compacted() const;
};

class WidthExceeded : public std::runtime_error {
public:
    explicit WidthExceeded(int found)
        : std::runtime_error("decomposition width " + std::to_string(found) + " exceeds budget"),
          found_width(found) {}
    int found_width;
};

class DegenerateInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Violation {
    enum class Kind { BadTree, MissingVertex, MissingEdge, Disconnected };
    Kind kind;
    VertexId vertex = -1;  // MissingVertex, Disconnected
    Edge edge{};           // MissingEdge
    NodeId node = -1;      // BadTree
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(Violation::Kind k) const;
};

// Greedy elimination over the active domain: min-fill first, then min-degree
// and seeded tie-break variants while the width exceeds the budget.
TreeDecomposition decompose(const DynamicGraph& g, int width_budget);

ValidationReport verify_td(const DynamicGraph& g, const TreeDecomposition& td);

// Recursive centroid splitting: degree <= 2, depth O(log |I|), width <= 3w+2.
TreeDecomposition balance(const TreeDecomposition& td);

// Individual nicefy transformations, exposed for testing. Each preserves the
// decomposition properties and never increases depth.
TreeDecomposition prune_contained_leaves(const TreeDecomposition& td);
TreeDecomposition contract_chains(const TreeDecomposition& td);
TreeDecomposition add_leaf_witnesses(const TreeDecomposition& td);
TreeDecomposition dedupe_bags(const TreeDecomposition& td);

// ⌈log2(max(n, 2))⌉
int log2_ceil(int64_t n);

// Immutable decomposition with degree <= 2 and pairwise distinct bags, nodes
// numbered in preorder (root = 0). Ancestor queries use preorder intervals,
// LCA uses binary lifting.
class NiceTreeDecomposition {
public:
    NiceTreeDecomposition() = default;
    NiceTreeDecomposition(TreeDecomposition td, int32_t universe_size);

    const TreeDecomposition& td() const { return td_; }
    NodeId root() const { return 0; }
    size_t size() const { return td_.size(); }
    const Bag& bag(NodeId i) const { return td_.bags[static_cast<size_t>(i)]; }
    NodeId parent(NodeId i) const { return td_.parent[static_cast<size_t>(i)]; }
    const std::vector<NodeId>& children(NodeId i) const { return td_.children[static_cast<size_t>(i)]; }
    bool is_leaf(NodeId i) const { return children(i).empty(); }

    int depth() const { return depth_; }
    int depth_of(NodeId i) const { return node_depth_[static_cast<size_t>(i)]; }
    int height_of(NodeId i) const { return height_[static_cast<size_t>(i)]; }
    int width() const { return td_.width(); }
    size_t max_bag() const { return td_.max_bag(); }
    int log_n() const { return log_n_; }
    double d_factor() const { return static_cast<double>(depth_) / log_n_; }
    int32_t universe_size() const { return n_; }

    // i ⪯ j: j lies in the subtree rooted at i.
    bool is_ancestor(NodeId i, NodeId j) const {
        return i <= j && j < i + subtree_size_[static_cast<size_t>(i)];
    }
    NodeId subtree_end(NodeId i) const { return i + subtree_size_[static_cast<size_t>(i)]; }
    NodeId lca(NodeId i, NodeId j) const;
    // Ancestor of j at depth d (d <= depth_of(j)).
    NodeId ancestor_at_depth(NodeId j, int d) const;
    // The child of i on the path to its strict descendant j.
    NodeId child_toward(NodeId i, NodeId j) const { return ancestor_at_depth(j, depth_of(i) + 1); }

    // Topmost (= smallest id) node whose bag contains v; nullopt if none.
    std::optional<NodeId> top_of(VertexId v) const;
    bool bag_contains(NodeId i, VertexId v) const;

    // Structural problems: degree, distinctness, depth bookkeeping.
    std::vector<std::string> niceness_problems() const;

    void dump(std::ostream& out) const;

private:
    TreeDecomposition td_;
    int32_t n_ = 0;
    int depth_ = 0;
    int log_n_ = 1;
    std::vector<int> node_depth_;
    std::vector<int> height_;
    std::vector<int32_t> subtree_size_;
    std::vector<std::vector<NodeId>> up_;  // up_[k][i] = 2^k-th ancestor
    std::vector<NodeId> top_;              // per vertex, -1 if absent
};

// decompose -> balance -> nicefy
NiceTreeDecomposition nicefy(const TreeDecomposition& td, int32_t universe_size);
NiceTreeDecomposition build_nice_decomposition(const DynamicGraph& g, int width_budget);

// "id parent_id bag:v1,v2,..." per node.
void dump_decomposition(std::ostream& out, const TreeDecomposition& td);

}  // namespace dyntw
