#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dyntw/graph.hpp"

namespace dyntw {

class BadParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct KTreeOptions {
    int32_t n = 16;
    int k = 2;
    double keep_prob = 1.0;
    uint64_t seed = 1;
    // 0: one k-tree over the whole universe. Otherwise the shuffled universe
    // is cut into blocks of this size and each block gets its own k-tree.
    int32_t block_size = 0;
};

struct PartialKTree {
    int32_t n = 0;
    int k = 0;
    std::vector<Edge> ktree_edges;  // the full k-tree(s), construction order
    std::vector<Edge> kept;         // subsequence of ktree_edges
};

PartialKTree gen_partial_ktree(const KTreeOptions& opt);

// Inserts the kept edges in construction order.
std::vector<EdgeChange> insertion_script(const PartialKTree& t);

struct MixOptions {
    int steps = 0;             // number of changes after the build prefix
    double delete_prob = 0.4;  // chance a step deletes (if anything to delete)
    uint64_t seed = 1;
};

// Random insert/delete steps over edges of the underlying k-tree(s), starting
// from the graph built by the kept edges. Every prefix stays a k-tree
// subgraph, so treewidth <= k throughout.
std::vector<EdgeChange> mixed_changes(const PartialKTree& t, const MixOptions& opt);

}  // namespace dyntw
