#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dyntw/graph.hpp"
#include "dyntw/plugin.hpp"

namespace dyntw {

inline constexpr int64_t kInfeasible = std::numeric_limits<int64_t>::max() / 4;

// Words needed for a witness bitset over the universe [0, n).
inline int witness_words(int32_t n) { return (n + 63) / 64; }

// Better-than on (cost, witness bitset): smaller cost wins; among equal costs
// the set containing the smallest vertex of the symmetric difference wins,
// which is the lexicographically smaller sorted vector for equal sizes.
bool better_entry(int64_t ca, const uint64_t* wa, int64_t cb, const uint64_t* wb, int words);

// Dense table over assignments to `vars` (sorted). Label of vars[j] has
// weight alphabet^j in the index. Vertices absent from `vars` do not affect
// the entry, except that a support-demanding label on them is infeasible.
class DPTable {
public:
    DPTable() = default;
    DPTable(std::vector<VertexId> vars, int alphabet, int words);

    const std::vector<VertexId>& vars() const { return vars_; }
    int alphabet() const { return alphabet_; }
    int words() const { return words_; }
    size_t size() const { return cost_.size(); }

    int64_t cost(size_t idx) const { return cost_[idx]; }
    bool feasible(size_t idx) const { return cost_[idx] < kInfeasible; }
    const uint64_t* witness_bits(size_t idx) const { return wit_.data() + idx * static_cast<size_t>(words_); }
    std::vector<VertexId> witness(size_t idx) const;

    size_t stride(size_t j) const { return strides_[j]; }
    size_t index_of(const std::vector<Label>& labels) const;
    std::vector<Label> labels_of(size_t idx) const;
    // Position of v in vars, or -1.
    int position(VertexId v) const;

    // Keeps the better of the stored entry and (cost, wit).
    void offer(size_t idx, int64_t cost, const uint64_t* wit);

    size_t feasible_count() const;

private:
    std::vector<VertexId> vars_;
    std::vector<size_t> strides_;
    int alphabet_ = 1;
    int words_ = 0;
    std::vector<int64_t> cost_;
    std::vector<uint64_t> wit_;
};

// One DP step at a tree node (or any local scope): enumerate labels of the
// relevant vertices, check the edges handled here, merge child tables, and
// project out the forgotten vertices (whose costs are paid here).
struct NodeJob {
    std::vector<VertexId> vars;    // every vertex that may be labelled here (sorted)
    std::vector<const DPTable*> children;
    std::vector<Edge> edges;       // endpoints in vars
    std::vector<VertexId> forget;  // subset of vars
    std::vector<VertexId> exempt;  // forgotten vertices without incident edges
    int words = 0;
};

class TableTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Output vars: relevant non-forgotten vertices, where relevant means an edge
// endpoint here or a child table var. `states` accumulates enumerated
// assignments.
DPTable combine(const PropertyPlugin& plugin, const NodeJob& job, uint64_t* states = nullptr);

// Reads the single entry of a table with no vars.
Answer answer_from_root(const PropertyPlugin& plugin, const DPTable& t);

}  // namespace dyntw
