#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "dyntw/decomposition.hpp"
#include "dyntw/graph.hpp"
#include "dyntw/plugin.hpp"
#include "dyntw/table.hpp"

namespace dyntw {

class StaleTables : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Owner of an edge: the topmost node whose bag holds both endpoints.
NodeId edge_owner(const NiceTreeDecomposition& ntd, const Edge& e);
std::vector<std::vector<Edge>> owned_edges(const DynamicGraph& g, const NiceTreeDecomposition& ntd);

// Upward tables for one snapshot. For a non-root node c, up(P, c) is the
// table of the open triangle (c,c,c) with the vertices of B(c) \ B(p(c))
// projected out: keyed by labels of B(c) ∩ B(p(c)), its cost counts every
// vertex whose topmost bag lies in the subtree of c. up(P, root) has no vars
// and holds the answer for the snapshot.
class TableStore {
public:
    TableStore(std::shared_ptr<const DynamicGraph> snapshot, std::shared_ptr<const NiceTreeDecomposition> ntd);

    const DynamicGraph& snapshot() const { return *snapshot_; }
    const NiceTreeDecomposition& ntd() const { return *ntd_; }
    std::shared_ptr<const DynamicGraph> snapshot_ptr() const { return snapshot_; }
    std::shared_ptr<const NiceTreeDecomposition> ntd_ptr() const { return ntd_; }
    uint64_t version() const { return snapshot_->version(); }

    const std::vector<Edge>& owned(NodeId i) const { return owned_[static_cast<size_t>(i)]; }
    const DPTable& up(Property p, NodeId i) const;
    bool has(Property p, NodeId i) const;
    bool complete() const;

    // Work list: one unit per (node, property), children before parents,
    // grouped by node height.
    struct Unit {
        NodeId node;
        Property property;
    };
    const std::vector<Unit>& units() const { return units_; }
    int levels() const { return levels_; }
    void run_unit(size_t k);

    size_t entry_count(Property p) const;

private:
    std::shared_ptr<const DynamicGraph> snapshot_;
    std::shared_ptr<const NiceTreeDecomposition> ntd_;
    std::vector<std::vector<Edge>> owned_;
    std::array<std::vector<DPTable>, 3> up_;
    std::array<std::vector<char>, 3> done_;
    std::vector<Unit> units_;
    int levels_ = 0;
};

// Resumable cursor over a store's work list.
class TableBuilder {
public:
    explicit TableBuilder(std::shared_ptr<TableStore> store) : store_(std::move(store)) {}

    size_t total() const { return store_->units().size(); }
    size_t done() const { return next_; }
    size_t remaining() const { return total() - next_; }
    bool finished() const { return next_ == total(); }
    // Runs up to `quota` units; returns how many ran.
    size_t run(size_t quota);

    std::shared_ptr<TableStore> store() const { return store_; }

private:
    std::shared_ptr<TableStore> store_;
    size_t next_ = 0;
};

std::shared_ptr<TableStore> compute_tables(const DynamicGraph& g, int width_budget);
std::shared_ptr<TableStore> compute_tables(std::shared_ptr<const DynamicGraph> g,
                                           std::shared_ptr<const NiceTreeDecomposition> ntd);

// Throws StaleTables when the store was built for another graph version.
Answer query_static(const TableStore& store, const DynamicGraph& g, Property p);

}  // namespace dyntw
