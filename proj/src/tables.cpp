#include "dyntw/tables.hpp"

#include <algorithm>

namespace dyntw {

namespace {
size_t slot(Property p) { return static_cast<size_t>(p); }
}  // namespace

NodeId edge_owner(const NiceTreeDecomposition& ntd, const Edge& e) {
    const auto tu = ntd.top_of(e.u);
    const auto tv = ntd.top_of(e.v);
    if (!tu || !tv) throw std::logic_error("edge_owner: endpoint in no bag");
    // The bags holding both endpoints form the subtree under the deeper top.
    return std::max(*tu, *tv);
}

std::vector<std::vector<Edge>> owned_edges(const DynamicGraph& g, const NiceTreeDecomposition& ntd) {
    std::vector<std::vector<Edge>> out(ntd.size());
    for (const auto& e : g.edges()) out[static_cast<size_t>(edge_owner(ntd, e))].push_back(e);
    return out;
}

TableStore::TableStore(std::shared_ptr<const DynamicGraph> snapshot, std::shared_ptr<const NiceTreeDecomposition> ntd)
    : snapshot_(std::move(snapshot)), ntd_(std::move(ntd)) {
    owned_ = owned_edges(*snapshot_, *ntd_);
    const size_t m = ntd_->size();
    for (auto& v : up_) v.resize(m);
    for (auto& v : done_) v.assign(m, 0);

    int max_h = 0;
    for (size_t i = 0; i < m; ++i) max_h = std::max(max_h, ntd_->height_of(static_cast<NodeId>(i)));
    levels_ = m ? max_h + 1 : 0;
    for (int h = 0; h <= max_h && m; ++h)
        for (size_t i = 0; i < m; ++i)
            if (ntd_->height_of(static_cast<NodeId>(i)) == h)
                for (Property p : kAllProperties) units_.push_back({static_cast<NodeId>(i), p});
}

const DPTable& TableStore::up(Property p, NodeId i) const {
    if (!has(p, i)) throw std::logic_error("table for node " + std::to_string(i) + " not built yet");
    return up_[slot(p)][static_cast<size_t>(i)];
}

bool TableStore::has(Property p, NodeId i) const { return done_[slot(p)][static_cast<size_t>(i)] != 0; }

bool TableStore::complete() const {
    for (const auto& d : done_)
        if (std::find(d.begin(), d.end(), 0) != d.end()) return false;
    return true;
}

void TableStore::run_unit(size_t k) {
    const Unit u = units_.at(k);
    const auto& ntd = *ntd_;
    const PropertyPlugin& plugin = plugin_for(u.property);

    NodeJob job;
    job.vars = ntd.bag(u.node);
    job.edges = owned_[static_cast<size_t>(u.node)];
    job.words = witness_words(snapshot_->universe_size());
    for (NodeId c : ntd.children(u.node)) job.children.push_back(&up(u.property, c));
    if (u.node == ntd.root()) {
        job.forget = job.vars;
    } else {
        const Bag& pb = ntd.bag(ntd.parent(u.node));
        std::set_difference(job.vars.begin(), job.vars.end(), pb.begin(), pb.end(), std::back_inserter(job.forget));
    }
    up_[slot(u.property)][static_cast<size_t>(u.node)] = combine(plugin, job);
    done_[slot(u.property)][static_cast<size_t>(u.node)] = 1;
}

size_t TableStore::entry_count(Property p) const {
    size_t total = 0;
    for (size_t i = 0; i < up_[slot(p)].size(); ++i)
        if (done_[slot(p)][i]) total += up_[slot(p)][i].size();
    return total;
}

size_t TableBuilder::run(size_t quota) {
    size_t ran = 0;
    while (ran < quota && !finished()) {
        store_->run_unit(next_++);
        ++ran;
    }
    return ran;
}

std::shared_ptr<TableStore> compute_tables(std::shared_ptr<const DynamicGraph> g,
                                           std::shared_ptr<const NiceTreeDecomposition> ntd) {
    auto store = std::make_shared<TableStore>(std::move(g), std::move(ntd));
    TableBuilder(store).run(store->units().size());
    return store;
}

std::shared_ptr<TableStore> compute_tables(const DynamicGraph& g, int width_budget) {
    auto snap = std::make_shared<const DynamicGraph>(g.snapshot());
    auto ntd = std::make_shared<const NiceTreeDecomposition>(build_nice_decomposition(*snap, width_budget));
    return compute_tables(snap, ntd);
}

Answer query_static(const TableStore& store, const DynamicGraph& g, Property p) {
    if (store.version() != g.version() || !store.snapshot().same_edges(g))
        throw StaleTables("tables built for version " + std::to_string(store.version()) + ", graph is at " +
                          std::to_string(g.version()));
    return answer_from_root(plugin_for(p), store.up(p, store.ntd().root()));
}

}  // namespace dyntw
