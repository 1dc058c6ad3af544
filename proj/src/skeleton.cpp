#include "dyntw/skeleton.hpp"

#include <algorithm>

#include "dyntw/oracles.hpp"

namespace dyntw {

bool lca_closed(const NiceTreeDecomposition& ntd, const std::set<NodeId>& s) {
    for (NodeId a : s)
        for (NodeId b : s)
            if (a < b && !s.count(ntd.lca(a, b))) return false;
    return true;
}

std::vector<Triangle> maximal_clean_triangles(const NiceTreeDecomposition& ntd, const std::set<NodeId>& s) {
    std::vector<Triangle> out;
    for (NodeId x : s) {
        std::vector<NodeId> lower;
        for (NodeId c : ntd.children(x)) {
            // Topmost special in the subtree of c: LCA-closure makes it unique,
            // and preorder makes it the smallest id in the range.
            auto it = s.lower_bound(c);
            if (it != s.end() && *it < ntd.subtree_end(c)) lower.push_back(*it);
        }
        if (lower.empty())
            out.push_back(Triangle::open(x));
        else if (lower.size() == 1)
            out.push_back(Triangle::unary(x, lower[0]));
        else
            out.push_back(Triangle::proper(x, lower[0], lower[1]));
    }
    return out;
}

size_t Center::connection_width() const {
    size_t best = 0;
    for (const auto& p : petals) {
        size_t k = p.interface_vertices.size();
        for (VertexId v : p.inner_vertices)
            if (enumeration.count(v)) ++k;
        best = std::max(best, k);
    }
    return best;
}

LiveState::LiveState(std::shared_ptr<const TableStore> tables)
    : tables_(std::move(tables)), graph_(tables_->snapshot().snapshot()) {
    const auto& ntd = tables_->ntd();
    special_.nodes.insert(ntd.root());
    special_vertices_.insert(ntd.bag(ntd.root()).begin(), ntd.bag(ntd.root()).end());
}

std::vector<Edge> LiveState::inserted_edges() const {
    std::vector<Edge> out;
    for (const auto& e : graph_.edges())
        if (!tables_->snapshot().has_edge(e.u, e.v)) out.push_back(e);
    return out;
}

std::vector<Edge> LiveState::deleted_edges() const {
    std::vector<Edge> out;
    for (const auto& e : tables_->snapshot().edges())
        if (!graph_.has_edge(e.u, e.v)) out.push_back(e);
    return out;
}

bool LiveState::covered(VertexId v) const {
    return special_vertices_.count(v) || std::binary_search(uncovered_.begin(), uncovered_.end(), v);
}

void LiveState::add_special(NodeId t) {
    const auto& ntd = tables_->ntd();
    std::vector<NodeId> fresh{t};
    for (NodeId s : special_.nodes) {
        const NodeId l = ntd.lca(t, s);
        if (!special_.nodes.count(l) && std::find(fresh.begin(), fresh.end(), l) == fresh.end()) fresh.push_back(l);
    }
    for (NodeId x : fresh) {
        special_.nodes.insert(x);
        special_vertices_.insert(ntd.bag(x).begin(), ntd.bag(x).end());
    }
}

void LiveState::absorb(const EdgeChange& c) {
    graph_.apply_change(c);
    ++absorbed_;
    for (VertexId w : {c.u, c.v}) {
        if (covered(w)) continue;
        const auto top = tables_->ntd().top_of(w);
        if (!top) {
            uncovered_.insert(std::lower_bound(uncovered_.begin(), uncovered_.end(), w), w);
            special_.origin[w] = -1;
        } else {
            add_special(*top);
            special_.origin[w] = *top;
        }
    }
}

Center LiveState::center() const {
    const auto& ntd = tables_->ntd();
    Center c;
    c.special_vertices.assign(special_vertices_.begin(), special_vertices_.end());
    c.uncovered = uncovered_;
    std::set<VertexId> all(special_vertices_.begin(), special_vertices_.end());
    all.insert(uncovered_.begin(), uncovered_.end());
    for (const auto& t : maximal_clean_triangles(ntd, special_.nodes)) {
        Petal p;
        p.triangle = t;
        p.interface_vertices = triangle_interface(ntd, t);
        std::set<VertexId> inner;
        for (NodeId j : triangle_nodes(ntd, t))
            for (VertexId v : ntd.bag(j))
                if (!std::binary_search(p.interface_vertices.begin(), p.interface_vertices.end(), v)) inner.insert(v);
        p.inner_vertices.assign(inner.begin(), inner.end());
        if (!inner.empty()) {
            p.identifier = *inner.begin();
            all.insert(p.identifier);
        }
        c.petals.push_back(std::move(p));
    }
    c.vertices.assign(all.begin(), all.end());
    for (size_t k = 0; k < c.vertices.size(); ++k) c.enumeration[c.vertices[k]] = static_cast<int>(k);
    return c;
}

Answer LiveState::skeleton_answer(Property prop, uint64_t* states) const {
    const auto& ntd = tables_->ntd();
    const auto& snap = tables_->snapshot();
    const PropertyPlugin& plugin = plugin_for(prop);
    const NodeId root = ntd.root();
    const size_t m = ntd.size();

    // Skeleton: every node with a special node in its subtree.
    std::vector<char> steiner(m, 0);
    for (NodeId s : special_.nodes) {
        for (NodeId x = s; !steiner[static_cast<size_t>(x)]; x = ntd.parent(x)) {
            steiner[static_cast<size_t>(x)] = 1;
            if (x == root) break;
        }
    }

    // Factors: upward tables hanging off the skeleton, plus edges. Snapshot
    // edges owned by skeleton nodes count only while present; inserted edges
    // always join two center vertices.
    std::vector<DPTable> factors;
    std::vector<Edge> edges;
    std::set<VertexId> vars(uncovered_.begin(), uncovered_.end());
    for (NodeId x = 0; x < static_cast<NodeId>(m); ++x) {
        if (!steiner[static_cast<size_t>(x)]) continue;
        vars.insert(ntd.bag(x).begin(), ntd.bag(x).end());
        for (const auto& e : tables_->owned(x))
            if (graph_.has_edge(e.u, e.v)) edges.push_back(e);
        for (NodeId c : ntd.children(x))
            if (!steiner[static_cast<size_t>(c)]) factors.push_back(tables_->up(prop, c));
    }
    for (const auto& e : graph_.edges()) {
        if (snap.has_edge(e.u, e.v)) continue;
        if (!covered(e.u) || !covered(e.v))
            throw EdgeOutsideCenter("changed edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                    "} leaves the center");
        edges.push_back(e);
    }

    // Interaction graph for the elimination order.
    std::map<VertexId, std::set<VertexId>> adj;
    for (VertexId v : vars) adj[v];
    auto link = [&](VertexId a, VertexId b) {
        if (a == b) return;
        adj[a].insert(b);
        adj[b].insert(a);
    };
    for (const auto& e : edges) link(e.u, e.v);
    for (const auto& f : factors)
        for (VertexId a : f.vars())
            for (VertexId b : f.vars()) link(a, b);

    const int words = witness_words(graph_.universe_size());
    std::vector<DPTable> constants;
    for (auto it = factors.begin(); it != factors.end();) {
        if (it->vars().empty()) {
            constants.push_back(std::move(*it));
            it = factors.erase(it);
        } else {
            ++it;
        }
    }
    while (!adj.empty()) {
        // Min-fill, then min-degree, then smallest vertex.
        VertexId best = -1;
        size_t best_fill = 0;
        size_t best_deg = 0;
        for (const auto& [v, nb] : adj) {
            size_t fill = 0;
            for (auto a = nb.begin(); a != nb.end(); ++a)
                for (auto b = std::next(a); b != nb.end(); ++b)
                    if (!adj[*a].count(*b)) ++fill;
            if (best < 0 || fill < best_fill || (fill == best_fill && nb.size() < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = nb.size();
            }
        }

        NodeJob job;
        job.words = words;
        job.forget = {best};
        if (graph_.degree(best) == 0) job.exempt = {best};
        std::vector<DPTable> used;
        for (auto it = factors.begin(); it != factors.end();) {
            if (it->position(best) >= 0) {
                used.push_back(std::move(*it));
                it = factors.erase(it);
            } else {
                ++it;
            }
        }
        for (auto it = edges.begin(); it != edges.end();) {
            if (it->u == best || it->v == best) {
                job.edges.push_back(*it);
                it = edges.erase(it);
            } else {
                ++it;
            }
        }
        std::vector<VertexId> jv{best};
        for (const auto& f : used) jv.insert(jv.end(), f.vars().begin(), f.vars().end());
        for (const auto& e : job.edges) {
            jv.push_back(e.u);
            jv.push_back(e.v);
        }
        std::sort(jv.begin(), jv.end());
        jv.erase(std::unique(jv.begin(), jv.end()), jv.end());
        job.vars = std::move(jv);
        for (const auto& f : used) job.children.push_back(&f);
        DPTable out = combine(plugin, job, states);

        const auto nb = adj[best];
        for (VertexId a : nb) {
            adj[a].erase(best);
            for (VertexId b : nb)
                if (a != b) adj[a].insert(b);
        }
        adj.erase(best);
        if (out.vars().empty())
            constants.push_back(std::move(out));
        else
            factors.push_back(std::move(out));
    }
    if (!factors.empty() || !edges.empty()) throw std::logic_error("skeleton_answer: leftover factors");

    NodeJob last;
    last.words = words;
    for (const auto& c : constants) last.children.push_back(&c);
    return answer_from_root(plugin, combine(plugin, last, states));
}

Answer LiveState::flat_answer(Property prop, size_t limit) const {
    const auto& ntd = tables_->ntd();
    const auto& snap = tables_->snapshot();
    const PropertyPlugin& plugin = plugin_for(prop);
    const int A = plugin.alphabet();
    const int words = plugin.is_optimization() ? witness_words(graph_.universe_size()) : 0;

    std::vector<VertexId> cv(special_vertices_.begin(), special_vertices_.end());
    cv.insert(cv.end(), uncovered_.begin(), uncovered_.end());
    std::sort(cv.begin(), cv.end());
    if (cv.size() > limit) throw TooLarge("flat_answer: " + std::to_string(cv.size()) + " center vertices");
    const size_t k = cv.size();
    auto pos_of = [&](VertexId v) {
        auto it = std::lower_bound(cv.begin(), cv.end(), v);
        return it != cv.end() && *it == v ? static_cast<int>(it - cv.begin()) : -1;
    };

    std::vector<std::pair<size_t, size_t>> edges;
    for (const auto& e : graph_.edges()) {
        const int a = pos_of(e.u);
        const int b = pos_of(e.v);
        if (a >= 0 && b >= 0)
            edges.emplace_back(static_cast<size_t>(a), static_cast<size_t>(b));
        else if (!snap.has_edge(e.u, e.v))
            throw EdgeOutsideCenter("changed edge leaves the center");
    }

    std::vector<DPTable> petal_tables;
    for (const auto& t : maximal_clean_triangles(ntd, special_.nodes))
        petal_tables.push_back(compute_triangle_table(snap, ntd, t, plugin));
    std::vector<std::vector<std::pair<size_t, size_t>>> slots(petal_tables.size());
    std::vector<std::vector<size_t>> holders(k);
    for (size_t t = 0; t < petal_tables.size(); ++t) {
        for (size_t j = 0; j < petal_tables[t].vars().size(); ++j) {
            const int p = pos_of(petal_tables[t].vars()[j]);
            if (p < 0) throw std::logic_error("flat_answer: petal interface outside the center");
            slots[t].emplace_back(static_cast<size_t>(p), petal_tables[t].stride(j));
            holders[static_cast<size_t>(p)].push_back(t);
        }
    }

    DPTable best_table({}, A, words);
    std::vector<Label> lab(k, 0);
    std::vector<Label> view(k, 0);
    std::vector<char> supported(k, 0);
    std::vector<size_t> demands;
    std::vector<size_t> choice;
    std::vector<uint64_t> acc(static_cast<size_t>(words), 0);
    uint64_t total = 1;
    for (size_t p = 0; p < k; ++p) total *= static_cast<uint64_t>(A);
    for (uint64_t it = 0; it < total; ++it) {
        if (it) {
            for (size_t p = 0; p < k; ++p) {
                if (++lab[p] < A) break;
                lab[p] = 0;
            }
        }
        bool ok = true;
        for (size_t p = 0; p < k && ok; ++p)
            if (!plugin.forget_ok(lab[p], graph_.degree(cv[p]) == 0)) ok = false;
        for (size_t e = 0; e < edges.size() && ok; ++e)
            if (!plugin.edge_consistent(lab[edges[e].first], lab[edges[e].second])) ok = false;
        if (!ok) continue;
        std::fill(supported.begin(), supported.end(), 0);
        for (const auto& [a, b] : edges) {
            if (plugin.supplies(lab[b])) supported[a] = 1;
            if (plugin.supplies(lab[a])) supported[b] = 1;
        }
        demands.clear();
        for (size_t p = 0; p < k && ok; ++p) {
            view[p] = lab[p];
            if (plugin.needs_support(lab[p])) {
                view[p] = plugin.relaxed(lab[p]);
                if (!supported[p]) {
                    if (holders[p].empty()) ok = false;
                    demands.push_back(p);
                }
            }
        }
        if (!ok) continue;

        int64_t base_cost = 0;
        std::vector<uint64_t> base_bits(static_cast<size_t>(words), 0);
        for (size_t p = 0; p < k; ++p) {
            base_cost += plugin.vertex_cost(lab[p]);
            if (words && plugin.in_set(lab[p])) {
                const auto v = static_cast<size_t>(cv[p]);
                base_bits[v / 64] |= uint64_t{1} << (v % 64);
            }
        }
        choice.assign(demands.size(), 0);
        while (true) {
            int64_t cost = base_cost;
            acc = base_bits;
            for (size_t t = 0; t < petal_tables.size() && cost < kInfeasible; ++t) {
                size_t idx = 0;
                for (const auto& [p, s] : slots[t]) {
                    Label l = view[p];
                    for (size_t q = 0; q < demands.size(); ++q)
                        if (demands[q] == p && holders[p][choice[q]] == t) l = lab[p];
                    idx += s * l;
                }
                if (!petal_tables[t].feasible(idx)) {
                    cost = kInfeasible;
                    break;
                }
                cost += petal_tables[t].cost(idx);
                const uint64_t* w = petal_tables[t].witness_bits(idx);
                for (int b = 0; b < words; ++b) acc[static_cast<size_t>(b)] |= w[b];
            }
            best_table.offer(0, cost, acc.data());
            size_t q = 0;
            for (; q < demands.size(); ++q) {
                if (++choice[q] < holders[demands[q]].size()) break;
                choice[q] = 0;
            }
            if (q == demands.size()) break;
        }
    }
    return answer_from_root(plugin, best_table);
}

}  // namespace dyntw
