#include "dyntw/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <set>

namespace dyntw {

namespace {

// Component as local adjacency masks; local index order = vertex order.
struct Local {
    std::vector<VertexId> verts;
    std::vector<uint32_t> adj;
};

Local localize(const DynamicGraph& g, const std::vector<VertexId>& comp, size_t limit, const char* who) {
    if (comp.size() > limit)
        throw TooLarge(std::string(who) + ": component of " + std::to_string(comp.size()) + " vertices exceeds " +
                       std::to_string(limit));
    Local l{comp, std::vector<uint32_t>(comp.size(), 0)};
    for (size_t i = 0; i < comp.size(); ++i) {
        for (VertexId w : g.neighbours(comp[i])) {
            const auto j = static_cast<size_t>(std::lower_bound(comp.begin(), comp.end(), w) - comp.begin());
            l.adj[i] |= uint32_t{1} << j;
        }
    }
    return l;
}

bool colour_component(const Local& l) {
    const size_t m = l.verts.size();
    std::vector<int> col(m, -1);
    std::function<bool(size_t)> go = [&](size_t i) {
        if (i == m) return true;
        const int max_c = i == 0 ? 1 : 3;  // first vertex colour fixed by symmetry
        for (int c = 0; c < max_c; ++c) {
            bool ok = true;
            for (size_t j = 0; j < i && ok; ++j)
                if (((l.adj[i] >> j) & 1U) && col[j] == c) ok = false;
            if (!ok) continue;
            col[i] = c;
            if (go(i + 1)) return true;
        }
        col[i] = -1;
        return false;
    };
    return go(0);
}

// Smallest-size, then lexicographically first subset (of local indices)
// passing `ok`.
std::vector<VertexId> first_subset(const Local& l, const std::function<bool(uint32_t)>& ok) {
    const size_t m = l.verts.size();
    for (size_t k = 0; k <= m; ++k) {
        std::vector<size_t> idx(k);
        for (size_t a = 0; a < k; ++a) idx[a] = a;
        while (true) {
            uint32_t mask = 0;
            for (size_t a : idx) mask |= uint32_t{1} << a;
            if (ok(mask)) {
                std::vector<VertexId> out;
                for (size_t a : idx) out.push_back(l.verts[a]);
                return out;
            }
            // Next k-combination in lexicographic order.
            size_t a = k;
            while (a > 0 && idx[a - 1] == m - k + a - 1) --a;
            if (a == 0) break;
            ++idx[a - 1];
            for (size_t b = a; b < k; ++b) idx[b] = idx[b - 1] + 1;
        }
    }
    throw std::logic_error("first_subset: full set rejected");
}

Answer optimize(const DynamicGraph& g, Property p, size_t limit, const char* who,
                const std::function<bool(const Local&, uint32_t)>& ok) {
    Answer a;
    a.property = p;
    for (const auto& comp : active_components(g)) {
        const Local l = localize(g, comp, limit, who);
        const auto part = first_subset(l, [&](uint32_t mask) { return ok(l, mask); });
        a.witness.insert(a.witness.end(), part.begin(), part.end());
    }
    std::sort(a.witness.begin(), a.witness.end());
    a.optimum = static_cast<int64_t>(a.witness.size());
    return a;
}

}  // namespace

std::vector<std::vector<VertexId>> active_components(const DynamicGraph& g) {
    std::vector<std::vector<VertexId>> out;
    std::vector<char> seen(static_cast<size_t>(g.universe_size()), 0);
    for (VertexId s : g.active_domain()) {
        if (seen[static_cast<size_t>(s)]) continue;
        std::vector<VertexId> comp{s};
        seen[static_cast<size_t>(s)] = 1;
        for (size_t k = 0; k < comp.size(); ++k) {
            for (VertexId w : g.neighbours(comp[k])) {
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

Answer brute_threecol(const DynamicGraph& g) {
    Answer a;
    a.property = Property::ThreeCol;
    for (const auto& comp : active_components(g)) {
        if (!colour_component(localize(g, comp, kThreeColLimit, "brute_threecol"))) {
            a.feasible = false;
            break;
        }
    }
    return a;
}

Answer brute_min_vertex_cover(const DynamicGraph& g) {
    return optimize(g, Property::VertexCover, kVertexCoverLimit, "brute_min_vertex_cover",
                    [](const Local& l, uint32_t mask) {
                        for (size_t i = 0; i < l.verts.size(); ++i)
                            if (!((mask >> i) & 1U) && (l.adj[i] & ~mask)) return false;
                        return true;
                    });
}

Answer brute_min_dominating_set(const DynamicGraph& g) {
    return optimize(g, Property::DomSet, kDomSetLimit, "brute_min_dominating_set", [](const Local& l, uint32_t mask) {
        for (size_t i = 0; i < l.verts.size(); ++i)
            if (!((mask >> i) & 1U) && !(l.adj[i] & mask)) return false;
        return true;
    });
}

Answer brute_answer(const DynamicGraph& g, Property p) {
    switch (p) {
        case Property::ThreeCol: return brute_threecol(g);
        case Property::VertexCover: return brute_min_vertex_cover(g);
        case Property::DomSet: return brute_min_dominating_set(g);
    }
    throw std::invalid_argument("brute_answer: unknown property");
}

bool brute_treewidth_at_most(const DynamicGraph& g, int k) {
    const auto act = g.active_domain();
    if (act.size() > kTreewidthLimit)
        throw TooLarge("brute_treewidth_at_most: " + std::to_string(act.size()) + " active vertices");
    if (act.empty()) return k >= -1;
    const Local l = localize(g, act, kTreewidthLimit, "brute_treewidth_at_most");
    const size_t m = act.size();
    // good[S]: the vertices of S can be eliminated first, in some order,
    // with every elimination degree <= k.
    std::vector<char> good(size_t{1} << m, 0);
    good[0] = 1;
    for (uint32_t s = 1; s < (uint32_t{1} << m); ++s) {
        for (size_t v = 0; v < m && !good[s]; ++v) {
            if (!((s >> v) & 1U)) continue;
            const uint32_t before = s & ~(uint32_t{1} << v);
            if (!good[before]) continue;
            // Neighbours of v in the eliminated graph: reachable through `before`.
            uint32_t reach = uint32_t{1} << v;
            uint32_t frontier = reach;
            uint32_t outside = 0;
            while (frontier) {
                const auto x = static_cast<size_t>(std::countr_zero(frontier));
                frontier &= frontier - 1;
                const uint32_t nb = l.adj[x] & ~reach;
                outside |= nb & ~before;
                const uint32_t inner = nb & before;
                reach |= inner;
                frontier |= inner;
            }
            if (std::popcount(outside) <= k) good[s] = 1;
        }
    }
    return good[(size_t{1} << m) - 1] != 0;
}

bool is_vertex_cover(const DynamicGraph& g, const std::vector<VertexId>& s) {
    const std::set<VertexId> in(s.begin(), s.end());
    return std::all_of(g.edges().begin(), g.edges().end(),
                       [&](const Edge& e) { return in.count(e.u) || in.count(e.v); });
}

bool is_dominating_set(const DynamicGraph& g, const std::vector<VertexId>& s) {
    const std::set<VertexId> in(s.begin(), s.end());
    for (VertexId v : g.active_domain()) {
        if (in.count(v)) continue;
        const auto& nb = g.neighbours(v);
        if (std::none_of(nb.begin(), nb.end(), [&](VertexId w) { return in.count(w) != 0; })) return false;
    }
    return true;
}

}  // namespace dyntw
