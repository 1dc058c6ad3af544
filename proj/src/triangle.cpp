#include "dyntw/triangle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dyntw/tables.hpp"

namespace dyntw {

TriangleKind Triangle::kind() const {
    if (i0 == i1 && i1 == i2) return TriangleKind::Open;
    if (i1 == i2) return TriangleKind::Unary;
    return TriangleKind::Proper;
}

std::string to_string(const Triangle& t) {
    return "(" + std::to_string(t.i0) + "," + std::to_string(t.i1) + "," + std::to_string(t.i2) + ")";
}

bool is_valid_triangle(const NiceTreeDecomposition& ntd, const Triangle& t) {
    const auto m = static_cast<NodeId>(ntd.size());
    for (NodeId x : {t.i0, t.i1, t.i2})
        if (x < 0 || x >= m) return false;
    if (!ntd.is_ancestor(t.i0, t.i1) || !ntd.is_ancestor(t.i0, t.i2)) return false;
    switch (t.kind()) {
        case TriangleKind::Open: return true;
        case TriangleKind::Unary: return t.i1 != t.i0;
        case TriangleKind::Proper:
            return t.i1 != t.i0 && t.i2 != t.i0 && !ntd.is_ancestor(t.i1, t.i2) && !ntd.is_ancestor(t.i2, t.i1);
    }
    return false;
}

std::vector<NodeId> triangle_nodes(const NiceTreeDecomposition& ntd, const Triangle& t) {
    if (!is_valid_triangle(ntd, t)) throw std::invalid_argument("invalid triangle " + to_string(t));
    std::vector<NodeId> out;
    for (NodeId j = t.i0; j < ntd.subtree_end(t.i0); ++j) {
        bool cut = false;
        for (NodeId c : {t.i1, t.i2})
            if (c != t.i0 && c != j && ntd.is_ancestor(c, j)) cut = true;
        if (!cut) out.push_back(j);
    }
    return out;
}

std::vector<VertexId> triangle_interface(const NiceTreeDecomposition& ntd, const Triangle& t) {
    std::vector<VertexId> out;
    for (NodeId c : {t.i0, t.i1, t.i2}) out.insert(out.end(), ntd.bag(c).begin(), ntd.bag(c).end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TriangleScope triangle_scope(const DynamicGraph& g, const NiceTreeDecomposition& ntd, const Triangle& t) {
    TriangleScope s;
    s.triangle = t;
    s.subtree_nodes = triangle_nodes(ntd, t);
    s.interface_vertices = triangle_interface(ntd, t);
    std::vector<VertexId> all;
    for (NodeId j : s.subtree_nodes) all.insert(all.end(), ntd.bag(j).begin(), ntd.bag(j).end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    std::set_difference(all.begin(), all.end(), s.interface_vertices.begin(), s.interface_vertices.end(),
                        std::back_inserter(s.inner_vertices));
    for (const auto& e : g.edges()) {
        if (std::binary_search(s.inner_vertices.begin(), s.inner_vertices.end(), e.u) ||
            std::binary_search(s.inner_vertices.begin(), s.inner_vertices.end(), e.v))
            s.scoped_edges.push_back(e);
    }
    return s;
}

std::vector<std::vector<Triangle>> enumerate_triangles(const NiceTreeDecomposition& ntd) {
    std::vector<std::vector<Triangle>> levels;
    for (NodeId i0 = 0; i0 < static_cast<NodeId>(ntd.size()); ++i0) {
        const auto h = static_cast<size_t>(ntd.height_of(i0));
        if (levels.size() <= h) levels.resize(h + 1);
        auto& lvl = levels[h];
        lvl.push_back(Triangle::open(i0));
        for (NodeId a = i0 + 1; a < ntd.subtree_end(i0); ++a) {
            lvl.push_back(Triangle::unary(i0, a));
            for (NodeId b = a + 1; b < ntd.subtree_end(i0); ++b) {
                if (ntd.is_ancestor(a, b)) continue;
                lvl.push_back(Triangle::proper(i0, a, b));
            }
        }
    }
    for (auto& lvl : levels) std::sort(lvl.begin(), lvl.end());
    return levels;
}

DPTable compute_triangle_table(const DynamicGraph& g, const NiceTreeDecomposition& ntd, const Triangle& t,
                               const PropertyPlugin& plugin) {
    const TriangleScope scope = triangle_scope(g, ntd, t);
    const auto& iface = scope.interface_vertices;
    auto is_iface = [&](VertexId v) { return std::binary_search(iface.begin(), iface.end(), v); };

    std::map<NodeId, std::vector<Edge>> by_owner;
    for (const auto& e : scope.scoped_edges) by_owner[edge_owner(ntd, e)].push_back(e);

    std::map<NodeId, DPTable> done;
    std::map<NodeId, std::vector<VertexId>> carried;  // interface vertices seen below
    const int words = witness_words(g.universe_size());
    for (auto it = scope.subtree_nodes.rbegin(); it != scope.subtree_nodes.rend(); ++it) {
        const NodeId y = *it;
        const bool corner = y != t.i0 && (y == t.i1 || y == t.i2);
        NodeJob job;
        job.words = words;
        std::vector<VertexId> vars = ntd.bag(y);
        std::vector<VertexId> seen;
        if (!corner) {
            for (NodeId c : ntd.children(y)) {
                job.children.push_back(&done.at(c));
                const auto& cv = carried.at(c);
                vars.insert(vars.end(), cv.begin(), cv.end());
            }
        }
        std::sort(vars.begin(), vars.end());
        vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
        for (VertexId v : vars) {
            if (is_iface(v)) {
                seen.push_back(v);
            } else if (y == t.i0 || !ntd.bag_contains(ntd.parent(y), v)) {
                job.forget.push_back(v);
            }
        }
        job.vars = std::move(vars);
        if (auto f = by_owner.find(y); f != by_owner.end()) job.edges = f->second;
        done.emplace(y, combine(plugin, job));
        carried.emplace(y, std::move(seen));
    }
    return std::move(done.at(t.i0));
}

}  // namespace dyntw
