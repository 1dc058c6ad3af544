#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "doctest.h"
#include "dyntw/decomposition.hpp"
#include "dyntw/triangle.hpp"
#include "support/fixtures.hpp"

using namespace dyntw;
using namespace dyntw::testing;

namespace {

// Complete binary tree with 15 nodes in preorder. Vertex i lives in bag i and
// in the bags of i's children; the graph is the tree itself.
struct BinaryFixture {
    DynamicGraph g{15};
    NiceTreeDecomposition ntd;

    BinaryFixture() {
        TreeDecomposition td;
        std::function<void(VertexId, NodeId, int)> grow = [&](VertexId parent_vertex, NodeId parent, int depth) {
            const auto v = static_cast<VertexId>(td.size());
            Bag bag{v};
            if (parent >= 0) {
                bag = {parent_vertex, v};
                g.apply_change(EdgeChange::insert(parent_vertex, v));
            }
            const NodeId id = td.add_node(bag, parent);
            if (depth < 3) {
                grow(v, id, depth + 1);
                grow(v, id, depth + 1);
            }
        };
        grow(-1, -1, 0);
        ntd = NiceTreeDecomposition(td, 15);
    }
};

bool contains(const std::vector<std::vector<Triangle>>& levels, const Triangle& t) {
    for (const auto& l : levels)
        if (std::find(l.begin(), l.end(), t) != l.end()) return true;
    return false;
}

// Direct evaluation of a table entry: best cost over all labellings of the
// inner vertices that extend `key` (interface vertices outside the key stay
// unconstrained). Returns -1 if none is feasible.
int64_t brute_entry(const DynamicGraph& g, const TriangleScope& s, Property p, const std::map<VertexId, Label>& key) {
    const auto& inner = s.inner_vertices;
    const int a = plugin_for(p).alphabet();
    const bool ds = p == Property::DomSet;
    const int alpha = ds ? 2 : a;  // domset: in / out for inner vertices
    int64_t best = -1;
    std::vector<Label> lab(inner.size(), 0);
    auto label_of = [&](VertexId v, bool& known) -> Label {
        auto it = std::lower_bound(inner.begin(), inner.end(), v);
        known = true;
        if (it != inner.end() && *it == v) return lab[static_cast<size_t>(it - inner.begin())];
        auto k = key.find(v);
        if (k != key.end()) return k->second;
        known = false;
        return 0;
    };
    for (;;) {
        bool ok = true;
        int64_t cost = 0;
        if (ds) {
            // inner: 0 = in the set, 1 = out
            for (size_t i = 0; i < inner.size() && ok; ++i) {
                if (lab[i] == 0) {
                    ++cost;
                    continue;
                }
                bool dominated = false;
                for (VertexId u : g.neighbours(inner[i])) {
                    bool known = false;
                    const Label l = label_of(u, known);
                    const bool is_inner = std::binary_search(inner.begin(), inner.end(), u);
                    if (known && ((is_inner && l == 0) || (!is_inner && l == labels::kDsIn))) dominated = true;
                }
                ok = dominated;
            }
            for (const auto& [v, l] : key) {
                if (!ok || l != labels::kDsDom) continue;
                bool dominated = false;
                for (VertexId u : g.neighbours(v)) {
                    auto it = std::lower_bound(inner.begin(), inner.end(), u);
                    if (it != inner.end() && *it == u && lab[static_cast<size_t>(it - inner.begin())] == 0)
                        dominated = true;
                }
                ok = dominated;
            }
        } else {
            const auto& plugin = plugin_for(p);
            for (Label l : lab) cost += plugin.vertex_cost(l);
            for (const auto& e : s.scoped_edges) {
                bool ku = false;
                bool kv = false;
                const Label lu = label_of(e.u, ku);
                const Label lv = label_of(e.v, kv);
                if (ku && kv && !plugin.edge_consistent(lu, lv)) ok = false;
            }
        }
        if (ok && (best < 0 || cost < best)) best = cost;
        size_t i = 0;
        while (i < lab.size() && ++lab[i] == alpha) lab[i++] = 0;
        if (i == lab.size()) break;
    }
    return best;
}

}  // namespace

TEST_CASE("a single node has only its open triangle") {
    TreeDecomposition td;
    td.add_node({0, 1}, -1);
    const NiceTreeDecomposition ntd(td, 2);
    const auto levels = enumerate_triangles(ntd);
    REQUIRE(levels.size() == 1);
    CHECK(levels[0] == std::vector<Triangle>{Triangle::open(0)});
}

TEST_CASE("a root with two leaves") {
    TreeDecomposition td;
    const NodeId r = td.add_node({0, 1}, -1);
    td.add_node({0, 1, 2}, r);
    td.add_node({0, 1, 3}, r);
    const NiceTreeDecomposition ntd(td, 4);
    const auto levels = enumerate_triangles(ntd);
    const std::vector<Triangle> want{Triangle::open(0), Triangle::open(1), Triangle::open(2),
                                     Triangle::unary(0, 1), Triangle::unary(0, 2), Triangle::proper(0, 1, 2)};
    size_t total = 0;
    for (const auto& l : levels) total += l.size();
    CHECK(total == want.size());
    for (const auto& t : want) {
        CHECK(contains(levels, t));
        CHECK(is_valid_triangle(ntd, t));
    }
    CHECK_FALSE(is_valid_triangle(ntd, Triangle{1, 0, 0}));
    CHECK_FALSE(is_valid_triangle(ntd, Triangle{1, 2, 2}));
}

TEST_CASE("sub-triangles come in earlier groups") {
    BinaryFixture f;
    const auto levels = enumerate_triangles(f.ntd);
    for (size_t h = 0; h < levels.size(); ++h) {
        for (const auto& t : levels[h]) {
            CHECK(f.ntd.height_of(t.i0) == static_cast<int>(h));
            if (t.kind() == TriangleKind::Open) continue;
            // Splitting at i0: the parts hanging below its children.
            for (NodeId c : f.ntd.children(t.i0)) {
                for (NodeId corner : {t.i1, t.i2}) {
                    if (!f.ntd.is_ancestor(c, corner)) continue;
                    const std::vector<std::vector<Triangle>> prev(levels.begin(), levels.begin() + static_cast<long>(h));
                    CHECK(contains(prev, c == corner ? Triangle::open(c) : Triangle::unary(c, corner)));
                }
            }
        }
    }
}

TEST_CASE("scopes follow the definitions") {
    BinaryFixture f;
    const auto& ntd = f.ntd;
    const auto root_scope = triangle_scope(f.g, ntd, Triangle::open(0));
    CHECK(root_scope.subtree_nodes.size() == 15);
    CHECK(root_scope.interface_vertices == ntd.bag(0));
    CHECK(root_scope.inner_vertices.size() == 14);

    for (const auto& level : enumerate_triangles(ntd)) {
        for (const auto& t : level) {
            const auto s = triangle_scope(f.g, ntd, t);
            std::vector<NodeId> nodes;
            for (NodeId j = 0; j < static_cast<NodeId>(ntd.size()); ++j) {
                if (!ntd.is_ancestor(t.i0, j)) continue;
                bool below = false;
                for (NodeId c : {t.i1, t.i2})
                    if (c != t.i0 && c != j && ntd.is_ancestor(c, j)) below = true;
                if (!below) nodes.push_back(j);
            }
            CHECK(s.subtree_nodes == nodes);
            std::set<VertexId> iface;
            for (NodeId c : {t.i0, t.i1, t.i2}) iface.insert(ntd.bag(c).begin(), ntd.bag(c).end());
            std::set<VertexId> inner;
            for (NodeId j : nodes)
                for (VertexId v : ntd.bag(j))
                    if (!iface.count(v)) inner.insert(v);
            CHECK(s.interface_vertices == std::vector<VertexId>(iface.begin(), iface.end()));
            CHECK(s.inner_vertices == std::vector<VertexId>(inner.begin(), inner.end()));
            std::vector<Edge> scoped;
            for (const auto& e : f.g.edges())
                if (inner.count(e.u) || inner.count(e.v)) scoped.push_back(e);
            CHECK(s.scoped_edges == scoped);
        }
    }
}

TEST_CASE("unary triangle over adjacent nodes has no inner vertex") {
    TreeDecomposition td;
    const NodeId r = td.add_node({0, 1}, -1);
    td.add_node({1, 2}, r);
    const NiceTreeDecomposition ntd(td, 3);
    const auto g = path_graph(3);
    CHECK(triangle_scope(g, ntd, Triangle::unary(0, 1)).inner_vertices.empty());
}

TEST_CASE("open leaf triangle accepts every colouring") {
    const auto g = complete_graph(3);
    const auto ntd = build_nice_decomposition(g, 2);
    for (NodeId i = 0; i < static_cast<NodeId>(ntd.size()); ++i) {
        if (!ntd.is_leaf(i)) continue;
        const auto t = compute_triangle_table(g, ntd, Triangle::open(i), plugin_for(Property::ThreeCol));
        CHECK(t.feasible_count() == t.size());
    }
}

TEST_CASE("vertex cover through the middle of a path") {
    TreeDecomposition td;
    const NodeId r = td.add_node({0, 2}, -1);
    td.add_node({0, 1, 2}, r);
    const NiceTreeDecomposition ntd(td, 3);
    const auto t = compute_triangle_table(path_graph(3), ntd, Triangle::open(0), plugin_for(Property::VertexCover));
    REQUIRE(t.vars() == std::vector<VertexId>{0, 2});
    const size_t idx = t.index_of({labels::kOut, labels::kOut});
    CHECK(t.cost(idx) == 1);
    CHECK(t.witness(idx) == std::vector<VertexId>{1});
    CHECK(t.cost(t.index_of({labels::kIn, labels::kIn})) == 0);
}

TEST_CASE("triangle tables agree with exhaustive extension") {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        const auto g = random_partial_ktree(10, 2, 0.8, seed);
        const auto ntd = build_nice_decomposition(g, 2);
        for (const auto& level : enumerate_triangles(ntd)) {
            for (const auto& tri : level) {
                const auto scope = triangle_scope(g, ntd, tri);
                if (scope.inner_vertices.size() > 8) continue;
                for (Property p : kAllProperties) {
                    const auto& plugin = plugin_for(p);
                    const auto table = compute_triangle_table(g, ntd, tri, plugin);
                    for (size_t idx = 0; idx < table.size(); ++idx) {
                        const auto labs = table.labels_of(idx);
                        std::map<VertexId, Label> key;
                        for (size_t j = 0; j < labs.size(); ++j) key[table.vars()[j]] = labs[j];
                        const int64_t want = brute_entry(g, scope, p, key);
                        const int64_t got = table.feasible(idx) ? table.cost(idx) : -1;
                        REQUIRE_MESSAGE(got == want, to_string(tri), " ", property_name(p), " entry ", idx);
                    }
                }
            }
        }
    }
}
