#include <random>
#include <sstream>

#include "doctest.h"
#include "dyntw/decomposition.hpp"
#include "support/fixtures.hpp"

using namespace dyntw;
using namespace dyntw::testing;

namespace {

bool has_violation(const ValidationReport& r, Violation::Kind k, VertexId v = -1, Edge e = {}) {
    for (const auto& x : r.violations) {
        if (x.kind != k) continue;
        if (k == Violation::Kind::MissingEdge && x.edge != e) continue;
        if ((k == Violation::Kind::Disconnected || k == Violation::Kind::MissingVertex) && x.vertex != v) continue;
        return true;
    }
    return false;
}

// Naive LCA by walking parents.
NodeId naive_lca(const NiceTreeDecomposition& ntd, NodeId a, NodeId b) {
    std::set<NodeId> up;
    for (NodeId x = a;; x = ntd.parent(x)) {
        up.insert(x);
        if (x == ntd.root()) break;
    }
    for (NodeId x = b;; x = ntd.parent(x))
        if (up.count(x)) return x;
}

}  // namespace

TEST_CASE("decompose small graphs") {
    const auto k3 = decompose(complete_graph(3), 2);
    CHECK(k3.width() == 2);
    CHECK(k3.size() == 1);
    CHECK(k3.bags[0] == Bag{0, 1, 2});
    CHECK(verify_td(complete_graph(3), k3).ok());

    const auto p = path_graph(4);
    const auto pd = decompose(p, 1);
    CHECK(pd.width() == 1);
    CHECK(verify_td(p, pd).ok());
    std::set<Bag> bags(pd.bags.begin(), pd.bags.end());
    CHECK(bags == std::set<Bag>{{0, 1}, {1, 2}, {2, 3}});

    CHECK_THROWS_AS(decompose(complete_graph(5), 3), WidthExceeded);
}

TEST_CASE("decompose partial 3-trees within the budget") {
    for (uint64_t s = 1; s <= 10; ++s) {
        const auto g = random_partial_ktree(50, 3, 0.8, s);
        const auto td = decompose(g, 3);
        CHECK(td.width() <= 3);
        CHECK(verify_td(g, td).ok());
    }
}

TEST_CASE("verify_td reports each kind of violation") {
    const DynamicGraph g = DynamicGraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});

    TreeDecomposition split;
    const NodeId r = split.add_node({0, 1}, -1);
    split.add_node({2, 3}, r);
    const auto rep = verify_td(g, split);
    CHECK(has_violation(rep, Violation::Kind::MissingEdge, -1, Edge(1, 2)));

    TreeDecomposition gap;
    const NodeId a = gap.add_node({0, 1}, -1);
    const NodeId b = gap.add_node({0, 2}, a);
    gap.add_node({1, 2, 3}, b);
    CHECK(has_violation(verify_td(g, gap), Violation::Kind::Disconnected, 1));

    TreeDecomposition missing;
    missing.add_node({0, 1, 2}, -1);
    CHECK(has_violation(verify_td(g, missing), Violation::Kind::MissingVertex, 3));
}

TEST_CASE("balance a long path decomposition") {
    const auto g = path_graph(64);
    const auto td = decompose(g, 1);
    const auto bal = balance(td);
    CHECK(verify_td(g, bal).ok());
    CHECK(bal.width() <= 5);
    CHECK(bal.max_degree() <= 2);
    CHECK(bal.depth() <= 2 * 6);
}

TEST_CASE("balance leaves a single bag alone") {
    TreeDecomposition one;
    one.add_node({0, 1, 2}, -1);
    const auto bal = balance(one);
    CHECK(bal.size() == 1);
    CHECK(bal.depth() == 0);
}

TEST_CASE("nicefy removes duplicate bags") {
    const DynamicGraph g = DynamicGraph::from_edges(2, {{0, 1}});
    TreeDecomposition td;
    const NodeId r = td.add_node({0, 1}, -1);
    td.add_node({0, 1}, r);
    const auto ntd = nicefy(td, 2);
    CHECK(ntd.niceness_problems().empty());
    CHECK(verify_td(g, ntd.td()).ok());
    std::set<Bag> distinct(ntd.td().bags.begin(), ntd.td().bags.end());
    CHECK(distinct.size() == ntd.size());
}

TEST_CASE("each nicefy step keeps the decomposition valid") {
    for (uint64_t s = 1; s <= 20; ++s) {
        const auto g = random_partial_ktree(40, 1 + static_cast<int>(s % 3), 0.7, s);
        auto td = balance(decompose(g, 3));
        const int width = td.width();
        const int depth = td.depth();
        for (auto step : {prune_contained_leaves, contract_chains, add_leaf_witnesses, dedupe_bags}) {
            td = step(td);
            REQUIRE(verify_td(g, td).ok());
            CHECK(td.depth() <= depth);
        }
        CHECK(td.width() <= width + 2);
    }
}

TEST_CASE("pipeline on a 16-vertex path") {
    const auto g = path_graph(16);
    const auto ntd = build_nice_decomposition(g, 1);
    CHECK(verify_td(g, ntd.td()).ok());
    CHECK(ntd.niceness_problems().empty());
    CHECK(ntd.td().max_degree() <= 2);
}

TEST_CASE("top is the smallest node holding the vertex") {
    const auto g = random_partial_ktree(60, 2, 0.8, 9);
    const auto ntd = build_nice_decomposition(g, 2);
    for (VertexId v : g.active_domain()) {
        NodeId first = -1;
        for (NodeId i = 0; i < static_cast<NodeId>(ntd.size()) && first < 0; ++i)
            if (ntd.bag_contains(i, v)) first = i;
        CHECK(ntd.top_of(v) == first);
    }
}

TEST_CASE("lca examples and agreement with a naive walk") {
    const auto g = random_partial_ktree(128, 2, 0.7, 4);
    const auto ntd = build_nice_decomposition(g, 2);
    const auto m = static_cast<NodeId>(ntd.size());
    REQUIRE(m > 3);

    for (NodeId i = 0; i < m; ++i) {
        CHECK(ntd.lca(i, i) == i);
        CHECK(ntd.lca(ntd.root(), i) == ntd.root());
        const auto& ch = ntd.children(i);
        if (ch.size() == 2) CHECK(ntd.lca(ch[0], ch[1]) == i);
    }

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<NodeId> pick(0, m - 1);
    for (int t = 0; t < 1000; ++t) {
        const NodeId a = pick(rng);
        const NodeId b = pick(rng);
        REQUIRE(ntd.lca(a, b) == naive_lca(ntd, a, b));
    }
}

TEST_CASE("dump format") {
    TreeDecomposition td;
    const NodeId r = td.add_node({0, 1}, -1);
    td.add_node({1, 2}, r);
    std::ostringstream out;
    dump_decomposition(out, td);
    CHECK(out.str() == "0 0 bag:0,1\n1 0 bag:1,2\n");
}
