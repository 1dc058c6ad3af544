#include "support/fixtures.hpp"

#include <algorithm>

namespace dyntw::testing {

DynamicGraph complete_graph(int32_t k, int32_t n) {
    DynamicGraph g(std::max(n, k));
    for (VertexId u = 0; u < k; ++u)
        for (VertexId v = u + 1; v < k; ++v) g.apply_change(EdgeChange::insert(u, v));
    return g;
}

DynamicGraph path_graph(int32_t k, int32_t n) {
    DynamicGraph g(std::max(n, k));
    for (VertexId v = 0; v + 1 < k; ++v) g.apply_change(EdgeChange::insert(v, v + 1));
    return g;
}

DynamicGraph cycle_graph(int32_t k, int32_t n) {
    DynamicGraph g = path_graph(k, n);
    g.apply_change(EdgeChange::insert(0, k - 1));
    return g;
}

DynamicGraph petersen_graph() {
    DynamicGraph g(10);
    for (VertexId i = 0; i < 5; ++i) {
        g.apply_change(EdgeChange::insert(i, (i + 1) % 5));
        g.apply_change(EdgeChange::insert(i, i + 5));
        g.apply_change(EdgeChange::insert(5 + i, 5 + (i + 2) % 5));
    }
    return g;
}

DynamicGraph star_graph(int32_t leaves) {
    DynamicGraph g(leaves + 1);
    for (VertexId v = 1; v <= leaves; ++v) g.apply_change(EdgeChange::insert(0, v));
    return g;
}

DynamicGraph random_partial_ktree(int32_t n, int k, double keep, uint64_t seed) {
    KTreeOptions o;
    o.n = n;
    o.k = k;
    o.keep_prob = keep;
    o.seed = seed;
    return DynamicGraph::from_edges(n, gen_partial_ktree(o).kept);
}

std::vector<VertexId> sorted(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace dyntw::testing
