#pragma once

#include <cstdint>
#include <vector>

#include "dyntw/graph.hpp"
#include "dyntw/generator.hpp"

namespace dyntw::testing {

DynamicGraph complete_graph(int32_t k, int32_t n = 0);
DynamicGraph path_graph(int32_t k, int32_t n = 0);
DynamicGraph cycle_graph(int32_t k, int32_t n = 0);
DynamicGraph petersen_graph();
DynamicGraph star_graph(int32_t leaves);

// The kept edges of a partial k-tree as a graph.
DynamicGraph random_partial_ktree(int32_t n, int k, double keep, uint64_t seed);

// Vertex sets as sorted vectors, for comparing witnesses.
std::vector<VertexId> sorted(std::vector<VertexId> v);

}  // namespace dyntw::testing
