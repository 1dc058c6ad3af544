#pragma once

#include <stdexcept>
#include <vector>

#include "dyntw/graph.hpp"
#include "dyntw/plugin.hpp"

namespace dyntw {

class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exhaustive reference solvers. Each connected component of the active
// domain is solved on its own; the size limits apply per component.
inline constexpr size_t kThreeColLimit = 24;
inline constexpr size_t kVertexCoverLimit = 20;
inline constexpr size_t kDomSetLimit = 18;
inline constexpr size_t kTreewidthLimit = 10;

Answer brute_threecol(const DynamicGraph& g);
Answer brute_min_vertex_cover(const DynamicGraph& g);
// Only active vertices need to be dominated.
Answer brute_min_dominating_set(const DynamicGraph& g);
Answer brute_answer(const DynamicGraph& g, Property p);

// Whole active domain at most kTreewidthLimit vertices.
bool brute_treewidth_at_most(const DynamicGraph& g, int k);

bool is_vertex_cover(const DynamicGraph& g, const std::vector<VertexId>& s);
bool is_dominating_set(const DynamicGraph& g, const std::vector<VertexId>& s);

// Connected components of the active domain, each sorted, ordered by their
// smallest vertex.
std::vector<std::vector<VertexId>> active_components(const DynamicGraph& g);

}  // namespace dyntw
