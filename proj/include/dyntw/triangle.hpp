#pragma once

#include <compare>
#include <string>
#include <vector>

#include "dyntw/decomposition.hpp"
#include "dyntw/graph.hpp"
#include "dyntw/plugin.hpp"
#include "dyntw/table.hpp"

namespace dyntw {

enum class TriangleKind { Open, Unary, Proper };

struct Triangle {
    NodeId i0 = 0;
    NodeId i1 = 0;
    NodeId i2 = 0;

    TriangleKind kind() const;
    auto operator<=>(const Triangle&) const = default;

    static Triangle open(NodeId i) { return {i, i, i}; }
    static Triangle unary(NodeId i0, NodeId i1) { return {i0, i1, i1}; }
    // Corners stored with i1 < i2.
    static Triangle proper(NodeId i0, NodeId i1, NodeId i2) { return i1 < i2 ? Triangle{i0, i1, i2} : Triangle{i0, i2, i1}; }
};

std::string to_string(const Triangle& t);

// Checks the corner conditions: i0 ⪯ i1, i0 ⪯ i2, and the kind's shape.
bool is_valid_triangle(const NiceTreeDecomposition& ntd, const Triangle& t);

struct TriangleScope {
    Triangle triangle;
    std::vector<NodeId> subtree_nodes;        // T(δ), ascending
    std::vector<VertexId> interface_vertices;  // B(δ), ascending
    std::vector<VertexId> inner_vertices;      // V(δ) \ B(δ), ascending
    std::vector<Edge> scoped_edges;            // G(δ): edges with an inner endpoint
};

// Subtree of i0 without strict descendants of the lower corners.
std::vector<NodeId> triangle_nodes(const NiceTreeDecomposition& ntd, const Triangle& t);
std::vector<VertexId> triangle_interface(const NiceTreeDecomposition& ntd, const Triangle& t);
TriangleScope triangle_scope(const DynamicGraph& g, const NiceTreeDecomposition& ntd, const Triangle& t);

// Every valid triangle, grouped by the height of i0, so a triangle's
// sub-triangles (rooted at children of i0) come in earlier groups.
std::vector<std::vector<Triangle>> enumerate_triangles(const NiceTreeDecomposition& ntd);

// Table of a triangle keyed by labels of (the relevant part of) B(δ): cost
// and witness cover inner vertices only; a support-demanding label means
// support through G(δ). `g` must be the graph `ntd` was built for.
DPTable compute_triangle_table(const DynamicGraph& g, const NiceTreeDecomposition& ntd, const Triangle& t,
                               const PropertyPlugin& plugin);

}  // namespace dyntw
