#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dyntw/graph.hpp"

namespace dyntw {

enum class Property { ThreeCol, VertexCover, DomSet };

inline constexpr Property kAllProperties[] = {Property::ThreeCol, Property::VertexCover, Property::DomSet};

std::string_view property_name(Property p);  // threecol | vertexcover | domset
Property parse_property(std::string_view s);  // throws std::invalid_argument

using Label = uint8_t;

// Result of a query. For decision properties only `feasible` is meaningful;
// optimization answers carry the optimum and a lexicographically minimal
// optimal witness (sorted).
struct Answer {
    Property property = Property::ThreeCol;
    bool feasible = true;
    int64_t optimum = 0;
    std::vector<VertexId> witness;

    bool operator==(const Answer&) const = default;
};

// Per-property DP plug-in. Labels are small integers in [0, alphabet()).
//
// Domination-style properties use three extra hooks: a label may demand
// support from inside the scope (`needs_support`), may be satisfied by a
// neighbour carrying a `supplies` label, and is relaxed to `relaxed(l)` once
// satisfied. When one vertex appears in several child scopes, exactly one of
// them must provide the support; the others see the relaxed label.
class PropertyPlugin {
public:
    virtual ~PropertyPlugin() = default;

    virtual Property property() const = 0;
    virtual int alphabet() const = 0;
    virtual bool is_optimization() const = 0;
    virtual int vertex_cost(Label l) const = 0;
    virtual bool edge_consistent(Label a, Label b) const = 0;
    virtual std::string label_name(Label l) const = 0;

    // Label allowed on a vertex leaving every open scope. `exempt` marks a
    // vertex with no incident edge (no domination requirement).
    virtual bool forget_ok(Label, bool /*exempt*/) const { return true; }
    virtual bool needs_support(Label) const { return false; }
    virtual bool supplies(Label) const { return false; }
    virtual Label relaxed(Label l) const { return l; }
    // Label set into which a witness bit is recorded.
    virtual bool in_set(Label l) const { return vertex_cost(l) > 0; }
};

const PropertyPlugin& plugin_for(Property p);

namespace labels {
inline constexpr Label kOut = 0;  // vertex cover
inline constexpr Label kIn = 1;
inline constexpr Label kDsIn = 0;  // dominating set
inline constexpr Label kDsDom = 1;
inline constexpr Label kDsFree = 2;
}  // namespace labels

}  // namespace dyntw
