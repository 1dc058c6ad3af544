#include "dyntw/plugin.hpp"

#include <stdexcept>

namespace dyntw {

namespace {

class ThreeColPlugin final : public PropertyPlugin {
public:
    Property property() const override { return Property::ThreeCol; }
    int alphabet() const override { return 3; }
    bool is_optimization() const override { return false; }
    int vertex_cost(Label) const override { return 0; }
    bool edge_consistent(Label a, Label b) const override { return a != b; }
    std::string label_name(Label l) const override { return "c" + std::to_string(l + 1); }
};

class VertexCoverPlugin final : public PropertyPlugin {
public:
    Property property() const override { return Property::VertexCover; }
    int alphabet() const override { return 2; }
    bool is_optimization() const override { return true; }
    int vertex_cost(Label l) const override { return l == labels::kIn ? 1 : 0; }
    bool edge_consistent(Label a, Label b) const override { return a == labels::kIn || b == labels::kIn; }
    std::string label_name(Label l) const override { return l == labels::kIn ? "in" : "out"; }
};

// in_set / dominated / free. "dominated" claims an in-set neighbour inside
// the current scope; "free" claims nothing yet.
class DomSetPlugin final : public PropertyPlugin {
public:
    Property property() const override { return Property::DomSet; }
    int alphabet() const override { return 3; }
    bool is_optimization() const override { return true; }
    int vertex_cost(Label l) const override { return l == labels::kDsIn ? 1 : 0; }
    bool edge_consistent(Label, Label) const override { return true; }
    std::string label_name(Label l) const override {
        return l == labels::kDsIn ? "in" : l == labels::kDsDom ? "dominated" : "undominated";
    }
    bool forget_ok(Label l, bool exempt) const override { return l != labels::kDsFree || exempt; }
    bool needs_support(Label l) const override { return l == labels::kDsDom; }
    bool supplies(Label l) const override { return l == labels::kDsIn; }
    Label relaxed(Label l) const override { return l == labels::kDsDom ? labels::kDsFree : l; }
};

}  // namespace

std::string_view property_name(Property p) {
    switch (p) {
        case Property::ThreeCol: return "threecol";
        case Property::VertexCover: return "vertexcover";
        case Property::DomSet: return "domset";
    }
    return "?";
}

Property parse_property(std::string_view s) {
    for (Property p : kAllProperties)
        if (property_name(p) == s) return p;
    throw std::invalid_argument("unknown property '" + std::string(s) + "'");
}

const PropertyPlugin& plugin_for(Property p) {
    static const ThreeColPlugin threecol;
    static const VertexCoverPlugin vc;
    static const DomSetPlugin ds;
    switch (p) {
        case Property::ThreeCol: return threecol;
        case Property::VertexCover: return vc;
        case Property::DomSet: return ds;
    }
    throw std::invalid_argument("unknown property");
}

}  // namespace dyntw
