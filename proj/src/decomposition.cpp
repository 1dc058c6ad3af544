#include "dyntw/decomposition.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <random>
#include <tuple>
#include <set>

namespace dyntw {

namespace {

bool is_subset(const Bag& a, const Bag& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Bag bag_union(const Bag& a, const Bag& b) {
    Bag out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Bag bag_intersection(const Bag& a, const Bag& b) {
    Bag out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Bag bag_difference(const Bag& a, const Bag& b) {
    Bag out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<NodeId> preorder(const TreeDecomposition& td) {
    std::vector<NodeId> order;
    if (td.size() == 0) return order;
    std::vector<NodeId> stack{td.root};
    while (!stack.empty()) {
        const NodeId i = stack.back();
        stack.pop_back();
        order.push_back(i);
        const auto& ch = td.children[static_cast<size_t>(i)];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    return order;
}

// Replaces `node` in its parent's child list by `replacement` (possibly
// several nodes), keeping the position.
void splice_out(TreeDecomposition& td, NodeId node) {
    const auto n = static_cast<size_t>(node);
    const NodeId p = td.parent[n];
    auto& siblings = td.children[static_cast<size_t>(p)];
    auto it = std::find(siblings.begin(), siblings.end(), node);
    assert(it != siblings.end());
    const auto grandchildren = td.children[n];
    it = siblings.erase(it);
    siblings.insert(it, grandchildren.begin(), grandchildren.end());
    for (NodeId c : grandchildren) td.parent[static_cast<size_t>(c)] = p;
    td.children[n].clear();
}

// Makes the single child of the root the new root.
void drop_root(TreeDecomposition& td) {
    const auto r = static_cast<size_t>(td.root);
    assert(td.children[r].size() == 1);
    const NodeId c = td.children[r].front();
    td.children[r].clear();
    td.parent[static_cast<size_t>(c)] = c;
    td.root = c;
}

}  // namespace

int TreeDecomposition::width() const { return static_cast<int>(max_bag()) - 1; }

size_t TreeDecomposition::max_bag() const {
    size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return m;
}

int TreeDecomposition::depth() const {
    if (size() == 0) return 0;
    std::vector<int> d(size(), 0);
    int best = 0;
    for (NodeId i : preorder(*this)) {
        if (i != root) d[static_cast<size_t>(i)] = d[static_cast<size_t>(parent[static_cast<size_t>(i)])] + 1;
        best = std::max(best, d[static_cast<size_t>(i)]);
    }
    return best;
}

size_t TreeDecomposition::max_degree() const {
    size_t m = 0;
    for (NodeId i : preorder(*this)) m = std::max(m, children[static_cast<size_t>(i)].size());
    return m;
}

NodeId TreeDecomposition::add_node(Bag bag, NodeId parent_id) {
    const auto id = static_cast<NodeId>(bags.size());
    bags.push_back(std::move(bag));
    parent.push_back(parent_id < 0 ? id : parent_id);
    children.emplace_back();
    if (parent_id >= 0) children[static_cast<size_t>(parent_id)].push_back(id);
    return id;
}

TreeDecomposition TreeDecomposition::compacted() const {
    TreeDecomposition out;
    const auto order = preorder(*this);
    std::vector<NodeId> remap(size(), -1);
    for (size_t k = 0; k < order.size(); ++k) remap[static_cast<size_t>(order[k])] = static_cast<NodeId>(k);
    out.root = 0;
    for (NodeId old : order) {
        const auto o = static_cast<size_t>(old);
        const NodeId p = old == root ? -1 : remap[static_cast<size_t>(parent[o])];
        out.add_node(bags[o], p);
    }
    return out;
}

bool ValidationReport::has(Violation::Kind k) const {
    return std::any_of(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; });
}

int log2_ceil(int64_t n) {
    n = std::max<int64_t>(n, 2);
    int k = 0;
    while ((int64_t{1} << k) < n) ++k;
    return k;
}

namespace {

struct Elimination {
    std::vector<VertexId> order;
    std::vector<Bag> bags;
    int width = 0;
};

// Greedy elimination. Variant 0: min-fill, ties by degree then id. Variant
// 1: min-degree, ties by fill. Higher variants: min-fill with seeded random
// tie-breaks.
Elimination eliminate(const DynamicGraph& g, const std::vector<VertexId>& active, int variant) {
    const auto n = static_cast<size_t>(g.universe_size());
    std::vector<std::set<VertexId>> adj(n);
    std::vector<char> alive(n, 0);
    for (VertexId v : active) {
        adj[static_cast<size_t>(v)] = g.neighbours(v);
        alive[static_cast<size_t>(v)] = 1;
    }
    std::vector<uint64_t> jitter(n, 0);
    if (variant >= 2) {
        std::mt19937_64 rng(static_cast<uint64_t>(variant));
        for (auto& j : jitter) j = rng();
    }

    Elimination out;
    for (size_t step = 0; step < active.size(); ++step) {
        VertexId best = -1;
        std::tuple<size_t, size_t, uint64_t> best_key{};
        for (VertexId v : active) {
            if (!alive[static_cast<size_t>(v)]) continue;
            const auto& nb = adj[static_cast<size_t>(v)];
            size_t fill = 0;
            for (auto a = nb.begin(); a != nb.end(); ++a) {
                auto b = a;
                for (++b; b != nb.end(); ++b)
                    if (!adj[static_cast<size_t>(*a)].count(*b)) ++fill;
            }
            const auto key = variant == 1 ? std::tuple(nb.size(), fill, jitter[static_cast<size_t>(v)])
                             : variant == 0 ? std::tuple(fill, nb.size(), uint64_t{0})
                                            : std::tuple(fill, size_t{0}, jitter[static_cast<size_t>(v)]);
            if (best < 0 || key < best_key) {
                best_key = key;
                best = v;
            }
        }
        const auto bv = static_cast<size_t>(best);
        Bag bag(adj[bv].begin(), adj[bv].end());
        bag.insert(std::lower_bound(bag.begin(), bag.end(), best), best);
        out.width = std::max(out.width, static_cast<int>(bag.size()) - 1);
        for (VertexId a : adj[bv]) {
            adj[static_cast<size_t>(a)].erase(best);
            for (VertexId b : adj[bv])
                if (a != b) adj[static_cast<size_t>(a)].insert(b);
        }
        adj[bv].clear();
        alive[bv] = 0;
        out.order.push_back(best);
        out.bags.push_back(std::move(bag));
    }
    return out;
}

constexpr int kEliminationVariants = 10;

}  // namespace

TreeDecomposition decompose(const DynamicGraph& g, int width_budget) {
    TreeDecomposition td;
    const auto active = g.active_domain();
    if (active.empty()) {
        td.add_node({}, -1);
        return td;
    }

    // First variant within budget; the narrowest one otherwise.
    Elimination el = eliminate(g, active, 0);
    for (int variant = 1; variant < kEliminationVariants && el.width > width_budget; ++variant) {
        Elimination alt = eliminate(g, active, variant);
        if (alt.width < el.width) el = std::move(alt);
    }
    if (el.width > width_budget) throw WidthExceeded(el.width);
    const auto& order = el.order;
    const auto& elim_bags = el.bags;
    const auto n = static_cast<size_t>(g.universe_size());

    std::vector<size_t> pos(n, 0);
    for (size_t k = 0; k < order.size(); ++k) pos[static_cast<size_t>(order[k])] = k;

    const size_t m = order.size();
    td.bags = elim_bags;
    td.parent.assign(m, 0);
    td.children.assign(m, {});
    td.root = static_cast<NodeId>(m - 1);
    for (size_t k = 0; k < m; ++k) {
        size_t next = m;
        for (VertexId u : elim_bags[k])
            if (u != order[k]) next = std::min(next, pos[static_cast<size_t>(u)]);
        if (k == m - 1) {
            td.parent[k] = td.root;
            continue;
        }
        // Component roots hang off the global root (empty intersection).
        const auto p = static_cast<NodeId>(next == m ? m - 1 : next);
        td.parent[k] = p;
        td.children[static_cast<size_t>(p)].push_back(static_cast<NodeId>(k));
    }

    // Contract tree edges whose bags are nested.
    std::vector<char> removed(m, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t c = 0; c < m; ++c) {
            if (removed[c] || static_cast<NodeId>(c) == td.root) continue;
            const auto p = static_cast<size_t>(td.parent[c]);
            if (is_subset(td.bags[p], td.bags[c])) td.bags[p] = td.bags[c];
            else if (!is_subset(td.bags[c], td.bags[p])) continue;
            splice_out(td, static_cast<NodeId>(c));
            removed[c] = 1;
            changed = true;
        }
    }
    return td.compacted();
}

ValidationReport verify_td(const DynamicGraph& g, const TreeDecomposition& td) {
    ValidationReport rep;
    auto bad_tree = [&](NodeId i, std::string msg) {
        rep.violations.push_back({Violation::Kind::BadTree, -1, {}, i, std::move(msg)});
    };

    const size_t m = td.size();
    bool tree_ok = m > 0 && td.parent.size() == m && td.children.size() == m && td.root >= 0 &&
                   static_cast<size_t>(td.root) < m;
    if (!tree_ok) {
        bad_tree(-1, "inconsistent node arrays or root");
    } else {
        if (td.parent[static_cast<size_t>(td.root)] != td.root) bad_tree(td.root, "root is not its own parent");
        for (size_t i = 0; i < m; ++i) {
            for (NodeId c : td.children[i]) {
                if (c < 0 || static_cast<size_t>(c) >= m || td.parent[static_cast<size_t>(c)] != static_cast<NodeId>(i))
                    bad_tree(static_cast<NodeId>(i), "child/parent mismatch");
            }
        }
        const auto order = preorder(td);
        std::set<NodeId> seen(order.begin(), order.end());
        if (seen.size() != order.size() || order.size() != m) bad_tree(td.root, "nodes unreachable from root or cyclic");
        tree_ok = rep.violations.empty();
    }
    for (size_t i = 0; i < td.bags.size(); ++i) {
        const auto& b = td.bags[i];
        if (!std::is_sorted(b.begin(), b.end()) || std::adjacent_find(b.begin(), b.end()) != b.end())
            bad_tree(static_cast<NodeId>(i), "bag not sorted/unique");
    }

    std::map<VertexId, std::vector<NodeId>> occ;
    for (size_t i = 0; i < td.bags.size(); ++i)
        for (VertexId v : td.bags[i]) occ[v].push_back(static_cast<NodeId>(i));

    for (VertexId v : g.active_domain()) {
        if (!occ.count(v))
            rep.violations.push_back({Violation::Kind::MissingVertex, v, {}, -1,
                                      "vertex " + std::to_string(v) + " in no bag"});
    }
    for (const auto& e : g.edges()) {
        bool found = false;
        for (const auto& b : td.bags) {
            if (std::binary_search(b.begin(), b.end(), e.u) && std::binary_search(b.begin(), b.end(), e.v)) {
                found = true;
                break;
            }
        }
        if (!found)
            rep.violations.push_back({Violation::Kind::MissingEdge, -1, e, -1,
                                      "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} in no bag"});
    }
    if (tree_ok) {
        for (const auto& [v, nodes] : occ) {
            int tops = 0;
            for (NodeId i : nodes) {
                const auto& pb = td.bags[static_cast<size_t>(td.parent[static_cast<size_t>(i)])];
                if (i == td.root || !std::binary_search(pb.begin(), pb.end(), v)) ++tops;
            }
            if (tops != 1)
                rep.violations.push_back({Violation::Kind::Disconnected, v, {}, -1,
                                          "vertex " + std::to_string(v) + " occurs in " + std::to_string(tops) +
                                              " disconnected subtrees"});
        }
    }
    return rep;
}

namespace {

TreeDecomposition binarize(const TreeDecomposition& in) {
    TreeDecomposition td = in;
    const size_t original = td.size();
    for (size_t i = 0; i < original; ++i) {
        if (td.children[i].size() <= 2) continue;
        const auto ch = td.children[i];
        const Bag bag = td.bags[i];
        td.children[i] = {ch[0]};
        auto cur = static_cast<NodeId>(i);
        for (size_t j = 1; j + 1 < ch.size(); ++j) {
            const NodeId x = td.add_node(bag, cur);
            td.children[static_cast<size_t>(x)].push_back(ch[j]);
            td.parent[static_cast<size_t>(ch[j])] = x;
            cur = x;
        }
        td.children[static_cast<size_t>(cur)].push_back(ch.back());
        td.parent[static_cast<size_t>(ch.back())] = cur;
    }
    return td;
}

// Recursive centroid splitting over the undirected tree. Every component
// keeps at most two port nodes (nodes adjacent to already placed nodes), so
// a new bag is B(centroid) plus the boundary intersections of two ports.
class Balancer {
public:
    explicit Balancer(const TreeDecomposition& t) : t_(t), nbr_(t.size()), placed_(t.size(), 0), mark_(t.size(), 0) {
        for (size_t i = 0; i < t.size(); ++i) {
            for (NodeId c : t.children[i]) {
                nbr_[i].push_back(c);
                nbr_[static_cast<size_t>(c)].push_back(static_cast<NodeId>(i));
            }
        }
    }

    TreeDecomposition run() {
        std::vector<NodeId> all(t_.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<NodeId>(i);
        out_.root = build(all, -1);
        return out_;
    }

private:
    NodeId build(const std::vector<NodeId>& comp, NodeId out_parent) {
        const int st = ++stamp_;
        for (NodeId x : comp) mark_[static_cast<size_t>(x)] = st;
        auto in_comp = [&](NodeId x) { return mark_[static_cast<size_t>(x)] == st; };

        std::vector<NodeId> ports;
        Bag boundary;
        for (NodeId p : comp) {
            bool is_port = false;
            for (NodeId q : nbr_[static_cast<size_t>(p)]) {
                if (in_comp(q)) continue;
                assert(placed_[static_cast<size_t>(q)]);
                is_port = true;
                boundary = bag_union(boundary, bag_intersection(t_.bags[static_cast<size_t>(p)],
                                                                t_.bags[static_cast<size_t>(q)]));
            }
            if (is_port) ports.push_back(p);
        }
        if (ports.size() > 2) throw std::logic_error("balance: component with more than two ports");

        // Root the component at comp[0]; BFS order and parents.
        std::map<NodeId, NodeId> par;
        std::vector<NodeId> bfs{comp.front()};
        par[comp.front()] = -1;
        for (size_t k = 0; k < bfs.size(); ++k) {
            for (NodeId y : nbr_[static_cast<size_t>(bfs[k])]) {
                if (in_comp(y) && !par.count(y)) {
                    par[y] = bfs[k];
                    bfs.push_back(y);
                }
            }
        }
        std::map<NodeId, size_t> sub;
        for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
            sub[*it] += 1;
            if (par[*it] >= 0) sub[par[*it]] += sub[*it];
        }
        const size_t total = comp.size();
        NodeId centroid = -1;
        size_t best = std::numeric_limits<size_t>::max();
        for (NodeId x : bfs) {
            size_t worst = total - sub[x];
            for (NodeId y : nbr_[static_cast<size_t>(x)])
                if (in_comp(y) && par[y] == x) worst = std::max(worst, sub[y]);
            if (worst < best || (worst == best && x < centroid)) {
                best = worst;
                centroid = x;
            }
        }

        NodeId split = centroid;
        if (ports.size() == 2) {
            // Node on the port-to-port path nearest to the centroid.
            std::set<NodeId> path;
            std::set<NodeId> up;
            for (NodeId x = ports[0]; x >= 0; x = par[x]) up.insert(x);
            NodeId meet = ports[1];
            while (!up.count(meet)) {
                path.insert(meet);
                meet = par[meet];
            }
            for (NodeId x = ports[0]; x != meet; x = par[x]) path.insert(x);
            path.insert(meet);
            std::map<NodeId, int> dist{{centroid, 0}};
            std::queue<NodeId> q;
            q.push(centroid);
            while (!q.empty()) {
                const NodeId x = q.front();
                q.pop();
                if (path.count(x)) {
                    split = x;
                    break;
                }
                for (NodeId y : nbr_[static_cast<size_t>(x)]) {
                    if (in_comp(y) && !dist.count(y)) {
                        dist[y] = dist[x] + 1;
                        q.push(y);
                    }
                }
            }
        }

        const Bag bag = bag_union(t_.bags[static_cast<size_t>(split)], boundary);
        const NodeId id = out_.add_node(bag, out_parent);
        placed_[static_cast<size_t>(split)] = 1;

        std::vector<std::vector<NodeId>> parts;
        for (NodeId y : nbr_[static_cast<size_t>(split)]) {
            if (!in_comp(y) || placed_[static_cast<size_t>(y)]) continue;
            std::vector<NodeId> part{y};
            std::set<NodeId> seen{y, split};
            for (size_t k = 0; k < part.size(); ++k) {
                for (NodeId z : nbr_[static_cast<size_t>(part[k])]) {
                    if (in_comp(z) && !placed_[static_cast<size_t>(z)] && !seen.count(z)) {
                        seen.insert(z);
                        part.push_back(z);
                    }
                }
            }
            std::sort(part.begin(), part.end());
            parts.push_back(std::move(part));
        }
        std::sort(parts.begin(), parts.end());

        if (parts.size() <= 2) {
            for (const auto& part : parts) build(part, id);
        } else {
            build(parts[0], id);
            const NodeId extra = out_.add_node(bag, id);
            for (size_t k = 1; k < parts.size(); ++k) build(parts[k], extra);
        }
        return id;
    }

    const TreeDecomposition& t_;
    std::vector<std::vector<NodeId>> nbr_;
    std::vector<char> placed_;
    std::vector<int> mark_;
    int stamp_ = 0;
    TreeDecomposition out_;
};

}  // namespace

TreeDecomposition balance(const TreeDecomposition& td) {
    if (td.size() <= 1) return td.compacted();
    const auto bin = binarize(td);
    return Balancer(bin).run().compacted();
}

TreeDecomposition prune_contained_leaves(const TreeDecomposition& in) {
    TreeDecomposition td = in;
    auto order = preorder(td);
    std::reverse(order.begin(), order.end());
    // Union-free check: every alive bag below i is a subset of B(i).
    std::function<bool(NodeId, const Bag&)> below_within = [&](NodeId i, const Bag& ref) {
        for (NodeId c : td.children[static_cast<size_t>(i)]) {
            if (!is_subset(td.bags[static_cast<size_t>(c)], ref) || !below_within(c, ref)) return false;
        }
        return true;
    };
    for (NodeId i : order) {
        if (i == td.root) continue;
        const auto& b = td.bags[static_cast<size_t>(i)];
        const NodeId p = td.parent[static_cast<size_t>(i)];
        if (is_subset(b, td.bags[static_cast<size_t>(p)]) && below_within(i, b)) {
            auto& sib = td.children[static_cast<size_t>(p)];
            sib.erase(std::find(sib.begin(), sib.end(), i));
        }
    }
    return td.compacted();
}

TreeDecomposition contract_chains(const TreeDecomposition& in) {
    TreeDecomposition td = in;
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId i : preorder(td)) {
            const auto ii = static_cast<size_t>(i);
            if (td.children[ii].size() != 1) continue;
            const NodeId c = td.children[ii].front();
            const auto& b = td.bags[ii];
            const bool in_child = is_subset(b, td.bags[static_cast<size_t>(c)]);
            if (i == td.root) {
                if (in_child) {
                    drop_root(td);
                    changed = true;
                    break;
                }
                continue;
            }
            const bool in_parent = is_subset(b, td.bags[static_cast<size_t>(td.parent[ii])]);
            if (in_parent || in_child) {
                splice_out(td, i);
                changed = true;
                break;
            }
        }
    }
    return td.compacted();
}

TreeDecomposition add_leaf_witnesses(const TreeDecomposition& in) {
    TreeDecomposition td = in.compacted();
    const size_t m = td.size();
    std::vector<VertexId> unique(m, -1);
    for (size_t i = 0; i < m; ++i) {
        if (!td.children[i].empty() || static_cast<NodeId>(i) == td.root) continue;
        const auto own = bag_difference(td.bags[i], td.bags[static_cast<size_t>(td.parent[i])]);
        if (own.empty()) throw DegenerateInput("leaf bag contained in its parent; prune first");
        unique[i] = own.front();
    }
    std::vector<Bag> out = td.bags;
    for (size_t i = 0; i < m; ++i) {
        if (td.children[i].empty()) continue;
        NodeId l = static_cast<NodeId>(i);
        while (!td.children[static_cast<size_t>(l)].empty()) l = td.children[static_cast<size_t>(l)].front();
        NodeId r = static_cast<NodeId>(i);
        while (!td.children[static_cast<size_t>(r)].empty()) r = td.children[static_cast<size_t>(r)].back();
        out[i] = bag_union(out[i], Bag{unique[static_cast<size_t>(l)]});
        out[i] = bag_union(out[i], Bag{unique[static_cast<size_t>(r)]});
    }
    td.bags = std::move(out);
    return td;
}

TreeDecomposition dedupe_bags(const TreeDecomposition& in) {
    TreeDecomposition td = in.compacted();
    while (true) {
        std::map<Bag, NodeId> first;
        NodeId a = -1;
        NodeId b = -1;
        for (NodeId i : preorder(td)) {
            auto [it, fresh] = first.emplace(td.bags[static_cast<size_t>(i)], i);
            if (!fresh) {
                a = it->second;
                b = i;
                break;
            }
        }
        if (a < 0) return td;
        // Preorder visit puts ancestors first; verify a ⪯ b.
        NodeId x = b;
        while (x != td.root && x != a) x = td.parent[static_cast<size_t>(x)];
        if (x != a) throw std::logic_error("dedupe_bags: incomparable duplicate bags");
        if (td.children[static_cast<size_t>(b)].size() <= 1) {
            splice_out(td, b);
        } else if (td.children[static_cast<size_t>(a)].size() == 1) {
            if (a == td.root)
                drop_root(td);
            else
                splice_out(td, a);
        } else {
            throw std::logic_error("dedupe_bags: duplicate bags at two branching nodes");
        }
        td = td.compacted();
    }
}

NiceTreeDecomposition::NiceTreeDecomposition(TreeDecomposition td, int32_t universe_size)
    : td_(td.compacted()), n_(universe_size) {
    const size_t m = td_.size();
    node_depth_.assign(m, 0);
    height_.assign(m, 0);
    subtree_size_.assign(m, 1);
    for (size_t i = 1; i < m; ++i)
        node_depth_[i] = node_depth_[static_cast<size_t>(td_.parent[i])] + 1;
    for (size_t i = m; i-- > 1;) {
        const auto p = static_cast<size_t>(td_.parent[i]);
        subtree_size_[p] += subtree_size_[i];
        height_[p] = std::max(height_[p], height_[i] + 1);
    }
    depth_ = m ? *std::max_element(node_depth_.begin(), node_depth_.end()) : 0;
    log_n_ = log2_ceil(n_);

    size_t levels = 1;
    while ((size_t{1} << levels) < m) ++levels;
    up_.assign(levels, std::vector<NodeId>(m, 0));
    for (size_t i = 0; i < m; ++i) up_[0][i] = td_.parent[i];
    for (size_t k = 1; k < levels; ++k)
        for (size_t i = 0; i < m; ++i) up_[k][i] = up_[k - 1][static_cast<size_t>(up_[k - 1][i])];

    top_.assign(static_cast<size_t>(std::max(n_, 0)), -1);
    for (size_t i = 0; i < m; ++i) {
        for (VertexId v : td_.bags[i]) {
            if (v >= 0 && v < n_ && top_[static_cast<size_t>(v)] < 0) top_[static_cast<size_t>(v)] = static_cast<NodeId>(i);
        }
    }
}

NodeId NiceTreeDecomposition::ancestor_at_depth(NodeId j, int d) const {
    int lift = depth_of(j) - d;
    assert(lift >= 0);
    for (size_t k = 0; lift > 0; ++k, lift >>= 1)
        if (lift & 1) j = up_[k][static_cast<size_t>(j)];
    return j;
}

NodeId NiceTreeDecomposition::lca(NodeId i, NodeId j) const {
    if (is_ancestor(i, j)) return i;
    if (is_ancestor(j, i)) return j;
    for (size_t k = up_.size(); k-- > 0;) {
        const NodeId a = up_[k][static_cast<size_t>(i)];
        if (!is_ancestor(a, j)) i = a;
    }
    return parent(i);
}

std::optional<NodeId> NiceTreeDecomposition::top_of(VertexId v) const {
    if (v < 0 || static_cast<size_t>(v) >= top_.size() || top_[static_cast<size_t>(v)] < 0) return std::nullopt;
    return top_[static_cast<size_t>(v)];
}

bool NiceTreeDecomposition::bag_contains(NodeId i, VertexId v) const {
    const auto& b = bag(i);
    return std::binary_search(b.begin(), b.end(), v);
}

std::vector<std::string> NiceTreeDecomposition::niceness_problems() const {
    std::vector<std::string> out;
    std::set<Bag> seen;
    for (size_t i = 0; i < size(); ++i) {
        if (td_.children[i].size() > 2) out.push_back("node " + std::to_string(i) + " has degree > 2");
        if (!seen.insert(td_.bags[i]).second) out.push_back("node " + std::to_string(i) + " repeats a bag");
    }
    if (td_.depth() != depth_) out.push_back("depth bookkeeping mismatch");
    return out;
}

void NiceTreeDecomposition::dump(std::ostream& out) const { dump_decomposition(out, td_); }

NiceTreeDecomposition nicefy(const TreeDecomposition& td, int32_t universe_size) {
    if (td.max_degree() > 2) throw DegenerateInput("nicefy requires degree <= 2; run balance first");
    auto t = prune_contained_leaves(td);
    t = contract_chains(t);
    t = add_leaf_witnesses(t);
    t = dedupe_bags(t);
    return NiceTreeDecomposition(std::move(t), universe_size);
}

NiceTreeDecomposition build_nice_decomposition(const DynamicGraph& g, int width_budget) {
    return nicefy(balance(decompose(g, width_budget)), g.universe_size());
}

void dump_decomposition(std::ostream& out, const TreeDecomposition& td) {
    for (size_t i = 0; i < td.size(); ++i) {
        out << i << ' ' << td.parent[i] << " bag:";
        for (size_t k = 0; k < td.bags[i].size(); ++k) out << (k ? "," : "") << td.bags[i][k];
        out << '\n';
    }
}

}  // namespace dyntw
