#include "dyntw/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace dyntw {

namespace {

void build_ktree(const std::vector<VertexId>& verts, int k, std::mt19937_64& rng, std::vector<Edge>& out) {
    const auto base = std::min<size_t>(verts.size(), static_cast<size_t>(k) + 1);
    std::vector<std::vector<VertexId>> cliques;
    for (size_t a = 0; a < base; ++a)
        for (size_t b = a + 1; b < base; ++b) out.emplace_back(verts[a], verts[b]);
    if (verts.size() <= base) return;
    // k-cliques available for attachment: every k-subset of the base clique.
    std::vector<VertexId> first(verts.begin(), verts.begin() + static_cast<long>(base));
    for (size_t skip = 0; skip < base; ++skip) {
        std::vector<VertexId> c;
        for (size_t a = 0; a < base; ++a)
            if (a != skip) c.push_back(first[a]);
        cliques.push_back(std::move(c));
    }
    for (size_t i = base; i < verts.size(); ++i) {
        std::uniform_int_distribution<size_t> pick(0, cliques.size() - 1);
        const auto host = cliques[pick(rng)];
        const VertexId v = verts[i];
        for (VertexId u : host) out.emplace_back(u, v);
        for (size_t skip = 0; skip < host.size(); ++skip) {
            std::vector<VertexId> c{v};
            for (size_t a = 0; a < host.size(); ++a)
                if (a != skip) c.push_back(host[a]);
            cliques.push_back(std::move(c));
        }
    }
}

}  // namespace

PartialKTree gen_partial_ktree(const KTreeOptions& opt) {
    if (opt.k < 1 || opt.n <= opt.k) throw BadParams("gen_partial_ktree: need 1 <= k < n");
    if (!(opt.keep_prob > 0.0) || opt.keep_prob > 1.0) throw BadParams("gen_partial_ktree: keep_prob must be in (0, 1]");
    if (opt.block_size < 0 || (opt.block_size > 0 && opt.block_size <= opt.k))
        throw BadParams("gen_partial_ktree: block_size must be 0 or > k");

    std::mt19937_64 rng(opt.seed);
    std::vector<VertexId> verts(static_cast<size_t>(opt.n));
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);

    PartialKTree t;
    t.n = opt.n;
    t.k = opt.k;
    const size_t block = opt.block_size > 0 ? static_cast<size_t>(opt.block_size) : verts.size();
    for (size_t lo = 0; lo < verts.size(); lo += block) {
        const size_t hi = std::min(verts.size(), lo + block);
        std::vector<VertexId> part(verts.begin() + static_cast<long>(lo), verts.begin() + static_cast<long>(hi));
        build_ktree(part, opt.k, rng, t.ktree_edges);
    }
    std::bernoulli_distribution keep(opt.keep_prob);
    for (const auto& e : t.ktree_edges)
        if (keep(rng)) t.kept.push_back(e);
    return t;
}

std::vector<EdgeChange> insertion_script(const PartialKTree& t) {
    std::vector<EdgeChange> out;
    out.reserve(t.kept.size());
    for (const auto& e : t.kept) out.push_back(EdgeChange::insert(e.u, e.v));
    return out;
}

std::vector<EdgeChange> mixed_changes(const PartialKTree& t, const MixOptions& opt) {
    if (opt.steps < 0 || opt.delete_prob < 0.0 || opt.delete_prob > 1.0) throw BadParams("mixed_changes: bad options");
    std::mt19937_64 rng(opt.seed);
    std::set<Edge> present(t.kept.begin(), t.kept.end());
    std::set<Edge> absent;
    for (const auto& e : t.ktree_edges)
        if (!present.count(e)) absent.insert(e);

    auto take = [&](std::set<Edge>& from) {
        std::uniform_int_distribution<size_t> pick(0, from.size() - 1);
        auto it = std::next(from.begin(), static_cast<long>(pick(rng)));
        const Edge e = *it;
        from.erase(it);
        return e;
    };

    std::bernoulli_distribution del(opt.delete_prob);
    std::vector<EdgeChange> out;
    for (int s = 0; s < opt.steps; ++s) {
        if (present.empty() && absent.empty()) break;
        const bool want_delete = absent.empty() || (!present.empty() && del(rng));
        if (want_delete) {
            const Edge e = take(present);
            absent.insert(e);
            out.push_back(EdgeChange::erase(e.u, e.v));
        } else {
            const Edge e = take(absent);
            present.insert(e);
            out.push_back(EdgeChange::insert(e.u, e.v));
        }
    }
    return out;
}

}  // namespace dyntw
