#include "dyntw/table.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace dyntw {

namespace {
constexpr uint64_t kMaxStates = uint64_t{1} << 26;
}

bool better_entry(int64_t ca, const uint64_t* wa, int64_t cb, const uint64_t* wb, int words) {
    if (ca != cb) return ca < cb;
    for (int w = 0; w < words; ++w) {
        const uint64_t d = wa[w] ^ wb[w];
        if (d) return (wa[w] >> std::countr_zero(d)) & 1U;
    }
    return false;
}

DPTable::DPTable(std::vector<VertexId> vars, int alphabet, int words)
    : vars_(std::move(vars)), alphabet_(alphabet), words_(words) {
    size_t total = 1;
    strides_.reserve(vars_.size());
    for (size_t j = 0; j < vars_.size(); ++j) {
        strides_.push_back(total);
        total *= static_cast<size_t>(alphabet_);
        if (total > kMaxStates) throw TableTooLarge("table over " + std::to_string(vars_.size()) + " vertices");
    }
    cost_.assign(total, kInfeasible);
    wit_.assign(total * static_cast<size_t>(words_), 0);
}

std::vector<VertexId> DPTable::witness(size_t idx) const {
    std::vector<VertexId> out;
    const uint64_t* w = witness_bits(idx);
    for (int k = 0; k < words_; ++k) {
        uint64_t bits = w[k];
        while (bits) {
            out.push_back(static_cast<VertexId>(k * 64 + std::countr_zero(bits)));
            bits &= bits - 1;
        }
    }
    return out;
}

size_t DPTable::index_of(const std::vector<Label>& labels) const {
    size_t idx = 0;
    for (size_t j = 0; j < vars_.size(); ++j) idx += labels[j] * strides_[j];
    return idx;
}

std::vector<Label> DPTable::labels_of(size_t idx) const {
    std::vector<Label> out(vars_.size());
    for (size_t j = 0; j < vars_.size(); ++j) {
        out[j] = static_cast<Label>(idx % static_cast<size_t>(alphabet_));
        idx /= static_cast<size_t>(alphabet_);
    }
    return out;
}

int DPTable::position(VertexId v) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    return it != vars_.end() && *it == v ? static_cast<int>(it - vars_.begin()) : -1;
}

void DPTable::offer(size_t idx, int64_t cost, const uint64_t* wit) {
    if (cost >= kInfeasible) return;
    uint64_t* mine = wit_.data() + idx * static_cast<size_t>(words_);
    if (cost_[idx] >= kInfeasible || better_entry(cost, wit, cost_[idx], mine, words_)) {
        cost_[idx] = cost;
        std::copy(wit, wit + words_, mine);
    }
}

size_t DPTable::feasible_count() const {
    return static_cast<size_t>(std::count_if(cost_.begin(), cost_.end(), [](int64_t c) { return c < kInfeasible; }));
}

DPTable combine(const PropertyPlugin& plugin, const NodeJob& job, uint64_t* states) {
    const int A = plugin.alphabet();
    const int words = plugin.is_optimization() ? job.words : 0;

    // Relevant vertices, in sorted order.
    std::vector<VertexId> enumv = job.forget;
    for (const auto& e : job.edges) {
        enumv.push_back(e.u);
        enumv.push_back(e.v);
    }
    for (const DPTable* c : job.children) enumv.insert(enumv.end(), c->vars().begin(), c->vars().end());
    std::sort(enumv.begin(), enumv.end());
    enumv.erase(std::unique(enumv.begin(), enumv.end()), enumv.end());
    for (VertexId v : enumv)
        if (!std::binary_search(job.vars.begin(), job.vars.end(), v))
            throw std::logic_error("combine: vertex " + std::to_string(v) + " outside the node's vars");

    const size_t m = enumv.size();
    auto pos_of = [&](VertexId v) {
        return static_cast<size_t>(std::lower_bound(enumv.begin(), enumv.end(), v) - enumv.begin());
    };

    std::vector<char> forgotten(m, 0);
    std::vector<char> exempt(m, 0);
    for (VertexId v : job.forget) forgotten[pos_of(v)] = 1;
    for (VertexId v : job.exempt)
        if (std::binary_search(job.forget.begin(), job.forget.end(), v)) exempt[pos_of(v)] = 1;

    std::vector<VertexId> out_vars;
    std::vector<size_t> out_pos;
    for (size_t p = 0; p < m; ++p) {
        if (!forgotten[p]) {
            out_vars.push_back(enumv[p]);
            out_pos.push_back(p);
        }
    }
    DPTable out(out_vars, A, words);
    std::vector<size_t> out_stride(m, 0);
    for (size_t j = 0; j < out_pos.size(); ++j) out_stride[out_pos[j]] = out.stride(j);

    // Per child: (position, stride) pairs; per position: children holding it.
    struct ChildRef {
        const DPTable* table;
        std::vector<std::pair<size_t, size_t>> slots;
        std::vector<size_t> stride_at;  // by position, 0 if absent
    };
    std::vector<ChildRef> kids;
    std::vector<std::vector<size_t>> holders(m);
    for (size_t ci = 0; ci < job.children.size(); ++ci) {
        const DPTable* c = job.children[ci];
        ChildRef ref{c, {}, std::vector<size_t>(m, 0)};
        for (size_t j = 0; j < c->vars().size(); ++j) {
            const size_t p = pos_of(c->vars()[j]);
            ref.slots.emplace_back(p, c->stride(j));
            ref.stride_at[p] = c->stride(j);
            holders[p].push_back(ci);
        }
        kids.push_back(std::move(ref));
    }

    std::vector<std::pair<size_t, size_t>> edges;
    for (const auto& e : job.edges)
        if (e.u != e.v) edges.emplace_back(pos_of(e.u), pos_of(e.v));

    uint64_t total = 1;
    for (size_t p = 0; p < m; ++p) {
        total *= static_cast<uint64_t>(A);
        if (total > kMaxStates) throw TableTooLarge("node scope over " + std::to_string(m) + " vertices");
    }
    if (states) *states += total;

    std::vector<Label> lab(m, 0);
    std::vector<Label> req(m, 0);
    std::vector<char> supported(m, 0);
    std::vector<size_t> multi;
    std::vector<size_t> base(kids.size(), 0);
    std::vector<size_t> choice;
    std::vector<uint64_t> acc(static_cast<size_t>(words), 0);
    std::vector<uint64_t> best_w(static_cast<size_t>(words), 0);

    for (uint64_t it = 0; it < total; ++it) {
        if (it) {
            for (size_t p = 0; p < m; ++p) {
                if (++lab[p] < A) break;
                lab[p] = 0;
            }
        }
        bool ok = true;
        for (size_t p = 0; p < m && ok; ++p)
            if (forgotten[p] && !plugin.forget_ok(lab[p], exempt[p])) ok = false;
        for (size_t k = 0; k < edges.size() && ok; ++k)
            if (!plugin.edge_consistent(lab[edges[k].first], lab[edges[k].second])) ok = false;
        if (!ok) continue;

        std::fill(supported.begin(), supported.end(), 0);
        for (const auto& [a, b] : edges) {
            if (plugin.supplies(lab[b])) supported[a] = 1;
            if (plugin.supplies(lab[a])) supported[b] = 1;
        }
        multi.clear();
        for (size_t p = 0; p < m && ok; ++p) {
            req[p] = lab[p];
            if (!plugin.needs_support(lab[p])) continue;
            if (supported[p]) {
                req[p] = plugin.relaxed(lab[p]);
            } else if (holders[p].empty()) {
                ok = false;
            } else if (holders[p].size() > 1) {
                multi.push_back(p);
            }
        }
        if (!ok) continue;

        // Multi-held demands start relaxed everywhere; one holder gets the demand.
        for (size_t p : multi) req[p] = plugin.relaxed(lab[p]);
        for (size_t ci = 0; ci < kids.size(); ++ci) {
            size_t idx = 0;
            for (const auto& [p, s] : kids[ci].slots) idx += s * req[p];
            base[ci] = idx;
        }

        int64_t best = kInfeasible;
        choice.assign(multi.size(), 0);
        while (true) {
            int64_t cost = 0;
            std::fill(acc.begin(), acc.end(), 0);
            for (size_t ci = 0; ci < kids.size() && cost < kInfeasible; ++ci) {
                size_t idx = base[ci];
                for (size_t q = 0; q < multi.size(); ++q) {
                    const size_t p = multi[q];
                    if (holders[p][choice[q]] != ci) continue;
                    // Swap the relaxed label for the demanding one in this child.
                    idx = idx - kids[ci].stride_at[p] * req[p] + kids[ci].stride_at[p] * lab[p];
                }
                const int64_t c = kids[ci].table->cost(idx);
                if (c >= kInfeasible) {
                    cost = kInfeasible;
                    break;
                }
                cost += c;
                const uint64_t* w = kids[ci].table->witness_bits(idx);
                for (int k = 0; k < words; ++k) acc[static_cast<size_t>(k)] |= w[k];
            }
            if (cost < kInfeasible && (best >= kInfeasible || better_entry(cost, acc.data(), best, best_w.data(), words))) {
                best = cost;
                best_w = acc;
            }
            size_t q = 0;
            for (; q < multi.size(); ++q) {
                if (++choice[q] < holders[multi[q]].size()) break;
                choice[q] = 0;
            }
            if (q == multi.size()) break;
        }
        if (best >= kInfeasible) continue;

        size_t oidx = 0;
        for (size_t p = 0; p < m; ++p) {
            if (forgotten[p]) {
                best += plugin.vertex_cost(lab[p]);
                if (words && plugin.in_set(lab[p])) {
                    const auto v = static_cast<size_t>(enumv[p]);
                    best_w[v / 64] |= uint64_t{1} << (v % 64);
                }
            } else {
                oidx += out_stride[p] * lab[p];
            }
        }
        out.offer(oidx, best, best_w.data());
    }

    // A demand-free label accepts every entry of its demanding counterpart.
    for (size_t j = 0; j < out.vars().size(); ++j) {
        for (size_t idx = 0; idx < out.size(); ++idx) {
            const auto l = static_cast<Label>((idx / out.stride(j)) % static_cast<size_t>(A));
            if (!plugin.needs_support(l) || !out.feasible(idx)) continue;
            const size_t relaxed_idx = idx - out.stride(j) * l + out.stride(j) * plugin.relaxed(l);
            out.offer(relaxed_idx, out.cost(idx), out.witness_bits(idx));
        }
    }
    return out;
}

Answer answer_from_root(const PropertyPlugin& plugin, const DPTable& t) {
    if (!t.vars().empty()) throw std::logic_error("answer_from_root: table still has open vertices");
    Answer a;
    a.property = plugin.property();
    a.feasible = t.feasible(0);
    if (plugin.is_optimization()) {
        a.optimum = a.feasible ? t.cost(0) : 0;
        a.witness = t.witness(0);
    }
    return a;
}

}  // namespace dyntw
