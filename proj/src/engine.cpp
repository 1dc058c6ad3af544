#include "dyntw/engine.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

namespace dyntw {

int epoch_length(int64_t n, double c_factor) {
    if (n < 1) throw std::invalid_argument("epoch_length: n must be >= 1");
    const double raw = std::ceil(c_factor * std::log2(static_cast<double>(n)) - 1e-9);
    return std::max(1, static_cast<int>(raw));
}

void DeltaBuffer::add(const EdgeChange& c) {
    const Edge e = c.edge();
    auto& same = c.kind == ChangeKind::Insert ? inserts_ : deletes_;
    auto& opposite = c.kind == ChangeKind::Insert ? deletes_ : inserts_;
    if (!opposite.erase(e)) same.insert(e);
}

bool DeltaBuffer::cancel(const Edge& e) { return inserts_.erase(e) || deletes_.erase(e); }

std::optional<EdgeChange> DeltaBuffer::take_smallest() {
    if (empty()) return std::nullopt;
    const bool from_inserts =
        !inserts_.empty() && (deletes_.empty() || *inserts_.begin() < *deletes_.begin());
    if (from_inserts) {
        const Edge e = *inserts_.begin();
        inserts_.erase(inserts_.begin());
        return EdgeChange::insert(e.u, e.v);
    }
    const Edge e = *deletes_.begin();
    deletes_.erase(deletes_.begin());
    return EdgeChange::erase(e.u, e.v);
}

void DeltaBuffer::clear() {
    inserts_.clear();
    deletes_.clear();
}

std::string_view phase_name(Phase p) {
    switch (p) {
        case Phase::Recomputing: return "recomputing";
        case Phase::Replaying: return "replaying";
        case Phase::Serving: return "serving";
    }
    return "?";
}

std::string_view mode_name(RecomputeMode m) {
    switch (m) {
        case RecomputeMode::Inline: return "inline";
        case RecomputeMode::Background: return "background";
        case RecomputeMode::FullRecompute: return "full-recompute";
    }
    return "?";
}

RecomputeMode parse_mode(std::string_view s) {
    for (auto m : {RecomputeMode::Inline, RecomputeMode::Background, RecomputeMode::FullRecompute})
        if (mode_name(m) == s) return m;
    throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

Answer bootstrap_answer(const DynamicGraph& g, Property p, int width_budget, uint64_t* units) {
    auto snap = std::make_shared<const DynamicGraph>(g.snapshot());
    auto ntd = std::make_shared<const NiceTreeDecomposition>(build_nice_decomposition(*snap, width_budget));
    TableStore store(snap, ntd);
    for (size_t k = 0; k < store.units().size(); ++k) {
        if (store.units()[k].property != p) continue;
        store.run_unit(k);
        if (units) ++*units;
    }
    return query_static(store, g, p);
}

// Runs granted table units of the current rebuild on its own thread. The
// foreground grants a quota per change and waits for it at the phase
// boundary, so the work per step matches the inline schedule.
class Engine::Worker {
public:
    Worker() : thread_([this] { loop(); }) {}
    ~Worker() {
        {
            std::lock_guard<std::mutex> lk(m_);
            stop_ = true;
        }
        cv_.notify_all();
        thread_.join();
    }

    void assign(TableBuilder* b) {
        std::lock_guard<std::mutex> lk(m_);
        builder_ = b;
        granted_ = 0;
        done_ = 0;
    }

    void grant(size_t n) {
        {
            std::lock_guard<std::mutex> lk(m_);
            granted_ += n;
        }
        cv_.notify_all();
    }

    void wait() {
        std::unique_lock<std::mutex> lk(m_);
        done_cv_.wait(lk, [&] { return done_ == granted_ || error_; });
        if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
    }

private:
    void loop() {
        std::unique_lock<std::mutex> lk(m_);
        while (true) {
            cv_.wait(lk, [&] { return stop_ || (builder_ && done_ < granted_ && !error_); });
            if (stop_) return;
            TableBuilder* b = builder_;
            lk.unlock();
            std::exception_ptr err;
            try {
                b->run(1);
            } catch (...) {
                err = std::current_exception();
            }
            lk.lock();
            if (err)
                error_ = err;
            else
                ++done_;
            done_cv_.notify_all();
        }
    }

    std::mutex m_;
    std::condition_variable cv_;
    std::condition_variable done_cv_;
    TableBuilder* builder_ = nullptr;
    size_t granted_ = 0;
    size_t done_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
    std::thread thread_;
};

Engine::Engine(const EngineConfig& cfg) : cfg_(cfg), graph_(cfg.n) {
    f_ = dyntw::epoch_length(std::max<int64_t>(cfg.n, 1), cfg.epoch_factor);
    half_ = f_ / 2;
    if (cfg_.mode == RecomputeMode::FullRecompute) {
        full_ = compute_tables(graph_, cfg_.k_budget);
        counters_.table_units_built += full_->units().size();
        return;
    }
    if (cfg_.mode == RecomputeMode::Background) worker_ = std::make_unique<Worker>();
    start_epoch();
}

Engine::~Engine() = default;

Phase Engine::phase() const {
    if (cfg_.mode == RecomputeMode::FullRecompute) return Phase::Serving;
    return counter_ < half_ ? Phase::Recomputing : Phase::Replaying;
}

void Engine::start_epoch() {
    auto snap = std::make_shared<const DynamicGraph>(graph_.snapshot());
    auto ntd = std::make_shared<const NiceTreeDecomposition>(build_nice_decomposition(*snap, cfg_.k_budget));
    building_ = std::make_shared<TableStore>(snap, ntd);
    builder_ = std::make_unique<TableBuilder>(building_);
    granted_ = 0;
    counter_ = 0;
    delta_.clear();
    pending_.reset();
    if (worker_) worker_->assign(builder_.get());
    if (half_ == 0) {
        grant(builder_->total());
        finish_rebuild();
    }
}

void Engine::grant(size_t units) {
    units = std::min(units, builder_->total() - granted_);
    granted_ += units;
    counters_.table_units_built += units;
    if (worker_)
        worker_->grant(units);
    else
        builder_->run(units);
}

void Engine::finish_rebuild() {
    if (worker_) worker_->wait();
    if (!builder_->finished()) throw std::logic_error("rebuild incomplete at the phase boundary");
    pending_ = std::make_unique<LiveState>(building_);
}

void Engine::handover() {
    if (!delta_.empty() || !pending_->graph().same_edges(graph_))
        throw std::logic_error("handover: replay did not catch up with the current graph");
    if (cfg_.check_handover && live_) {
        for (Property p : kAllProperties) {
            if (!(live_->skeleton_answer(p) == pending_->skeleton_answer(p)))
                throw HandoverMismatch("handover answers differ for " + std::string(property_name(p)));
        }
    }
    live_ = std::move(pending_);
    ++handovers_;
    start_epoch();
}

void Engine::apply(const EdgeChange& c) {
    graph_.apply_change(c);
    if (cfg_.mode == RecomputeMode::FullRecompute) {
        full_ = compute_tables(graph_, cfg_.k_budget);
        counters_.table_units_built += full_->units().size();
        return;
    }
    if (live_) live_->absorb(c);
    if (counter_ < half_) {
        delta_.add(c);
        const size_t remaining = builder_->total() - granted_;
        const auto steps_left = static_cast<size_t>(half_ - counter_);
        grant((remaining + steps_left - 1) / steps_left);
        if (++counter_ == half_) finish_rebuild();
    } else {
        if (!delta_.cancel(c.edge())) pending_->absorb(c);
        if (auto b = delta_.take_smallest()) pending_->absorb(*b);
        ++counter_;
    }
    if (counter_ == f_) handover();
}

Answer Engine::query(Property p) {
    if (cfg_.mode == RecomputeMode::FullRecompute) return query_static(*full_, graph_, p);
    if (live_) {
        uint64_t states = 0;
        Answer a = live_->skeleton_answer(p, &states);
        counters_.skeleton_dp_states += states;
        return a;
    }
    uint64_t units = 0;
    Answer a = bootstrap_answer(graph_, p, cfg_.k_budget, &units);
    counters_.foreground_units += units;
    counters_.table_units_built += units;
    return a;
}

void Engine::note_live_sizes() {
    if (live_) {
        counters_.special_bags = live_->special().nodes.size();
        counters_.center_size = live_->center().vertices.size();
    } else {
        counters_.special_bags = 0;
        counters_.center_size = 0;
    }
}

StepCounters Engine::take_counters() {
    note_live_sizes();
    return std::exchange(counters_, StepCounters{});
}

}  // namespace dyntw
