#pragma once

#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "dyntw/graph.hpp"
#include "dyntw/plugin.hpp"
#include "dyntw/skeleton.hpp"
#include "dyntw/tables.hpp"

namespace dyntw {

// max(1, ⌈c·log2 n⌉)
int epoch_length(int64_t n, double c_factor);

// Net edge changes since a snapshot. Opposite changes of one edge cancel.
class DeltaBuffer {
public:
    void add(const EdgeChange& c);
    bool contains(const Edge& e) const { return inserts_.count(e) || deletes_.count(e); }
    bool cancel(const Edge& e);  // drops e from either side; false if absent
    // Removes and returns the change on the smallest buffered edge.
    std::optional<EdgeChange> take_smallest();
    size_t size() const { return inserts_.size() + deletes_.size(); }
    bool empty() const { return size() == 0; }
    void clear();
    const std::set<Edge>& inserts() const { return inserts_; }
    const std::set<Edge>& deletes() const { return deletes_; }

private:
    std::set<Edge> inserts_;
    std::set<Edge> deletes_;
};

enum class Phase { Recomputing, Replaying, Serving };
enum class RecomputeMode { Inline, Background, FullRecompute };

std::string_view phase_name(Phase p);
std::string_view mode_name(RecomputeMode m);
RecomputeMode parse_mode(std::string_view s);

struct EngineConfig {
    int32_t n = 0;
    int k_budget = 4;
    double epoch_factor = 1.0;
    RecomputeMode mode = RecomputeMode::Inline;
    // Compare outgoing and incoming answers at every handover (slow).
    bool check_handover = false;
};

struct StepCounters {
    uint64_t table_units_built = 0;  // rebuild units completed (sliced work)
    uint64_t foreground_units = 0;   // units computed to answer directly
    size_t special_bags = 0;
    size_t center_size = 0;
    uint64_t skeleton_dp_states = 0;
};

class HandoverMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Full decompose -> tables -> query on g, building only p's tables.
Answer bootstrap_answer(const DynamicGraph& g, Property p, int width_budget, uint64_t* units = nullptr);

class Engine {
public:
    explicit Engine(const EngineConfig& cfg);
    ~Engine();
    Engine(const Engine&) = delete;
    Engine& operator=(const Engine&) = delete;

    void apply(const EdgeChange& c);
    Answer query(Property p);

    const EngineConfig& config() const { return cfg_; }
    const DynamicGraph& graph() const { return graph_; }
    int epoch_length() const { return f_; }
    int counter() const { return counter_; }
    // Phase of the epoch's rebuild; Serving only in FullRecompute mode.
    Phase phase() const;
    // True once tables from a finished epoch answer queries.
    bool serving() const { return live_ != nullptr; }
    uint64_t handovers() const { return handovers_; }
    const DeltaBuffer& delta() const { return delta_; }
    const LiveState* live() const { return live_.get(); }
    const LiveState* pending() const { return pending_.get(); }

    // Counters accumulated since the previous call.
    StepCounters take_counters();

private:
    class Worker;

    void start_epoch();
    void handover();
    void grant(size_t units);
    void finish_rebuild();
    void note_live_sizes();

    EngineConfig cfg_;
    DynamicGraph graph_;
    int f_ = 1;
    int half_ = 0;
    int counter_ = 0;
    uint64_t handovers_ = 0;
    DeltaBuffer delta_;
    std::shared_ptr<TableStore> building_;
    std::unique_ptr<TableBuilder> builder_;
    size_t granted_ = 0;
    std::unique_ptr<LiveState> pending_;
    std::unique_ptr<LiveState> live_;
    std::shared_ptr<TableStore> full_;  // FullRecompute mode
    std::unique_ptr<Worker> worker_;
    StepCounters counters_;
};

}  // namespace dyntw
