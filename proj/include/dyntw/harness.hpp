#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyntw/engine.hpp"
#include "dyntw/generator.hpp"
#include "dyntw/graph.hpp"
#include "dyntw/plugin.hpp"

namespace dyntw {

class ScriptError : public std::runtime_error {
public:
    ScriptError(int line, const std::string& what)
        : std::runtime_error("script line " + std::to_string(line) + ": " + what), line_no(line) {}
    int line_no;
};

struct ScriptLine {
    enum class Kind { Change, Query };
    Kind kind = Kind::Change;
    EdgeChange change;
    Property property = Property::ThreeCol;
    int line_no = 0;

    static ScriptLine of(const EdgeChange& c) { return {Kind::Change, c, Property::ThreeCol, 0}; }
    static ScriptLine query(Property p) { return {Kind::Query, {}, p, 0}; }
};

// "insert u v" | "delete u v" | "query <property>"; blank and '#' lines skipped.
std::vector<ScriptLine> parse_script(std::istream& in);
void write_script(std::ostream& out, const std::vector<ScriptLine>& script);
std::string to_string(const ScriptLine& l);

struct ScriptGenOptions {
    KTreeOptions tree;
    int mixed_steps = 0;       // changes after building the kept edges
    double delete_prob = 0.4;
    double query_prob = 0.5;   // chance of a query after each change
    uint64_t seed = 1;
};

std::vector<ScriptLine> gen_script(const ScriptGenOptions& opt);

struct RunRecord {
    int step = 0;
    ScriptLine line;
    std::optional<Answer> answer;
    Phase phase = Phase::Recomputing;
    bool serving = false;
    StepCounters counters;
};

std::string to_json_line(const RunRecord& r);

struct RunConfig {
    EngineConfig engine;
    bool verify = false;  // compare every query with the oracle
};

struct RunResult {
    std::vector<RunRecord> records;
    uint64_t handovers = 0;
    bool verified = true;
    std::string mismatch;  // first mismatch, if any
};

// Checks an engine answer against the oracle on g: equal decision, equal
// optimum, and a witness of that size that is feasible.
bool answer_matches_oracle(const DynamicGraph& g, const Answer& a, std::string* why = nullptr);

// Stops at the first oracle mismatch in verify mode. Engine errors are
// rethrown as ScriptError carrying the offending line.
RunResult run_script(const std::vector<ScriptLine>& script, const RunConfig& cfg);

struct BenchSummary {
    RecomputeMode mode = RecomputeMode::Inline;
    size_t changes = 0;
    size_t queries = 0;
    uint64_t total_units = 0;
    uint64_t foreground_units = 0;
    uint64_t serving_foreground_units = 0;  // foreground units at serving steps
    uint64_t max_units_per_change = 0;
    double mean_units_per_change = 0.0;
    double median_units_per_change = 0.0;
    uint64_t skeleton_dp_states = 0;
    size_t max_special_bags = 0;
    size_t max_center_size = 0;
    uint64_t handovers = 0;
    double seconds = 0.0;
};

BenchSummary bench(const std::vector<ScriptLine>& script, const EngineConfig& cfg);
std::string to_json_line(const BenchSummary& s);

}  // namespace dyntw
