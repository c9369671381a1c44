#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dronesec/adversary.hpp"
#include "dronesec/proto.hpp"

namespace dronesec::sim {

/// Command source for a run: empty weights means uniform over the command set;
/// otherwise one non-negative weight per command, not all zero.
struct TrafficSpec {
    std::vector<double> weights;
    std::uint64_t ticks = 0;

    bool operator==(const TrafficSpec&) const = default;
};

struct AdversaryPlan {
    enum class Kind { PassiveOnly, ReplayAfter, CodebookThenPredict };

    Kind kind = Kind::PassiveOnly;
    std::uint64_t captures_before = 0;  // ReplayAfter: captures collected before injecting starts
    std::uint64_t injections = 0;       // ReplayAfter: total injection budget

    bool operator==(const AdversaryPlan&) const = default;
};

const char* plan_name(AdversaryPlan::Kind k);
std::optional<AdversaryPlan::Kind> plan_from_name(std::string_view name);

/// A fully pinned experiment. Identical scenarios produce bit-identical
/// transcripts and metrics.
struct Scenario {
    std::string name;
    model::SystemTopology topology;
    std::map<model::SegmentId, proto::ProtocolKind> protocols;
    model::SegmentId segment = model::SegmentId::S3_ControllerVehicle;  // link under test
    TrafficSpec traffic;
    AdversaryPlan plan;
    std::uint64_t seed = 1;

    bool operator==(const Scenario&) const = default;
};

struct Metrics {
    std::uint64_t frames_sent = 0;
    std::uint64_t frames_accepted = 0;
    std::uint64_t replays_attempted = 0;
    std::uint64_t replays_executed = 0;
    std::optional<double> replay_success_rate;           // absent when no attempts
    std::optional<std::uint64_t> codebook_completion_tick;
    std::optional<double> prediction_accuracy;
    std::map<std::string, std::uint64_t> rejection_histogram;

    bool operator==(const Metrics&) const = default;
};

/// Line-delimited event log; serialize() is the canonical byte form used for
/// files and determinism checks. Record grammar is described in
/// docs/file-formats.md.
struct Transcript {
    std::vector<std::string> lines;

    std::string serialize() const;

    bool operator==(const Transcript&) const = default;
};

struct RunResult {
    Transcript transcript;
    Metrics metrics;
};

/// Single-threaded deterministic run over one logical clock. Throws
/// ConfigError for inconsistent scenarios (e.g. hardened protocol over a
/// non-authenticated cipher).
RunResult run(const Scenario& scenario);

struct MetricStat {
    double mean = 0;
    double stddev = 0;        // sample stddev, 0 for a single value
    std::uint64_t count = 0;  // runs in which the metric was present

    bool operator==(const MetricStat&) const = default;
};

struct BatchStats {
    std::uint64_t repetitions = 0;
    std::map<std::string, MetricStat> stats;

    bool operator==(const BatchStats&) const = default;
};

/// Repeats the scenario with derived seeds (seed_i = base xor i) and
/// aggregates the numeric metrics.
BatchStats run_batch(const Scenario& scenario, std::uint64_t repetitions);

/// Built-in scenario presets: "fig2" (deterministic cipher, no freshness),
/// "fig3" (one plaintext segment), "fig4" (authenticated + sequence numbers
/// everywhere). Full scenario names are accepted as aliases.
Scenario preset(std::string_view name);  // throws ConfigError for unknown names

}  // namespace dronesec::sim
