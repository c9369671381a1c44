#include "dronesec/sim.hpp"

#include <cmath>
#include <sstream>

#include "dronesec/errors.hpp"

namespace dronesec::sim {

namespace {

using proto::Command;

Command sample_command(const TrafficSpec& traffic, Rng& rng) {
    const auto& commands = proto::all_commands();
    if (traffic.weights.empty()) {
        return commands[rng.below(commands.size())];
    }
    if (traffic.weights.size() != commands.size()) {
        throw ConfigError("traffic weights must list one weight per command");
    }
    double total = 0;
    for (const double w : traffic.weights) {
        if (w < 0) throw ConfigError("traffic weights must be non-negative");
        total += w;
    }
    if (total <= 0) throw ConfigError("traffic weights must not all be zero");
    double u = rng.uniform() * total;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        u -= traffic.weights[i];
        if (u < 0) return commands[i];
    }
    return commands.back();
}

std::string reason_label(const adversary::AttackOutcome& outcome) {
    return adversary::failure_reason_name(*outcome.reason);
}

}  // namespace

const char* plan_name(AdversaryPlan::Kind k) {
    switch (k) {
        case AdversaryPlan::Kind::PassiveOnly: return "passive_only";
        case AdversaryPlan::Kind::ReplayAfter: return "replay_after";
        case AdversaryPlan::Kind::CodebookThenPredict: return "codebook_then_predict";
    }
    return "?";
}

std::optional<AdversaryPlan::Kind> plan_from_name(std::string_view name) {
    for (auto k : {AdversaryPlan::Kind::PassiveOnly, AdversaryPlan::Kind::ReplayAfter,
                   AdversaryPlan::Kind::CodebookThenPredict}) {
        if (name == plan_name(k)) return k;
    }
    return std::nullopt;
}

std::string Transcript::serialize() const {
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

namespace {

// Transcript assembly is skipped for batch aggregation (run_batch discards
// transcripts); the rng draw order is identical either way.
RunResult run_impl(const Scenario& scenario, bool keep_transcript) {
    scenario.topology.validate();
    const auto* seg = scenario.topology.segment(scenario.segment);
    if (!seg) throw ConfigError("scenario segment is not part of the topology");
    const auto proto_it = scenario.protocols.find(scenario.segment);
    if (proto_it == scenario.protocols.end()) {
        throw ConfigError("no protocol declared for the scenario segment");
    }
    const proto::ProtocolKind protocol = proto_it->second;

    // LinkEndpoint rejects hardened-over-unauthenticated configurations.
    proto::LinkEndpoint sender(seg->crypto_tx, protocol, scenario.segment);
    proto::LinkEndpoint receiver(seg->crypto_tx, protocol, scenario.segment);

    Rng rng(scenario.seed);
    adversary::AdversaryState spy;
    RunResult result;
    Metrics& m = result.metrics;
    auto& lines = result.transcript.lines;
    if (keep_transcript) lines.reserve(scenario.traffic.ticks * 2);

    std::uint64_t injections_done = 0;
    std::uint64_t predictions_total = 0, predictions_correct = 0;
    std::uint64_t post_total = 0, post_correct = 0;

    for (std::uint64_t tick = 1; tick <= scenario.traffic.ticks; ++tick) {
        const Command cmd = sample_command(scenario.traffic, rng);
        const proto::Frame frame = (protocol == proto::ProtocolKind::Hardened)
                                       ? sender.hardened_send(cmd, rng)
                                       : sender.naive_send(cmd, rng);
        const Bytes wire = frame.encode();
        ++m.frames_sent;
        if (keep_transcript) {
            std::string line = "S " + std::to_string(tick) + ' ';
            line += model::segment_name(scenario.segment);
            line += ' ';
            line += proto::command_name(cmd);
            line += ' ';
            line += to_hex(wire);
            lines.push_back(std::move(line));
        }

        // Deliver the legitimate frame.
        std::optional<Command> executed;
        if (protocol == proto::ProtocolKind::Hardened) {
            const auto res = receiver.hardened_receive(frame);
            if (const auto* rej = std::get_if<proto::Rejection>(&res)) {
                ++m.rejection_histogram[proto::reject_reason_name(rej->reason)];
                if (keep_transcript) {
                    lines.push_back("D " + std::to_string(tick) + " rej " +
                                    proto::reject_reason_name(rej->reason));
                }
            } else {
                executed = std::get<Command>(res);
            }
        } else {
            executed = receiver.naive_receive(frame);
        }
        if (executed) {
            ++m.frames_accepted;
            if (keep_transcript) {
                lines.push_back("D " + std::to_string(tick) + " ok " +
                                proto::command_name(*executed));
            }
        }

        // The eavesdropper watches every frame and the movement it caused.
        if (executed) {
            const bool was_complete = spy.codebook_complete();
            if (scenario.plan.kind == AdversaryPlan::Kind::CodebookThenPredict) {
                const auto guess = spy.predict(wire);
                const bool correct = guess && *guess == *executed;
                ++predictions_total;
                predictions_correct += correct ? 1 : 0;
                if (was_complete) {
                    ++post_total;
                    post_correct += correct ? 1 : 0;
                }
                if (keep_transcript) {
                    lines.push_back("P " + std::to_string(tick) + ' ' +
                                    (guess ? proto::command_name(*guess) : std::string("-")) +
                                    ' ' + proto::command_name(*executed));
                }
            }
            spy.observe({tick, wire, *executed});
            if (!was_complete && spy.codebook_complete() && !m.codebook_completion_tick) {
                m.codebook_completion_tick = tick;
                if (keep_transcript) lines.push_back("C " + std::to_string(tick));
            }
        }

        // Active phase: re-inject the most recent capture. Replaying the
        // newest frame keeps a duplicate inside the receiver's window reach,
        // which is the strongest position an attacker can take.
        if (scenario.plan.kind == AdversaryPlan::Kind::ReplayAfter &&
            spy.captures().size() >= scenario.plan.captures_before &&
            injections_done < scenario.plan.injections && !spy.captures().empty()) {
            const std::size_t pick = spy.captures().size() - 1;
            const auto outcome = spy.replay(receiver, pick);
            ++m.replays_attempted;
            ++injections_done;
            if (outcome.executed) {
                ++m.replays_executed;
                ++m.frames_accepted;
                if (keep_transcript) {
                    lines.push_back("I " + std::to_string(tick) + ' ' + std::to_string(pick) +
                                    " ok " + proto::command_name(*outcome.command));
                }
            } else {
                ++m.rejection_histogram[reason_label(outcome)];
                if (keep_transcript) {
                    lines.push_back("I " + std::to_string(tick) + ' ' + std::to_string(pick) +
                                    " rej " + reason_label(outcome));
                }
            }
        }
    }

    if (m.replays_attempted > 0) {
        m.replay_success_rate =
            static_cast<double>(m.replays_executed) / static_cast<double>(m.replays_attempted);
    }
    if (scenario.plan.kind == AdversaryPlan::Kind::CodebookThenPredict) {
        // Accuracy counts post-completion predictions when the codebook ever
        // completed, otherwise every prediction made (unknown = wrong).
        if (m.codebook_completion_tick) {
            if (post_total > 0) {
                m.prediction_accuracy =
                    static_cast<double>(post_correct) / static_cast<double>(post_total);
            }
        } else if (predictions_total > 0) {
            m.prediction_accuracy =
                static_cast<double>(predictions_correct) / static_cast<double>(predictions_total);
        }
    }
    return result;
}

}  // namespace

RunResult run(const Scenario& scenario) { return run_impl(scenario, true); }

BatchStats run_batch(const Scenario& scenario, std::uint64_t repetitions) {
    if (repetitions < 1) throw ConfigError("batch needs at least one repetition");

    std::map<std::string, std::vector<double>> samples;
    for (std::uint64_t i = 0; i < repetitions; ++i) {
        Scenario derived = scenario;
        derived.seed = scenario.seed ^ i;
        const Metrics m = run_impl(derived, false).metrics;
        samples["frames_sent"].push_back(static_cast<double>(m.frames_sent));
        samples["frames_accepted"].push_back(static_cast<double>(m.frames_accepted));
        samples["replays_attempted"].push_back(static_cast<double>(m.replays_attempted));
        samples["replays_executed"].push_back(static_cast<double>(m.replays_executed));
        if (m.replay_success_rate) samples["replay_success_rate"].push_back(*m.replay_success_rate);
        if (m.codebook_completion_tick) {
            samples["codebook_completion_tick"].push_back(
                static_cast<double>(*m.codebook_completion_tick));
        }
        if (m.prediction_accuracy) samples["prediction_accuracy"].push_back(*m.prediction_accuracy);
    }

    BatchStats out;
    out.repetitions = repetitions;
    for (const auto& [name, values] : samples) {
        MetricStat stat;
        stat.count = values.size();
        double sum = 0;
        for (const double v : values) sum += v;
        stat.mean = sum / static_cast<double>(values.size());
        if (values.size() > 1) {
            double sq = 0;
            for (const double v : values) sq += (v - stat.mean) * (v - stat.mean);
            stat.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
        }
        out.stats.emplace(name, stat);
    }
    return out;
}

namespace {

cipher::Key preset_key(std::uint8_t base) {
    cipher::Key key{};
    for (std::size_t i = 0; i < key.size(); ++i) {
        key[i] = static_cast<std::uint8_t>(base + i);
    }
    return key;
}

void assign_crypto(model::SystemTopology& topo, model::SegmentId id, cipher::CipherMode mode,
                   bool certified, std::uint8_t key_base) {
    auto* seg = topo.segment(id);
    cipher::CipherConfig cfg;
    cfg.mode = mode;
    if (mode != cipher::CipherMode::None) cfg.key = preset_key(key_base);
    cfg.nonce_policy = cipher::NoncePolicy::RandomPerMessage;
    cfg.kcmvp_certified = certified;
    seg->crypto_tx = cfg;
    seg->crypto_rx = cfg;
}

}  // namespace

Scenario preset(std::string_view name) {
    using model::SegmentId;
    using proto::ProtocolKind;

    Scenario s;
    s.topology = model::default_topology();
    s.segment = SegmentId::S3_ControllerVehicle;
    s.traffic.ticks = 1000;
    s.plan = {AdversaryPlan::Kind::ReplayAfter, 10, 100};
    s.seed = 7;

    if (name == "fig2" || name == "fig2-ecb-naive") {
        // Certified module everywhere, but a deterministic mode and no
        // freshness in the protocol.
        s.name = "fig2-ecb-naive";
        for (auto id : {SegmentId::S1_PlannerRelay, SegmentId::S2_RelayVehicle,
                        SegmentId::S3_ControllerVehicle}) {
            assign_crypto(s.topology, id, cipher::CipherMode::ECB, true,
                          static_cast<std::uint8_t>(static_cast<int>(id) * 0x10));
            s.protocols[id] = ProtocolKind::Naive;
        }
    } else if (name == "fig3" || name == "fig3-coverage-gap") {
        // Crypto module only on the relay path; the controller link radiates
        // plaintext.
        s.name = "fig3-coverage-gap";
        assign_crypto(s.topology, SegmentId::S1_PlannerRelay, cipher::CipherMode::GCM, true, 0x10);
        assign_crypto(s.topology, SegmentId::S2_RelayVehicle, cipher::CipherMode::GCM, true, 0x20);
        assign_crypto(s.topology, SegmentId::S3_ControllerVehicle, cipher::CipherMode::None, false,
                      0x30);
        s.protocols[SegmentId::S1_PlannerRelay] = ProtocolKind::Hardened;
        s.protocols[SegmentId::S2_RelayVehicle] = ProtocolKind::Hardened;
        s.protocols[SegmentId::S3_ControllerVehicle] = ProtocolKind::Naive;
    } else if (name == "fig4" || name == "fig4-hardened") {
        s.name = "fig4-hardened";
        for (auto id : {SegmentId::S1_PlannerRelay, SegmentId::S2_RelayVehicle,
                        SegmentId::S3_ControllerVehicle}) {
            assign_crypto(s.topology, id, cipher::CipherMode::GCM, true,
                          static_cast<std::uint8_t>(static_cast<int>(id) * 0x10));
            s.protocols[id] = ProtocolKind::Hardened;
        }
    } else {
        throw ConfigError("unknown preset: " + std::string(name));
    }
    return s;
}

}  // namespace dronesec::sim
