#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dronesec/proto.hpp"

namespace dronesec::adversary {

/// One tick of eavesdropping: the raw frame sniffed off the air plus the
/// movement the vehicle was seen to perform. Observation is assumed perfect:
/// the movement label is exactly the command the vehicle executed.
struct Observation {
    std::uint64_t tick = 0;
    Bytes frame_bytes;
    proto::Command movement = proto::Command::Hover;

    bool operator==(const Observation&) const = default;
};

enum class FailureReason { AuthFailure, ReplayDuplicate, ReplayTooOld, DecodeError };

const char* failure_reason_name(FailureReason r);

struct AttackOutcome {
    bool executed = false;
    std::optional<proto::Command> command;   // set when executed
    std::optional<FailureReason> reason;     // set when rejected

    bool operator==(const AttackOutcome&) const = default;
};

/// Passive capture log plus the ciphertext-to-command codebook built from it.
/// On a deterministic link the codebook converges to a perfect decoder; on a
/// randomized link it only ever accumulates stale one-off entries.
class AdversaryState {
public:
    /// Appends the capture and indexes frame_bytes -> movement. Throws
    /// InconsistentObservation if the same bytes were already mapped to a
    /// different command (the link is not deterministic; a codebook attack
    /// does not apply).
    void observe(const Observation& obs);

    /// Codebook lookup; nullopt when these bytes were never seen.
    std::optional<proto::Command> predict(const Bytes& frame_bytes) const;

    /// Re-delivers capture `pick` to the target endpoint.
    AttackOutcome replay(proto::LinkEndpoint& target, std::size_t pick) const;

    /// True once every command in the command set has a codebook entry.
    bool codebook_complete() const { return commands_seen_ == (1u << proto::kCommandCount) - 1; }

    const std::vector<Observation>& captures() const { return captures_; }
    std::size_t codebook_size() const { return codebook_.size(); }

    /// Line-delimited capture log: "tick frame_hex movement" per line.
    std::string export_captures() const;
    static std::vector<Observation> parse_captures(std::string_view text);

private:
    std::vector<Observation> captures_;
    std::map<Bytes, proto::Command> codebook_;
    unsigned commands_seen_ = 0;  // bitmask over command codes 1..8
};

}  // namespace dronesec::adversary
