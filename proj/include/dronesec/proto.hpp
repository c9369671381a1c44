#pragma once

#include <cstdint>
#include <variant>

#include "dronesec/cipher.hpp"
#include "dronesec/frame.hpp"
#include "dronesec/rng.hpp"

namespace dronesec::proto {

/// Anti-replay receive window: highest accepted sequence number plus a 64-bit
/// bitmap of recently seen numbers below it (SRTP-style). A sequence number is
/// accepted at most once; anything at or below highest-64 is rejected as too
/// old even if it was never seen.
class ReplayWindow {
public:
    static constexpr std::uint32_t kWindowBits = 64;

    enum class Check { Accept, Duplicate, TooOld };

    /// Classifies seq without touching state. seq must be >= 1.
    Check check(std::uint32_t seq) const;

    /// check() plus the state update when the answer is Accept.
    Check check_and_update(std::uint32_t seq);

    std::uint32_t highest_seq() const { return highest_; }
    std::uint64_t window_mask() const { return mask_; }

    bool operator==(const ReplayWindow&) const = default;

private:
    std::uint32_t highest_ = 0;
    std::uint64_t mask_ = 0;  // bit i set => (highest_ - i) was accepted
};

const char* window_check_name(ReplayWindow::Check c);

enum class RejectReason { AuthFailure, ReplayDuplicate, ReplayTooOld };

const char* reject_reason_name(RejectReason r);

/// A refused hardened frame. Rejection is an ordinary return value; receiver
/// state is untouched by a rejected delivery.
struct Rejection {
    RejectReason reason;
    bool operator==(const Rejection&) const = default;
};

using ReceiveResult = std::variant<Command, Rejection>;

/// One side of a wireless segment. Single-owner mutable state: the sender side
/// advances send_seq, the receiver side owns the anti-replay window.
class LinkEndpoint {
public:
    /// Hardened protocol requires an authenticated mode (GCM); anything else
    /// throws ConfigError.
    LinkEndpoint(cipher::CipherConfig cfg, ProtocolKind protocol, model::SegmentId segment);

    /// Encrypts one command (code byte zero-padded to a 16-byte block) with no
    /// freshness material in the framing. Under a deterministic config the map
    /// command -> frame bytes is fixed.
    Frame naive_send(Command cmd, Rng& rng);

    /// Decrypts and decodes with no freshness check: any well-formed frame is
    /// accepted, including a replayed one.
    Command naive_receive(const Frame& frame);

    /// Sequence-numbered AEAD send. Throws SeqExhausted once the 32-bit
    /// counter is spent.
    Frame hardened_send(Command cmd, Rng& rng);

    /// Tag check first (seq bound in via associated data), then the window
    /// check; accepted frames mark their seq as seen.
    ReceiveResult hardened_receive(const Frame& frame);

    const cipher::CipherConfig& config() const { return cfg_; }
    ProtocolKind protocol() const { return protocol_; }
    model::SegmentId segment() const { return segment_; }
    std::uint32_t send_seq() const { return send_seq_; }
    void set_send_seq(std::uint32_t v) { send_seq_ = v; }
    const ReplayWindow& window() const { return window_; }

private:
    cipher::CipherConfig cfg_;
    ProtocolKind protocol_;
    model::SegmentId segment_;
    std::uint32_t send_seq_ = 0;   // last sequence number sent; first frame carries 1
    std::uint64_t msg_count_ = 0;  // feeds CounterPerMessage nonce derivation
    ReplayWindow window_;
};

/// Serializes a ciphertext into the naive frame body: nonce/IV, then the
/// encrypted bytes, then the tag, each present only when the mode uses it.
Bytes pack_ciphertext(const cipher::Ciphertext& ct);
cipher::Ciphertext unpack_ciphertext(cipher::CipherMode mode, std::span<const std::uint8_t> body);

/// The 16-byte plaintext block for a command: code byte then zeros.
std::array<std::uint8_t, 16> command_block(Command cmd);
Command decode_command_block(std::span<const std::uint8_t> block);  // throws DecodeError

}  // namespace dronesec::proto
