#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "dronesec/bytes.hpp"
#include "dronesec/model.hpp"

namespace dronesec::proto {

/// Flight commands with fixed one-byte wire codes.
enum class Command : std::uint8_t {
    Up = 0x01,
    Down = 0x02,
    Forward = 0x03,
    Backward = 0x04,
    Left = 0x05,
    Right = 0x06,
    Hover = 0x07,
    ReturnHome = 0x08,
};

inline constexpr std::size_t kCommandCount = 8;

const std::array<Command, kCommandCount>& all_commands();
const char* command_name(Command c);
std::optional<Command> command_from_name(std::string_view name);
std::optional<Command> command_from_code(std::uint8_t code);

enum class ProtocolKind : std::uint8_t { Naive = 0x00, Hardened = 0x01 };

const char* protocol_name(ProtocolKind p);
std::optional<ProtocolKind> protocol_from_name(std::string_view name);

inline constexpr std::uint8_t kFrameVersion = 0x01;

/// Wire unit for both protocols.
///
/// Naive layout:     version(1) protocol(1) segment(1) payload_len(2,BE) body
/// Hardened layout:  version(1) protocol(1) segment(1) seq(4,BE) nonce(12)
///                   payload_len(2,BE) body tag(16)
///
/// The hardened associated data is the 7-byte prefix
/// version||protocol||segment||seq.
struct Frame {
    std::uint8_t version = kFrameVersion;
    ProtocolKind protocol = ProtocolKind::Naive;
    model::SegmentId segment = model::SegmentId::S3_ControllerVehicle;
    std::optional<std::uint32_t> seq;                       // hardened only
    std::optional<std::array<std::uint8_t, 12>> nonce;      // hardened only
    Bytes body;
    std::optional<std::array<std::uint8_t, 16>> tag;        // hardened only

    Bytes encode() const;                        // throws ModeMismatch / InvalidLength on bad shape
    static Frame decode(std::span<const std::uint8_t> wire);  // throws DecodeError

    /// Header bytes bound into the AEAD tag (hardened frames).
    Bytes header_aad() const;

    bool operator==(const Frame&) const = default;
};

}  // namespace dronesec::proto
