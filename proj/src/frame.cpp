#include "dronesec/frame.hpp"

#include "dronesec/errors.hpp"

namespace dronesec::proto {

const std::array<Command, kCommandCount>& all_commands() {
    static const std::array<Command, kCommandCount> kAll = {
        Command::Up,   Command::Down,  Command::Forward, Command::Backward,
        Command::Left, Command::Right, Command::Hover,   Command::ReturnHome};
    return kAll;
}

const char* command_name(Command c) {
    switch (c) {
        case Command::Up: return "up";
        case Command::Down: return "down";
        case Command::Forward: return "forward";
        case Command::Backward: return "backward";
        case Command::Left: return "left";
        case Command::Right: return "right";
        case Command::Hover: return "hover";
        case Command::ReturnHome: return "return_home";
    }
    return "?";
}

std::optional<Command> command_from_name(std::string_view name) {
    for (Command c : all_commands()) {
        if (name == command_name(c)) return c;
    }
    return std::nullopt;
}

std::optional<Command> command_from_code(std::uint8_t code) {
    if (code >= 0x01 && code <= 0x08) return static_cast<Command>(code);
    return std::nullopt;
}

const char* protocol_name(ProtocolKind p) {
    return p == ProtocolKind::Naive ? "naive" : "hardened";
}

std::optional<ProtocolKind> protocol_from_name(std::string_view name) {
    if (name == "naive") return ProtocolKind::Naive;
    if (name == "hardened") return ProtocolKind::Hardened;
    return std::nullopt;
}

namespace {

constexpr std::size_t kNaiveHeader = 5;                 // version protocol segment len
constexpr std::size_t kHardenedOverhead = 5 + 4 + 12 + 16;

void check_shape(const Frame& f) {
    if (f.body.size() > 0xFFFF) throw InvalidLength("frame body exceeds 65535 bytes");
    if (f.protocol == ProtocolKind::Naive) {
        if (f.seq || f.nonce || f.tag) {
            throw ModeMismatch("naive frames carry no seq, nonce, or tag");
        }
    } else {
        if (!f.seq || !f.nonce || !f.tag) {
            throw ModeMismatch("hardened frames need seq, nonce, and tag");
        }
    }
}

}  // namespace

Bytes Frame::header_aad() const {
    Bytes aad;
    aad.push_back(version);
    aad.push_back(static_cast<std::uint8_t>(protocol));
    aad.push_back(static_cast<std::uint8_t>(segment));
    put_u32_be(aad, seq.value_or(0));
    return aad;
}

Bytes Frame::encode() const {
    check_shape(*this);
    Bytes out;
    out.reserve(kNaiveHeader + body.size() + (protocol == ProtocolKind::Hardened ? 32 : 0));
    out.push_back(version);
    out.push_back(static_cast<std::uint8_t>(protocol));
    out.push_back(static_cast<std::uint8_t>(segment));
    if (protocol == ProtocolKind::Hardened) {
        put_u32_be(out, *seq);
        out.insert(out.end(), nonce->begin(), nonce->end());
    }
    put_u16_be(out, static_cast<std::uint16_t>(body.size()));
    out.insert(out.end(), body.begin(), body.end());
    if (protocol == ProtocolKind::Hardened) {
        out.insert(out.end(), tag->begin(), tag->end());
    }
    return out;
}

Frame Frame::decode(std::span<const std::uint8_t> wire) {
    if (wire.size() < kNaiveHeader) throw DecodeError("frame shorter than minimal header");
    Frame f;
    f.version = wire[0];
    if (f.version != kFrameVersion) throw DecodeError("unsupported frame version");
    switch (wire[1]) {
        case 0x00: f.protocol = ProtocolKind::Naive; break;
        case 0x01: f.protocol = ProtocolKind::Hardened; break;
        default: throw DecodeError("unknown protocol code");
    }
    switch (wire[2]) {
        case 0x01: f.segment = model::SegmentId::S1_PlannerRelay; break;
        case 0x02: f.segment = model::SegmentId::S2_RelayVehicle; break;
        case 0x03: f.segment = model::SegmentId::S3_ControllerVehicle; break;
        default: throw DecodeError("unknown segment code");
    }

    std::size_t pos = 3;
    if (f.protocol == ProtocolKind::Hardened) {
        if (wire.size() < kHardenedOverhead) throw DecodeError("hardened frame truncated");
        f.seq = get_u32_be(wire.subspan(pos, 4));
        pos += 4;
        f.nonce = to_array<12>(wire.subspan(pos, 12));
        pos += 12;
    }
    const std::uint16_t len = get_u16_be(wire.subspan(pos, 2));
    pos += 2;
    const std::size_t expect =
        pos + len + (f.protocol == ProtocolKind::Hardened ? 16 : 0);
    if (wire.size() != expect) throw DecodeError("frame length does not match payload_len");
    f.body.assign(wire.begin() + static_cast<std::ptrdiff_t>(pos),
                  wire.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
    if (f.protocol == ProtocolKind::Hardened) {
        f.tag = to_array<16>(wire.subspan(pos, 16));
    }
    return f;
}

}  // namespace dronesec::proto
