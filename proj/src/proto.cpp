#include "dronesec/proto.hpp"

#include <limits>

#include "dronesec/errors.hpp"

namespace dronesec::proto {

ReplayWindow::Check ReplayWindow::check(std::uint32_t seq) const {
    if (seq == 0) throw std::invalid_argument("sequence numbers start at 1");
    if (seq > highest_) return Check::Accept;
    const std::uint32_t age = highest_ - seq;
    if (age >= kWindowBits) return Check::TooOld;
    return ((mask_ >> age) & 1) ? Check::Duplicate : Check::Accept;
}

ReplayWindow::Check ReplayWindow::check_and_update(std::uint32_t seq) {
    const Check result = check(seq);
    if (result != Check::Accept) return result;
    if (seq > highest_) {
        const std::uint32_t shift = seq - highest_;
        mask_ = (shift >= kWindowBits) ? 0 : (mask_ << shift);
        mask_ |= 1;
        highest_ = seq;
    } else {
        mask_ |= (std::uint64_t{1} << (highest_ - seq));
    }
    return Check::Accept;
}

const char* window_check_name(ReplayWindow::Check c) {
    switch (c) {
        case ReplayWindow::Check::Accept: return "accept";
        case ReplayWindow::Check::Duplicate: return "duplicate";
        case ReplayWindow::Check::TooOld: return "too_old";
    }
    return "?";
}

const char* reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::AuthFailure: return "auth_failure";
        case RejectReason::ReplayDuplicate: return "replay_duplicate";
        case RejectReason::ReplayTooOld: return "replay_too_old";
    }
    return "?";
}

std::array<std::uint8_t, 16> command_block(Command cmd) {
    std::array<std::uint8_t, 16> block{};
    block[0] = static_cast<std::uint8_t>(cmd);
    return block;
}

Command decode_command_block(std::span<const std::uint8_t> block) {
    if (block.size() != 16) throw DecodeError("command block must be 16 bytes");
    const auto cmd = command_from_code(block[0]);
    if (!cmd) throw DecodeError("unknown command code");
    for (std::size_t i = 1; i < 16; ++i) {
        if (block[i] != 0) throw DecodeError("nonzero command padding");
    }
    return *cmd;
}

Bytes pack_ciphertext(const cipher::Ciphertext& ct) {
    Bytes out;
    if (ct.nonce_or_iv) out.insert(out.end(), ct.nonce_or_iv->begin(), ct.nonce_or_iv->end());
    out.insert(out.end(), ct.body.begin(), ct.body.end());
    if (ct.tag) out.insert(out.end(), ct.tag->begin(), ct.tag->end());
    return out;
}

cipher::Ciphertext unpack_ciphertext(cipher::CipherMode mode, std::span<const std::uint8_t> body) {
    using cipher::CipherMode;
    cipher::Ciphertext ct;
    std::size_t iv_len = 0, tag_len = 0;
    switch (mode) {
        case CipherMode::None:
        case CipherMode::ECB: break;
        case CipherMode::CBC: iv_len = 16; break;
        case CipherMode::CTR: iv_len = 12; break;
        case CipherMode::GCM: iv_len = 12; tag_len = 16; break;
    }
    if (body.size() < iv_len + tag_len + 1) throw DecodeError("body too short for cipher mode");
    if (iv_len > 0) ct.nonce_or_iv = Bytes(body.begin(), body.begin() + static_cast<std::ptrdiff_t>(iv_len));
    ct.body.assign(body.begin() + static_cast<std::ptrdiff_t>(iv_len),
                   body.end() - static_cast<std::ptrdiff_t>(tag_len));
    if (tag_len > 0) ct.tag = to_array<16>(body.subspan(body.size() - 16));
    return ct;
}

LinkEndpoint::LinkEndpoint(cipher::CipherConfig cfg, ProtocolKind protocol,
                           model::SegmentId segment)
    : cfg_(cfg), protocol_(protocol), segment_(segment) {
    if (protocol_ == ProtocolKind::Hardened && cfg_.mode != cipher::CipherMode::GCM) {
        throw ConfigError("hardened protocol requires an authenticated mode (GCM)");
    }
}

Frame LinkEndpoint::naive_send(Command cmd, Rng& rng) {
    if (protocol_ != ProtocolKind::Naive) throw ModeMismatch("endpoint is not naive");
    const auto block = command_block(cmd);
    const auto ct = cipher::encrypt(cfg_, block, rng, msg_count_++);
    Frame f;
    f.protocol = ProtocolKind::Naive;
    f.segment = segment_;
    f.body = pack_ciphertext(ct);
    return f;
}

Command LinkEndpoint::naive_receive(const Frame& frame) {
    if (frame.protocol != ProtocolKind::Naive) throw ModeMismatch("frame is not naive");
    const auto ct = unpack_ciphertext(cfg_.mode, frame.body);
    const Bytes plain = cipher::decrypt(cfg_, ct);
    return decode_command_block(plain);
}

Frame LinkEndpoint::hardened_send(Command cmd, Rng& rng) {
    if (protocol_ != ProtocolKind::Hardened) throw ModeMismatch("endpoint is not hardened");
    if (send_seq_ == std::numeric_limits<std::uint32_t>::max()) {
        throw SeqExhausted("32-bit sequence space exhausted");
    }
    const std::uint32_t seq = ++send_seq_;

    Frame f;
    f.protocol = ProtocolKind::Hardened;
    f.segment = segment_;
    f.seq = seq;
    const auto block = command_block(cmd);
    const Bytes aad = f.header_aad();
    const auto ct = cipher::encrypt_aead(cfg_, block, aad, rng, seq);
    f.nonce = to_array<12>(*ct.nonce_or_iv);
    f.body = ct.body;
    f.tag = *ct.tag;
    return f;
}

ReceiveResult LinkEndpoint::hardened_receive(const Frame& frame) {
    if (frame.protocol != ProtocolKind::Hardened) throw ModeMismatch("frame is not hardened");
    if (!frame.seq || !frame.nonce || !frame.tag) throw DecodeError("hardened frame missing fields");

    cipher::Ciphertext ct;
    ct.body = frame.body;
    ct.nonce_or_iv = Bytes(frame.nonce->begin(), frame.nonce->end());
    ct.tag = *frame.tag;

    Bytes plain;
    try {
        plain = cipher::decrypt_aead(cfg_, ct, frame.header_aad());
    } catch (const AuthFailure&) {
        return Rejection{RejectReason::AuthFailure};
    }

    switch (window_.check(*frame.seq)) {
        case ReplayWindow::Check::Duplicate: return Rejection{RejectReason::ReplayDuplicate};
        case ReplayWindow::Check::TooOld: return Rejection{RejectReason::ReplayTooOld};
        case ReplayWindow::Check::Accept: break;
    }
    const Command cmd = decode_command_block(plain);
    window_.check_and_update(*frame.seq);
    return cmd;
}

}  // namespace dronesec::proto
