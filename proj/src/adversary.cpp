#include "dronesec/adversary.hpp"

#include <sstream>

#include "dronesec/errors.hpp"

namespace dronesec::adversary {

const char* failure_reason_name(FailureReason r) {
    switch (r) {
        case FailureReason::AuthFailure: return "auth_failure";
        case FailureReason::ReplayDuplicate: return "replay_duplicate";
        case FailureReason::ReplayTooOld: return "replay_too_old";
        case FailureReason::DecodeError: return "decode_error";
    }
    return "?";
}

void AdversaryState::observe(const Observation& obs) {
    const auto it = codebook_.find(obs.frame_bytes);
    if (it != codebook_.end() && it->second != obs.movement) {
        throw InconsistentObservation(
            "frame bytes already mapped to a different command; link is not deterministic");
    }
    captures_.push_back(obs);
    codebook_.emplace(obs.frame_bytes, obs.movement);
    commands_seen_ |= 1u << (static_cast<unsigned>(obs.movement) - 1);
}

std::optional<proto::Command> AdversaryState::predict(const Bytes& frame_bytes) const {
    const auto it = codebook_.find(frame_bytes);
    if (it == codebook_.end()) return std::nullopt;
    return it->second;
}

AttackOutcome AdversaryState::replay(proto::LinkEndpoint& target, std::size_t pick) const {
    if (pick >= captures_.size()) throw std::out_of_range("capture index out of range");
    const Bytes& wire = captures_[pick].frame_bytes;
    try {
        const proto::Frame frame = proto::Frame::decode(wire);
        if (target.protocol() == proto::ProtocolKind::Hardened) {
            const auto result = target.hardened_receive(frame);
            if (const auto* rej = std::get_if<proto::Rejection>(&result)) {
                switch (rej->reason) {
                    case proto::RejectReason::AuthFailure:
                        return {false, std::nullopt, FailureReason::AuthFailure};
                    case proto::RejectReason::ReplayDuplicate:
                        return {false, std::nullopt, FailureReason::ReplayDuplicate};
                    case proto::RejectReason::ReplayTooOld:
                        return {false, std::nullopt, FailureReason::ReplayTooOld};
                }
            }
            return {true, std::get<proto::Command>(result), std::nullopt};
        }
        return {true, target.naive_receive(frame), std::nullopt};
    } catch (const AuthFailure&) {
        return {false, std::nullopt, FailureReason::AuthFailure};
    } catch (const Error&) {
        // decode, padding, length, and mode failures all count as a failed attack
        return {false, std::nullopt, FailureReason::DecodeError};
    }
}

std::string AdversaryState::export_captures() const {
    std::ostringstream out;
    for (const auto& obs : captures_) {
        out << obs.tick << ' ' << to_hex(obs.frame_bytes) << ' ' << proto::command_name(obs.movement)
            << '\n';
    }
    return out.str();
}

std::vector<Observation> AdversaryState::parse_captures(std::string_view text) {
    std::vector<Observation> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        Observation obs;
        std::string hex, name;
        if (!(fields >> obs.tick >> hex >> name)) throw DecodeError("malformed capture line");
        obs.frame_bytes = from_hex(hex);
        const auto cmd = proto::command_from_name(name);
        if (!cmd) throw DecodeError("unknown movement label: " + name);
        obs.movement = *cmd;
        out.push_back(std::move(obs));
    }
    return out;
}

}  // namespace dronesec::adversary
