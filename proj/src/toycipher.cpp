#include "dronesec/toycipher.hpp"

#include <stdexcept>

#include "aes_core.hpp"

namespace dronesec::adversary {

namespace {

using cipher::detail::kSbox;

std::uint8_t round_fn(std::uint8_t x, std::uint8_t k) {
    return kSbox[static_cast<std::uint8_t>(x + k)];
}

}  // namespace

ToyCipher::ToyCipher(std::uint16_t key) {
    const auto lo = static_cast<std::uint8_t>(key);
    const auto hi = static_cast<std::uint8_t>(key >> 8);
    round_keys_ = {lo, hi, static_cast<std::uint8_t>(kSbox[lo] ^ hi),
                   static_cast<std::uint8_t>(kSbox[hi] ^ lo)};
}

std::uint16_t ToyCipher::encrypt_block(std::uint16_t block) const {
    auto left = static_cast<std::uint8_t>(block >> 8);
    auto right = static_cast<std::uint8_t>(block);
    for (const std::uint8_t rk : round_keys_) {
        const std::uint8_t next_right = left ^ round_fn(right, rk);
        left = right;
        right = next_right;
    }
    return static_cast<std::uint16_t>((left << 8) | right);
}

std::uint16_t ToyCipher::decrypt_block(std::uint16_t block) const {
    auto left = static_cast<std::uint8_t>(block >> 8);
    auto right = static_cast<std::uint8_t>(block);
    for (auto it = round_keys_.rbegin(); it != round_keys_.rend(); ++it) {
        const std::uint8_t prev_left = right ^ round_fn(left, *it);
        right = left;
        left = prev_left;
    }
    return static_cast<std::uint16_t>((left << 8) | right);
}

std::vector<std::uint16_t> kpa_key_search(std::span<const ToyPair> pairs) {
    if (pairs.empty()) throw std::invalid_argument("key search needs at least one pair");
    std::vector<std::uint16_t> candidates;
    for (std::uint32_t key = 0; key < ToyCipher::kKeySpace; ++key) {
        const ToyCipher c(static_cast<std::uint16_t>(key));
        bool consistent = true;
        for (const auto& [pt, ct] : pairs) {
            if (c.encrypt_block(pt) != ct) {
                consistent = false;
                break;
            }
        }
        if (consistent) candidates.push_back(static_cast<std::uint16_t>(key));
    }
    return candidates;
}

std::vector<std::uint16_t> coa_candidates(std::span<const std::uint16_t> ciphertexts,
                                          const std::function<bool(std::uint16_t)>& plaintext_ok) {
    std::vector<std::uint16_t> candidates;
    for (std::uint32_t key = 0; key < ToyCipher::kKeySpace; ++key) {
        const ToyCipher c(static_cast<std::uint16_t>(key));
        bool plausible = true;
        for (const std::uint16_t ct : ciphertexts) {
            if (!plaintext_ok(c.decrypt_block(ct))) {
                plausible = false;
                break;
            }
        }
        if (plausible) candidates.push_back(static_cast<std::uint16_t>(key));
    }
    return candidates;
}

std::uint16_t toy_plaintext(proto::Command cmd) {
    return static_cast<std::uint16_t>(static_cast<std::uint16_t>(cmd) << 8);
}

bool is_toy_command_plaintext(std::uint16_t block) {
    if ((block & 0xFF) != 0) return false;
    return proto::command_from_code(static_cast<std::uint8_t>(block >> 8)).has_value();
}

}  // namespace dronesec::adversary
