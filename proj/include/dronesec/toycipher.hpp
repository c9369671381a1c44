#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "dronesec/frame.hpp"

namespace dronesec::adversary {

/// Deliberately breakable 4-round Feistel cipher over 16-bit blocks with a
/// 16-bit key, small enough that the whole key space enumerates in
/// milliseconds. The exact construction is documented in docs/toy-cipher.md.
class ToyCipher {
public:
    static constexpr std::uint32_t kKeySpace = 1u << 16;

    explicit ToyCipher(std::uint16_t key);

    std::uint16_t encrypt_block(std::uint16_t block) const;
    std::uint16_t decrypt_block(std::uint16_t block) const;

private:
    std::array<std::uint8_t, 4> round_keys_;
};

using ToyPair = std::pair<std::uint16_t, std::uint16_t>;  // (plaintext, ciphertext)

/// Exhaustive known-plaintext key search: every key consistent with all pairs,
/// ascending. The true key is always in the result. pairs must be non-empty.
std::vector<std::uint16_t> kpa_key_search(std::span<const ToyPair> pairs);

/// Ciphertext-only search: keys whose decryptions of every ciphertext satisfy
/// the plaintext-format predicate. A known-plaintext constraint is strictly
/// stronger, so on the same traffic the KPA result is a subset of this one.
std::vector<std::uint16_t> coa_candidates(std::span<const std::uint16_t> ciphertexts,
                                          const std::function<bool(std::uint16_t)>& plaintext_ok);

/// Command encoding at toy-block scale: code byte in the high byte, zero pad.
std::uint16_t toy_plaintext(proto::Command cmd);

/// Predicate matching exactly the toy_plaintext encodings.
bool is_toy_command_plaintext(std::uint16_t block);

}  // namespace dronesec::adversary
