#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "dronesec/bytes.hpp"
#include "dronesec/rng.hpp"

namespace dronesec::cipher {

enum class CipherMode { None, ECB, CBC, CTR, GCM };

enum class NoncePolicy { RandomPerMessage, CounterPerMessage };

/// Modes that produce a fresh ciphertext for a repeated plaintext and so do
/// not hand an eavesdropper a stable ciphertext-to-command dictionary.
bool replay_safe(CipherMode mode);

const char* mode_name(CipherMode mode);
std::optional<CipherMode> mode_from_name(std::string_view name);

using Key = std::array<std::uint8_t, 16>;

struct CipherConfig {
    CipherMode mode = CipherMode::None;
    Key key{};  // unused when mode == None
    NoncePolicy nonce_policy = NoncePolicy::RandomPerMessage;
    bool kcmvp_certified = false;  // declared administrative attribute, never verified here

    bool operator==(const CipherConfig&) const = default;
};

struct Ciphertext {
    Bytes body;
    std::optional<Bytes> nonce_or_iv;                    // CBC: 16-byte IV; CTR/GCM: 12-byte nonce
    std::optional<std::array<std::uint8_t, 16>> tag;     // GCM only

    bool operator==(const Ciphertext&) const = default;
};

/// AES-128 block permutation (FIPS-197). Both arguments must be exactly
/// 16 bytes; anything else throws InvalidLength.
Bytes block_encrypt(std::span<const std::uint8_t> key, std::span<const std::uint8_t> block);
Bytes block_decrypt(std::span<const std::uint8_t> key, std::span<const std::uint8_t> block);

/// Encrypts plaintext under cfg. ECB/CBC apply PKCS#7 padding internally.
/// CBC/CTR/GCM draw the IV/nonce from rng under RandomPerMessage, or derive it
/// from msg_index under CounterPerMessage. Plaintext must be non-empty.
Ciphertext encrypt(const CipherConfig& cfg, std::span<const std::uint8_t> plaintext, Rng& rng,
                   std::uint64_t msg_index = 0);

/// GCM with associated data. Non-empty aad with any other mode is a
/// ModeMismatch.
Ciphertext encrypt_aead(const CipherConfig& cfg, std::span<const std::uint8_t> plaintext,
                        std::span<const std::uint8_t> aad, Rng& rng, std::uint64_t msg_index = 0);

/// Recovers the plaintext. GCM verifies the tag before releasing anything
/// (AuthFailure), ECB/CBC unpad (PaddingError), and a ciphertext whose shape
/// does not match cfg.mode is a ModeMismatch.
Bytes decrypt(const CipherConfig& cfg, const Ciphertext& ct);
Bytes decrypt_aead(const CipherConfig& cfg, const Ciphertext& ct, std::span<const std::uint8_t> aad);

enum class ProbeResult { Deterministic, Randomized };

/// Encrypts one fixed plaintext `trials` times (message index advancing per
/// trial) and reports Deterministic iff every ciphertext is identical. This is
/// the executable form of the "does encryption use fresh randomness" check.
/// trials must be >= 2.
ProbeResult probe_determinism(const CipherConfig& cfg, std::uint32_t trials, Rng& rng);

}  // namespace dronesec::cipher
