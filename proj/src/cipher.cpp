#include "dronesec/cipher.hpp"

#include <algorithm>
#include <cstring>

#include "aes_core.hpp"
#include "dronesec/errors.hpp"

namespace dronesec::cipher {

namespace {

using detail::Block;

Block to_block(std::span<const std::uint8_t> in) {
    Block b{};
    std::copy(in.begin(), in.end(), b.begin());
    return b;
}

Bytes pkcs7_pad(std::span<const std::uint8_t> data) {
    const std::size_t pad = 16 - (data.size() % 16);
    Bytes out(data.begin(), data.end());
    out.insert(out.end(), pad, static_cast<std::uint8_t>(pad));
    return out;
}

Bytes pkcs7_unpad(std::span<const std::uint8_t> data) {
    if (data.empty() || data.size() % 16 != 0) throw PaddingError("ciphertext is not block-aligned");
    const std::uint8_t pad = data.back();
    if (pad == 0 || pad > 16 || pad > data.size()) throw PaddingError("bad padding byte");
    for (std::size_t i = data.size() - pad; i < data.size(); ++i) {
        if (data[i] != pad) throw PaddingError("inconsistent padding");
    }
    return Bytes(data.begin(), data.end() - pad);
}

// ---- GHASH / GF(2^128) ----

struct U128 {
    std::uint64_t hi = 0, lo = 0;
    void operator^=(const U128& o) {
        hi ^= o.hi;
        lo ^= o.lo;
    }
};

U128 load_be(std::span<const std::uint8_t> b) {
    U128 x;
    for (int i = 0; i < 8; ++i) x.hi = (x.hi << 8) | b[i];
    for (int i = 8; i < 16; ++i) x.lo = (x.lo << 8) | b[i];
    return x;
}

// Carry-less multiply in GF(2^128) with the GCM reduction polynomial,
// MSB-first bit order as in SP 800-38D.
U128 gf128_mul(const U128& x, const U128& y) {
    U128 z;
    U128 v = y;
    for (int i = 0; i < 128; ++i) {
        const std::uint64_t bit = (i < 64) ? (x.hi >> (63 - i)) & 1 : (x.lo >> (127 - i)) & 1;
        if (bit) z ^= v;
        const bool lsb = v.lo & 1;
        v.lo = (v.lo >> 1) | (v.hi << 63);
        v.hi >>= 1;
        if (lsb) v.hi ^= 0xE100000000000000ull;
    }
    return z;
}

class Ghash {
public:
    explicit Ghash(const U128& h) : h_(h) {}

    void update(std::span<const std::uint8_t> data) {
        for (std::size_t off = 0; off < data.size(); off += 16) {
            Block blk{};
            const std::size_t n = std::min<std::size_t>(16, data.size() - off);
            std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(off), n, blk.begin());
            y_ ^= load_be(blk);
            y_ = gf128_mul(y_, h_);
        }
    }

    void lengths(std::uint64_t aad_bytes, std::uint64_t ct_bytes) {
        y_ ^= U128{aad_bytes * 8, ct_bytes * 8};
        y_ = gf128_mul(y_, h_);
    }

    Block digest() const {
        Block out{};
        for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(y_.hi >> (8 * (7 - i)));
        for (int i = 0; i < 8; ++i) out[8 + i] = static_cast<std::uint8_t>(y_.lo >> (8 * (7 - i)));
        return out;
    }

private:
    U128 h_;
    U128 y_{};
};

// ---- keystream helpers ----

Block counter_block(std::span<const std::uint8_t> nonce12, std::uint32_t counter) {
    Block b{};
    std::copy(nonce12.begin(), nonce12.end(), b.begin());
    b[12] = static_cast<std::uint8_t>(counter >> 24);
    b[13] = static_cast<std::uint8_t>(counter >> 16);
    b[14] = static_cast<std::uint8_t>(counter >> 8);
    b[15] = static_cast<std::uint8_t>(counter);
    return b;
}

// XORs data with E(K, nonce||ctr), ctr incrementing per block from `first`.
Bytes ctr_stream(const detail::RoundKeys& rk, std::span<const std::uint8_t> nonce12,
                 std::uint32_t first, std::span<const std::uint8_t> data) {
    Bytes out(data.begin(), data.end());
    std::uint32_t ctr = first;
    for (std::size_t off = 0; off < out.size(); off += 16, ++ctr) {
        const Block ks = detail::encrypt_block(rk, counter_block(nonce12, ctr));
        const std::size_t n = std::min<std::size_t>(16, out.size() - off);
        for (std::size_t i = 0; i < n; ++i) out[off + i] ^= ks[i];
    }
    return out;
}

// Key schedules are pure functions of the key; a one-slot cache covers the
// common case of a long message stream under a fixed key.
const detail::RoundKeys& cached_round_keys(const Key& key) {
    thread_local Key cached_key{};
    thread_local detail::RoundKeys cached_rk{};
    thread_local bool valid = false;
    if (!valid || cached_key != key) {
        cached_rk = detail::expand_key(key);
        cached_key = key;
        valid = true;
    }
    return cached_rk;
}

Bytes derive_iv(NoncePolicy policy, std::size_t len, Rng& rng, std::uint64_t msg_index) {
    Bytes iv(len, 0);
    if (policy == NoncePolicy::RandomPerMessage) {
        rng.fill(iv);
    } else {
        // CounterPerMessage: big-endian message index in the trailing 8 bytes.
        for (int i = 0; i < 8; ++i) iv[len - 8 + static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(msg_index >> (8 * (7 - i)));
    }
    return iv;
}

struct GcmParts {
    Bytes body;
    std::array<std::uint8_t, 16> tag;
};

GcmParts gcm_seal(const Key& key, std::span<const std::uint8_t> nonce12,
                  std::span<const std::uint8_t> plaintext, std::span<const std::uint8_t> aad) {
    const auto& rk = cached_round_keys(key);
    const Block h = detail::encrypt_block(rk, Block{});
    Bytes body = ctr_stream(rk, nonce12, 2, plaintext);  // J0 counter is 1; body starts at 2
    Ghash ghash(load_be(h));
    ghash.update(aad);
    ghash.update(body);
    ghash.lengths(aad.size(), body.size());
    const Block ekj0 = detail::encrypt_block(rk, counter_block(nonce12, 1));
    Block s = ghash.digest();
    std::array<std::uint8_t, 16> tag{};
    for (int i = 0; i < 16; ++i) tag[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)] ^ ekj0[static_cast<std::size_t>(i)];
    return {std::move(body), tag};
}

Bytes gcm_open(const Key& key, std::span<const std::uint8_t> nonce12,
               std::span<const std::uint8_t> body, const std::array<std::uint8_t, 16>& tag,
               std::span<const std::uint8_t> aad) {
    const auto& rk = cached_round_keys(key);
    const Block h = detail::encrypt_block(rk, Block{});
    Ghash ghash(load_be(h));
    ghash.update(aad);
    ghash.update(body);
    ghash.lengths(aad.size(), body.size());
    const Block ekj0 = detail::encrypt_block(rk, counter_block(nonce12, 1));
    const Block s = ghash.digest();
    std::uint8_t diff = 0;
    for (int i = 0; i < 16; ++i) {
        diff |= static_cast<std::uint8_t>(tag[static_cast<std::size_t>(i)] ^ s[static_cast<std::size_t>(i)] ^ ekj0[static_cast<std::size_t>(i)]);
    }
    if (diff != 0) throw AuthFailure("GCM tag mismatch");
    return ctr_stream(rk, nonce12, 2, body);
}

void require_shape(bool ok, const char* what) {
    if (!ok) throw ModeMismatch(what);
}

}  // namespace

bool replay_safe(CipherMode mode) {
    switch (mode) {
        case CipherMode::None:
        case CipherMode::ECB:
            return false;
        case CipherMode::CBC:
        case CipherMode::CTR:
        case CipherMode::GCM:
            return true;
    }
    return false;
}

const char* mode_name(CipherMode mode) {
    switch (mode) {
        case CipherMode::None: return "none";
        case CipherMode::ECB: return "ecb";
        case CipherMode::CBC: return "cbc";
        case CipherMode::CTR: return "ctr";
        case CipherMode::GCM: return "gcm";
    }
    return "?";
}

std::optional<CipherMode> mode_from_name(std::string_view name) {
    for (CipherMode m : {CipherMode::None, CipherMode::ECB, CipherMode::CBC, CipherMode::CTR,
                         CipherMode::GCM}) {
        if (name == mode_name(m)) return m;
    }
    return std::nullopt;
}

Bytes block_encrypt(std::span<const std::uint8_t> key, std::span<const std::uint8_t> block) {
    if (key.size() != 16 || block.size() != 16) throw InvalidLength("key and block must be 16 bytes");
    const auto rk = detail::expand_key(to_block(key));
    const Block out = detail::encrypt_block(rk, to_block(block));
    return Bytes(out.begin(), out.end());
}

Bytes block_decrypt(std::span<const std::uint8_t> key, std::span<const std::uint8_t> block) {
    if (key.size() != 16 || block.size() != 16) throw InvalidLength("key and block must be 16 bytes");
    const auto rk = detail::expand_key(to_block(key));
    const Block out = detail::decrypt_block(rk, to_block(block));
    return Bytes(out.begin(), out.end());
}

Ciphertext encrypt_aead(const CipherConfig& cfg, std::span<const std::uint8_t> plaintext,
                        std::span<const std::uint8_t> aad, Rng& rng, std::uint64_t msg_index) {
    if (plaintext.empty()) throw InvalidLength("plaintext must be non-empty");
    if (!aad.empty() && cfg.mode != CipherMode::GCM) {
        throw ModeMismatch("associated data requires GCM");
    }
    Ciphertext ct;
    switch (cfg.mode) {
        case CipherMode::None: {
            ct.body.assign(plaintext.begin(), plaintext.end());
            break;
        }
        case CipherMode::ECB: {
            const auto& rk = cached_round_keys(cfg.key);
            const Bytes padded = pkcs7_pad(plaintext);
            ct.body.resize(padded.size());
            for (std::size_t off = 0; off < padded.size(); off += 16) {
                Block blk{};
                std::copy_n(padded.begin() + static_cast<std::ptrdiff_t>(off), 16, blk.begin());
                const Block enc = detail::encrypt_block(rk, blk);
                std::copy(enc.begin(), enc.end(), ct.body.begin() + static_cast<std::ptrdiff_t>(off));
            }
            break;
        }
        case CipherMode::CBC: {
            const auto& rk = cached_round_keys(cfg.key);
            Bytes iv = derive_iv(cfg.nonce_policy, 16, rng, msg_index);
            const Bytes padded = pkcs7_pad(plaintext);
            ct.body.resize(padded.size());
            Block prev = to_block(iv);
            for (std::size_t off = 0; off < padded.size(); off += 16) {
                Block blk{};
                for (std::size_t i = 0; i < 16; ++i) blk[i] = padded[off + i] ^ prev[i];
                prev = detail::encrypt_block(rk, blk);
                std::copy(prev.begin(), prev.end(), ct.body.begin() + static_cast<std::ptrdiff_t>(off));
            }
            ct.nonce_or_iv = std::move(iv);
            break;
        }
        case CipherMode::CTR: {
            const auto& rk = cached_round_keys(cfg.key);
            Bytes nonce = derive_iv(cfg.nonce_policy, 12, rng, msg_index);
            ct.body = ctr_stream(rk, nonce, 0, plaintext);
            ct.nonce_or_iv = std::move(nonce);
            break;
        }
        case CipherMode::GCM: {
            Bytes nonce = derive_iv(cfg.nonce_policy, 12, rng, msg_index);
            auto [body, tag] = gcm_seal(cfg.key, nonce, plaintext, aad);
            ct.body = std::move(body);
            ct.nonce_or_iv = std::move(nonce);
            ct.tag = tag;
            break;
        }
    }
    return ct;
}

Ciphertext encrypt(const CipherConfig& cfg, std::span<const std::uint8_t> plaintext, Rng& rng,
                   std::uint64_t msg_index) {
    return encrypt_aead(cfg, plaintext, {}, rng, msg_index);
}

Bytes decrypt_aead(const CipherConfig& cfg, const Ciphertext& ct,
                   std::span<const std::uint8_t> aad) {
    if (!aad.empty() && cfg.mode != CipherMode::GCM) {
        throw ModeMismatch("associated data requires GCM");
    }
    switch (cfg.mode) {
        case CipherMode::None: {
            require_shape(!ct.nonce_or_iv && !ct.tag, "mode none carries no IV or tag");
            return ct.body;
        }
        case CipherMode::ECB: {
            require_shape(!ct.nonce_or_iv && !ct.tag, "ECB carries no IV or tag");
            if (ct.body.empty() || ct.body.size() % 16 != 0) {
                throw InvalidLength("ECB body must be a positive multiple of 16");
            }
            const auto& rk = cached_round_keys(cfg.key);
            Bytes plain(ct.body.size(), 0);
            for (std::size_t off = 0; off < ct.body.size(); off += 16) {
                Block blk{};
                std::copy_n(ct.body.begin() + static_cast<std::ptrdiff_t>(off), 16, blk.begin());
                const Block dec = detail::decrypt_block(rk, blk);
                std::copy(dec.begin(), dec.end(), plain.begin() + static_cast<std::ptrdiff_t>(off));
            }
            return pkcs7_unpad(plain);
        }
        case CipherMode::CBC: {
            require_shape(ct.nonce_or_iv && ct.nonce_or_iv->size() == 16 && !ct.tag,
                          "CBC needs a 16-byte IV and no tag");
            if (ct.body.empty() || ct.body.size() % 16 != 0) {
                throw InvalidLength("CBC body must be a positive multiple of 16");
            }
            const auto& rk = cached_round_keys(cfg.key);
            Bytes plain(ct.body.size(), 0);
            Block prev = to_block(*ct.nonce_or_iv);
            for (std::size_t off = 0; off < ct.body.size(); off += 16) {
                Block blk{};
                std::copy_n(ct.body.begin() + static_cast<std::ptrdiff_t>(off), 16, blk.begin());
                const Block dec = detail::decrypt_block(rk, blk);
                for (std::size_t i = 0; i < 16; ++i) plain[off + i] = dec[i] ^ prev[i];
                prev = blk;
            }
            return pkcs7_unpad(plain);
        }
        case CipherMode::CTR: {
            require_shape(ct.nonce_or_iv && ct.nonce_or_iv->size() == 12 && !ct.tag,
                          "CTR needs a 12-byte nonce and no tag");
            const auto& rk = cached_round_keys(cfg.key);
            return ctr_stream(rk, *ct.nonce_or_iv, 0, ct.body);
        }
        case CipherMode::GCM: {
            require_shape(ct.nonce_or_iv && ct.nonce_or_iv->size() == 12 && ct.tag,
                          "GCM needs a 12-byte nonce and a tag");
            return gcm_open(cfg.key, *ct.nonce_or_iv, ct.body, *ct.tag, aad);
        }
    }
    throw ModeMismatch("unknown mode");
}

Bytes decrypt(const CipherConfig& cfg, const Ciphertext& ct) {
    return decrypt_aead(cfg, ct, {});
}

ProbeResult probe_determinism(const CipherConfig& cfg, std::uint32_t trials, Rng& rng) {
    if (trials < 2) throw std::invalid_argument("probe needs at least 2 trials");
    static constexpr std::array<std::uint8_t, 16> kProbePlaintext = {
        0x50, 0x52, 0x4f, 0x42, 0x45, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00};
    const Ciphertext first = encrypt(cfg, kProbePlaintext, rng, 0);
    for (std::uint32_t i = 1; i < trials; ++i) {
        if (encrypt(cfg, kProbePlaintext, rng, i) != first) return ProbeResult::Randomized;
    }
    return ProbeResult::Deterministic;
}

}  // namespace dronesec::cipher
