#include "aes_core.hpp"

namespace dronesec::cipher::detail {

namespace {

constexpr std::array<std::uint8_t, 10> kRcon = {0x01, 0x02, 0x04, 0x08, 0x10,
                                                0x20, 0x40, 0x80, 0x1b, 0x36};

void sub_bytes(Block& s) {
    for (auto& b : s) b = kSbox[b];
}

void inv_sub_bytes(Block& s) {
    for (auto& b : s) b = kInvSbox[b];
}

// State is column-major: s[4*c + r] is row r, column c.
void shift_rows(Block& s) {
    Block t = s;
    for (int r = 1; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) s[4 * c + r] = t[4 * ((c + r) % 4) + r];
    }
}

void inv_shift_rows(Block& s) {
    Block t = s;
    for (int r = 1; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) s[4 * ((c + r) % 4) + r] = t[4 * c + r];
    }
}

void mix_columns(Block& s) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* col = &s[4 * c];
        const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        col[0] = static_cast<std::uint8_t>(xtime(a0) ^ (xtime(a1) ^ a1) ^ a2 ^ a3);
        col[1] = static_cast<std::uint8_t>(a0 ^ xtime(a1) ^ (xtime(a2) ^ a2) ^ a3);
        col[2] = static_cast<std::uint8_t>(a0 ^ a1 ^ xtime(a2) ^ (xtime(a3) ^ a3));
        col[3] = static_cast<std::uint8_t>((xtime(a0) ^ a0) ^ a1 ^ a2 ^ xtime(a3));
    }
}

void inv_mix_columns(Block& s) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t* col = &s[4 * c];
        const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        col[0] = static_cast<std::uint8_t>(gmul(a0, 0x0e) ^ gmul(a1, 0x0b) ^ gmul(a2, 0x0d) ^ gmul(a3, 0x09));
        col[1] = static_cast<std::uint8_t>(gmul(a0, 0x09) ^ gmul(a1, 0x0e) ^ gmul(a2, 0x0b) ^ gmul(a3, 0x0d));
        col[2] = static_cast<std::uint8_t>(gmul(a0, 0x0d) ^ gmul(a1, 0x09) ^ gmul(a2, 0x0e) ^ gmul(a3, 0x0b));
        col[3] = static_cast<std::uint8_t>(gmul(a0, 0x0b) ^ gmul(a1, 0x0d) ^ gmul(a2, 0x09) ^ gmul(a3, 0x0e));
    }
}

void add_round_key(Block& s, const RoundKeys& rk, int round) {
    for (int i = 0; i < 16; ++i) s[i] ^= rk[16 * round + i];
}

}  // namespace

RoundKeys expand_key(const std::array<std::uint8_t, 16>& key) {
    RoundKeys rk{};
    std::copy(key.begin(), key.end(), rk.begin());
    for (int i = 4; i < 44; ++i) {
        std::array<std::uint8_t, 4> t = {rk[4 * (i - 1)], rk[4 * (i - 1) + 1],
                                         rk[4 * (i - 1) + 2], rk[4 * (i - 1) + 3]};
        if (i % 4 == 0) {
            // RotWord + SubWord + Rcon
            const std::uint8_t first = t[0];
            t = {kSbox[t[1]], kSbox[t[2]], kSbox[t[3]], kSbox[first]};
            t[0] ^= kRcon[i / 4 - 1];
        }
        for (int b = 0; b < 4; ++b) rk[4 * i + b] = rk[4 * (i - 4) + b] ^ t[b];
    }
    return rk;
}

Block encrypt_block(const RoundKeys& rk, const Block& in) {
    Block s = in;
    add_round_key(s, rk, 0);
    for (int round = 1; round < 10; ++round) {
        sub_bytes(s);
        shift_rows(s);
        mix_columns(s);
        add_round_key(s, rk, round);
    }
    sub_bytes(s);
    shift_rows(s);
    add_round_key(s, rk, 10);
    return s;
}

Block decrypt_block(const RoundKeys& rk, const Block& in) {
    Block s = in;
    add_round_key(s, rk, 10);
    inv_shift_rows(s);
    inv_sub_bytes(s);
    for (int round = 9; round >= 1; --round) {
        add_round_key(s, rk, round);
        inv_mix_columns(s);
        inv_shift_rows(s);
        inv_sub_bytes(s);
    }
    add_round_key(s, rk, 0);
    return s;
}

}  // namespace dronesec::cipher::detail
