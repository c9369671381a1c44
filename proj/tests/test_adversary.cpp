#include <doctest.h>

#include <algorithm>
#include <set>

#include "dronesec/adversary.hpp"
#include "dronesec/errors.hpp"
#include "dronesec/toycipher.hpp"

using namespace dronesec;
using namespace dronesec::adversary;
using proto::Command;

namespace {

cipher::CipherConfig make_cfg(cipher::CipherMode mode) {
    cipher::CipherConfig cfg;
    cfg.mode = mode;
    for (std::size_t i = 0; i < cfg.key.size(); ++i) cfg.key[i] = static_cast<std::uint8_t>(i);
    return cfg;
}

proto::LinkEndpoint naive_ep(cipher::CipherMode mode) {
    return proto::LinkEndpoint(make_cfg(mode), proto::ProtocolKind::Naive,
                               model::SegmentId::S3_ControllerVehicle);
}

}  // namespace

TEST_CASE("codebook completes after seeing all commands on a deterministic link") {
    auto sender = naive_ep(cipher::CipherMode::ECB);
    Rng rng(1);
    AdversaryState spy;
    std::uint64_t tick = 0;
    for (const auto cmd : proto::all_commands()) {
        CHECK_FALSE(spy.codebook_complete());
        spy.observe({++tick, sender.naive_send(cmd, rng).encode(), cmd});
    }
    CHECK(spy.codebook_complete());
    CHECK(spy.codebook_size() == 8);
}

TEST_CASE("a randomized link never completes as a predictor") {
    auto sender = naive_ep(cipher::CipherMode::GCM);
    Rng rng(2);
    AdversaryState spy;
    spy.observe({1, sender.naive_send(Command::Up, rng).encode(), Command::Up});
    spy.observe({2, sender.naive_send(Command::Up, rng).encode(), Command::Up});
    CHECK(spy.codebook_size() == 2);  // two distinct byte strings for one command

    // fresh frames are never in the book
    int known = 0;
    for (int i = 0; i < 200; ++i) {
        const Bytes fresh = sender.naive_send(Command::Up, rng).encode();
        if (spy.predict(fresh)) ++known;
    }
    CHECK(known == 0);
}

TEST_CASE("conflicting observations signal a non-deterministic link") {
    auto sender = naive_ep(cipher::CipherMode::ECB);
    Rng rng(3);
    const Bytes wire = sender.naive_send(Command::Up, rng).encode();
    AdversaryState spy;
    spy.observe({1, wire, Command::Up});
    CHECK_THROWS_AS(spy.observe({2, wire, Command::Down}), InconsistentObservation);
    // re-observing the same mapping is fine
    CHECK_NOTHROW(spy.observe({3, wire, Command::Up}));
}

TEST_CASE("a complete codebook decodes every subsequent frame") {
    auto sender = naive_ep(cipher::CipherMode::ECB);
    Rng rng(4);
    AdversaryState spy;
    std::uint64_t tick = 0;
    for (const auto cmd : proto::all_commands()) {
        spy.observe({++tick, sender.naive_send(cmd, rng).encode(), cmd});
    }
    for (int i = 0; i < 100; ++i) {
        const auto cmd = proto::all_commands()[static_cast<std::size_t>(i) % 8];
        const auto guess = spy.predict(sender.naive_send(cmd, rng).encode());
        REQUIRE(guess.has_value());
        CHECK(*guess == cmd);
    }
}

TEST_CASE("empty state predicts nothing") {
    AdversaryState spy;
    CHECK_FALSE(spy.predict({0x01, 0x02}).has_value());
}

TEST_CASE("replaying against a naive link always executes") {
    auto sender = naive_ep(cipher::CipherMode::ECB);
    auto receiver = naive_ep(cipher::CipherMode::ECB);
    Rng rng(5);
    AdversaryState spy;
    spy.observe({1, sender.naive_send(Command::Forward, rng).encode(), Command::Forward});
    for (int i = 0; i < 10; ++i) {
        const auto outcome = spy.replay(receiver, 0);
        CHECK(outcome.executed);
        CHECK(outcome.command == Command::Forward);
    }
}

TEST_CASE("replaying against a hardened link is rejected as a duplicate") {
    const auto cfg = make_cfg(cipher::CipherMode::GCM);
    proto::LinkEndpoint sender(cfg, proto::ProtocolKind::Hardened,
                               model::SegmentId::S3_ControllerVehicle);
    proto::LinkEndpoint receiver(cfg, proto::ProtocolKind::Hardened,
                                 model::SegmentId::S3_ControllerVehicle);
    Rng rng(6);
    const proto::Frame f = sender.hardened_send(Command::Forward, rng);
    REQUIRE(std::holds_alternative<Command>(receiver.hardened_receive(f)));

    AdversaryState spy;
    spy.observe({1, f.encode(), Command::Forward});
    const auto outcome = spy.replay(receiver, 0);
    CHECK_FALSE(outcome.executed);
    CHECK(outcome.reason == FailureReason::ReplayDuplicate);
}

TEST_CASE("corrupted captures fail without crashing the attack loop") {
    auto sender = naive_ep(cipher::CipherMode::ECB);
    auto receiver = naive_ep(cipher::CipherMode::ECB);
    Rng rng(7);
    Bytes wire = sender.naive_send(Command::Up, rng).encode();
    wire[wire.size() - 1] ^= 0xFF;  // corrupt ciphertext body
    AdversaryState spy;
    spy.observe({1, wire, Command::Up});
    const auto outcome = spy.replay(receiver, 0);
    CHECK_FALSE(outcome.executed);
    REQUIRE(outcome.reason.has_value());

    CHECK_THROWS_AS(spy.replay(receiver, 5), std::out_of_range);
}

TEST_CASE("capture log round-trips through the export format") {
    auto sender = naive_ep(cipher::CipherMode::ECB);
    Rng rng(8);
    AdversaryState spy;
    spy.observe({10, sender.naive_send(Command::Up, rng).encode(), Command::Up});
    spy.observe({11, sender.naive_send(Command::ReturnHome, rng).encode(), Command::ReturnHome});

    const std::string text = spy.export_captures();
    const auto parsed = AdversaryState::parse_captures(text);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0] == spy.captures()[0]);
    CHECK(parsed[1] == spy.captures()[1]);

    CHECK_THROWS_AS(AdversaryState::parse_captures("1 zz up"), std::invalid_argument);
    CHECK_THROWS_AS(AdversaryState::parse_captures("1 0102 fly"), DecodeError);
}

// ---- toy cipher ----

TEST_CASE("toy cipher is a permutation and its own inverse route") {
    const ToyCipher c(0xBEEF);
    std::set<std::uint16_t> images;
    for (std::uint32_t b = 0; b < 0x10000; ++b) {
        const auto ct = c.encrypt_block(static_cast<std::uint16_t>(b));
        images.insert(ct);
        CHECK(c.decrypt_block(ct) == b);
    }
    CHECK(images.size() == 0x10000);  // bijective
}

TEST_CASE("toy cipher inverse holds across random keys") {
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        const ToyCipher c(static_cast<std::uint16_t>(rng.below(0x10000)));
        const auto block = static_cast<std::uint16_t>(rng.below(0x10000));
        CHECK(c.decrypt_block(c.encrypt_block(block)) == block);
    }
}

TEST_CASE("known-plaintext search always contains the true key") {
    Rng rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const auto key = static_cast<std::uint16_t>(rng.below(0x10000));
        const ToyCipher c(key);
        std::vector<ToyPair> pairs;
        for (int i = 0; i < 2; ++i) {
            const auto pt = static_cast<std::uint16_t>(rng.below(0x10000));
            pairs.emplace_back(pt, c.encrypt_block(pt));
        }
        const auto candidates = kpa_key_search(pairs);
        CHECK(std::find(candidates.begin(), candidates.end(), key) != candidates.end());
    }
}

TEST_CASE("a single pair leaves only a couple of candidates on average") {
    Rng rng(11);
    double total = 0;
    const int trials = 100;
    for (int trial = 0; trial < trials; ++trial) {
        const auto key = static_cast<std::uint16_t>(rng.below(0x10000));
        const ToyCipher c(key);
        const auto pt = static_cast<std::uint16_t>(rng.below(0x10000));
        const auto candidates = kpa_key_search(std::vector<ToyPair>{{pt, c.encrypt_block(pt)}});
        CHECK(std::find(candidates.begin(), candidates.end(), key) != candidates.end());
        total += static_cast<double>(candidates.size());
    }
    const double mean = total / trials;
    CHECK(mean > 1.0);  // collisions exist
    CHECK(mean < 3.0);  // ~2 expected: 2^16 keys at a 2^-16 collision rate
}

TEST_CASE("no pairs is a contract violation") {
    CHECK_THROWS_AS(kpa_key_search({}), std::invalid_argument);
}

TEST_CASE("ciphertext-only candidates are a superset of known-plaintext ones") {
    Rng rng(12);
    for (int trial = 0; trial < 5; ++trial) {
        const auto key = static_cast<std::uint16_t>(rng.below(0x10000));
        const ToyCipher c(key);
        std::vector<ToyPair> pairs;
        std::vector<std::uint16_t> cts;
        for (int i = 0; i < 10; ++i) {
            const auto cmd = proto::all_commands()[rng.below(8)];
            const auto pt = toy_plaintext(cmd);
            const auto ct = c.encrypt_block(pt);
            pairs.emplace_back(pt, ct);
            cts.push_back(ct);
        }
        const auto kpa = kpa_key_search(pairs);
        const auto coa = coa_candidates(cts, is_toy_command_plaintext);
        CHECK(coa.size() >= kpa.size());
        CHECK(std::includes(coa.begin(), coa.end(), kpa.begin(), kpa.end()));
        CHECK(std::find(coa.begin(), coa.end(), key) != coa.end());
    }
}

TEST_CASE("a vacuous predicate keeps the whole key space") {
    const std::vector<std::uint16_t> cts = {0x1234};
    const auto all = coa_candidates(cts, [](std::uint16_t) { return true; });
    CHECK(all.size() == ToyCipher::kKeySpace);
}

TEST_CASE("toy command encoding matches its predicate") {
    for (const auto cmd : proto::all_commands()) {
        CHECK(is_toy_command_plaintext(toy_plaintext(cmd)));
    }
    CHECK_FALSE(is_toy_command_plaintext(0x0101));  // nonzero pad
    CHECK_FALSE(is_toy_command_plaintext(0xFF00));  // unknown code
}
