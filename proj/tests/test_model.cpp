#include <doctest.h>

#include "dronesec/config.hpp"
#include "dronesec/errors.hpp"
#include "dronesec/model.hpp"
#include "dronesec/rng.hpp"

using namespace dronesec;
using namespace dronesec::model;

TEST_CASE("default topology has the three segments over four components") {
    const auto topo = default_topology();
    CHECK(topo.components.size() == 4);
    REQUIRE(topo.segments.size() == 3);
    CHECK(topo.segment(SegmentId::S1_PlannerRelay) != nullptr);
    CHECK(topo.segment(SegmentId::S2_RelayVehicle) != nullptr);
    CHECK(topo.segment(SegmentId::S3_ControllerVehicle) != nullptr);
    CHECK_NOTHROW(topo.validate());
}

TEST_CASE("relay forwards unchanged: S1 and S2 carry identical data kinds") {
    const auto topo = default_topology();
    CHECK(topo.segment(SegmentId::S1_PlannerRelay)->data_kinds ==
          topo.segment(SegmentId::S2_RelayVehicle)->data_kinds);
}

TEST_CASE("default distance classes") {
    const auto topo = default_topology();
    CHECK(topo.segment(SegmentId::S1_PlannerRelay)->distance_class == DistanceClass::Short);
    CHECK(topo.segment(SegmentId::S2_RelayVehicle)->distance_class == DistanceClass::Long);
    CHECK(topo.segment(SegmentId::S3_ControllerVehicle)->distance_class == DistanceClass::Long);
}

TEST_CASE("default topology is plaintext everywhere") {
    for (const auto& seg : default_topology().segments) {
        CHECK(seg.crypto_tx.mode == cipher::CipherMode::None);
        CHECK(seg.crypto_rx.mode == cipher::CipherMode::None);
    }
}

TEST_CASE("topology validation rejects missing endpoints and duplicates") {
    auto topo = default_topology();
    topo.components.erase(ComponentKind::RemoteController);
    CHECK_THROWS_AS(topo.validate(), ConfigError);

    auto dup = default_topology();
    dup.segments.push_back(dup.segments.front());
    CHECK_THROWS_AS(dup.validate(), ConfigError);
}

TEST_CASE("topology validation enforces relay symmetry") {
    auto topo = default_topology();
    topo.segment(SegmentId::S1_PlannerRelay)->data_kinds = {DataKind::FlightState};
    CHECK_THROWS_AS(topo.validate(), ConfigError);

    // symmetry only binds when both relay hops exist
    std::erase_if(topo.segments, [](const auto& s) { return s.id == SegmentId::S2_RelayVehicle; });
    CHECK_NOTHROW(topo.validate());
}

TEST_CASE("catalog holds the nine comparison rows plus analog RF") {
    const auto& rows = catalog();
    CHECK(rows.size() == 10);

    const auto find = [&](LinkMethodId id) -> const LinkProfile& {
        for (const auto& p : rows) {
            if (p.id == id) return p;
        }
        REQUIRE(false);
        return rows.front();
    };

    const auto& wifi = find(LinkMethodId::WiFi);
    CHECK(wifi.range_min_m == 50);
    CHECK(wifi.range_max_m == 250);
    CHECK(wifi.energy_mw == 835.0);
    CHECK(wifi.security == SecurityLevel::Medium);

    CHECK(find(LinkMethodId::SigFox).security == SecurityLevel::Low);
    CHECK(find(LinkMethodId::Zigbee).rate_bps == 250'000);
    CHECK(find(LinkMethodId::Bluetooth).range_max_m == 10);
    CHECK(find(LinkMethodId::FiveG).provisional);
    CHECK_FALSE(find(LinkMethodId::FiveG).energy_mw.has_value());
    CHECK_FALSE(find(LinkMethodId::Lora).latency_ms.has_value());
}

TEST_CASE("select_method filters and ranks by energy") {
    const auto picks = select_method(100, 1'000'000, SecurityLevel::Medium);
    REQUIRE(picks.size() == 3);
    CHECK(picks[0] == LinkMethodId::WiFi);   // 835 mW
    CHECK(picks[1] == LinkMethodId::LteU);   // 1000 mW
    CHECK(picks[2] == LinkMethodId::Wimax);  // 3200 mW
}

TEST_CASE("select_method excludes short-reach methods at long range") {
    const auto picks = select_method(10'000, 1, SecurityLevel::Low);
    for (const auto id : picks) CHECK(id != LinkMethodId::Bluetooth);
}

TEST_CASE("select_method skips provisional rows unless asked") {
    const auto without = select_method(40'000, 1, SecurityLevel::Low);
    CHECK(without.empty());
    const auto with = select_method(40'000, 1, SecurityLevel::Low, true);
    REQUIRE(with.size() == 1);
    CHECK(with[0] == LinkMethodId::FiveG);
}

TEST_CASE("select_method breaks energy ties by rate, then id") {
    // at 1 km / any rate / low security: Lora and SigFox tie at 100 mW and
    // the faster SigFox must come first
    const auto picks = select_method(1'000, 1, SecurityLevel::Low);
    REQUIRE(picks.size() == 5);
    CHECK(picks[0] == LinkMethodId::SigFox);  // 100 mW, 50 kbps
    CHECK(picks[1] == LinkMethodId::Lora);    // 100 mW, 100 bps
    CHECK(picks[2] == LinkMethodId::Ingenu);  // 160 mW
    CHECK(picks[3] == LinkMethodId::LteU);    // 1000 mW
    CHECK(picks[4] == LinkMethodId::Wimax);   // 3200 mW

    // equal energy and rate falls back to the id name
    std::vector<LinkProfile> twins = {
        {LinkMethodId::Zigbee, 0, 100, 10.0, 1000, SecurityLevel::Low, std::nullopt, false},
        {LinkMethodId::Bluetooth, 0, 100, 10.0, 1000, SecurityLevel::Low, std::nullopt, false},
    };
    const auto tied = select_method(twins, 50, 0, SecurityLevel::Low);
    REQUIRE(tied.size() == 2);
    CHECK(tied[0] == LinkMethodId::Bluetooth);  // "bluetooth" < "zigbee"
}

TEST_CASE("select_method over an empty catalog returns nothing") {
    CHECK(select_method({}, 1, 0, SecurityLevel::Low).empty());
}

TEST_CASE("select_method rejects a non-positive range requirement") {
    CHECK_THROWS_AS(select_method(0, 0, SecurityLevel::Low), std::invalid_argument);
}

TEST_CASE("select_method output is a catalog subset and deterministic") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const double range = 1.0 + static_cast<double>(rng.below(60'000));
        const std::uint64_t rate = rng.below(2'000'000'000);
        const auto sec = static_cast<SecurityLevel>(rng.below(3));
        const auto a = select_method(range, rate, sec);
        const auto b = select_method(range, rate, sec);
        CHECK(a == b);
        for (const auto id : a) {
            bool in_catalog = false;
            for (const auto& p : catalog()) in_catalog |= p.id == id;
            CHECK(in_catalog);
        }
    }
}

TEST_CASE("catalog round-trips through the config format") {
    const auto text = config::catalog_to_text(catalog());
    const auto parsed = config::catalog_from_text(text);
    CHECK(parsed == catalog());
    // and the serialization itself is stable
    CHECK(config::catalog_to_text(parsed) == text);
}

TEST_CASE("topology round-trips through the config format") {
    config::ConfigDocument doc;
    doc.topology = default_topology();
    doc.protocols[SegmentId::S3_ControllerVehicle] = proto::ProtocolKind::Naive;
    const auto text = config::serialize_config(doc);
    const auto parsed = config::parse_config(text);
    CHECK(parsed == doc);
}
