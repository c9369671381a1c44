#include <doctest.h>

#include <algorithm>

#include "dronesec/audit.hpp"
#include "dronesec/config.hpp"
#include "dronesec/sim.hpp"
#include "test_support.hpp"

using namespace dronesec;
using namespace dronesec::audit;

namespace {

struct PresetUnderAudit {
    model::SystemTopology topology;
    AuditDeclarations decls;
};

PresetUnderAudit load_preset(std::string_view name) {
    const auto scenario = sim::preset(name);
    AuditDeclarations decls;
    decls.protocols = scenario.protocols;
    return {scenario.topology, decls};
}

Verdict verdict_of(const std::vector<ChecklistItem>& items, std::string_view id) {
    const auto* item = find_item(items, id);
    REQUIRE(item != nullptr);
    return item->verdict;
}

}  // namespace

TEST_CASE("deterministic-mode preset: module mounted, symmetric cipher, unsafe mode") {
    const auto p = load_preset("fig2");
    const auto items = run_checklist(p.topology, p.decls);
    CHECK(verdict_of(items, "1") == Verdict::Pass);
    CHECK(verdict_of(items, "1.1") == Verdict::Pass);
    CHECK(verdict_of(items, "1.1.1") == Verdict::Fail);
    CHECK(verdict_of(items, "2") == Verdict::Fail);
    CHECK(verdict_of(items, "2.1") == Verdict::NotApplicable);
}

TEST_CASE("hardened preset passes every applicable item") {
    const auto p = load_preset("fig4");
    const auto items = run_checklist(p.topology, p.decls);
    for (const auto& item : items) CHECK(item.verdict != Verdict::Fail);
    CHECK(verdict_of(items, "1") == Verdict::Pass);
    CHECK(verdict_of(items, "1.1.1") == Verdict::Pass);
    CHECK(verdict_of(items, "2") == Verdict::Pass);
    CHECK(verdict_of(items, "2.1") == Verdict::Pass);
}

TEST_CASE("no crypto at all fails the root item and gates the children off") {
    const auto items = run_checklist(model::default_topology(), {});
    CHECK(verdict_of(items, "1") == Verdict::Fail);
    for (const char* id : {"1.1", "1.1.1", "1.2", "1.2.1"}) {
        CHECK(verdict_of(items, id) == Verdict::NotApplicable);
    }
}

TEST_CASE("declared asymmetric cipher is corroborated by the probe") {
    auto p = load_preset("fig4");
    p.decls.asym_provided = true;
    p.decls.asym_randomized = true;
    auto items = run_checklist(p.topology, p.decls);
    CHECK(verdict_of(items, "1.2") == Verdict::Pass);
    CHECK(verdict_of(items, "1.2.1") == Verdict::Pass);

    p.decls.asym_randomized = false;  // deterministic scheme declared
    items = run_checklist(p.topology, p.decls);
    CHECK(verdict_of(items, "1.2") == Verdict::Pass);
    CHECK(verdict_of(items, "1.2.1") == Verdict::Fail);
}

TEST_CASE("gating invariant holds over every leaf-predicate assignment") {
    const auto parent_of = [](std::string_view id) -> std::string {
        const auto dot = id.rfind('.');
        if (dot == std::string_view::npos) return "";
        return std::string(id.substr(0, dot));
    };
    for (unsigned bits = 0; bits < (1u << 7); ++bits) {
        ChecklistPredicates p;
        p.kcmvp_declared = bits & 1;
        p.symmetric_present = bits & 2;
        p.symmetric_modes_safe = bits & 4;
        p.asym_declared = bits & 8;
        p.asym_randomized_ok = bits & 16;
        p.protocols_trusted = bits & 32;
        p.protocols_replay_protected = bits & 64;

        const auto items = assemble_checklist(p);
        REQUIRE(items.size() == 7);
        for (const auto& item : items) {
            const auto parent_id = parent_of(item.id);
            if (parent_id.empty()) continue;
            const auto* parent = find_item(items, parent_id);
            REQUIRE(parent != nullptr);
            if (parent->verdict != Verdict::Pass) {
                CHECK(item.verdict == Verdict::NotApplicable);
            }
        }
    }
}

TEST_CASE("coverage findings are exactly the plaintext directions") {
    const auto fig3 = load_preset("fig3");
    const auto findings = coverage_check(fig3.topology);
    REQUIRE(findings.size() == 2);  // both directions of the controller link
    for (const auto& f : findings) CHECK(f.segment == model::SegmentId::S3_ControllerVehicle);

    CHECK(coverage_check(load_preset("fig4").topology).empty());
    CHECK(coverage_check(load_preset("fig2").topology).empty());  // ECB is weak but not absent
}

TEST_CASE("two unencrypted relay hops produce findings on both") {
    auto topo = model::default_topology();  // everything plaintext
    const auto findings = coverage_check(topo);
    CHECK(findings.size() == 6);
    std::set<model::SegmentId> flagged;
    for (const auto& f : findings) flagged.insert(f.segment);
    CHECK(flagged.size() == 3);
}

TEST_CASE("coverage matches a direct scan oracle on randomized topologies") {
    Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        auto topo = model::default_topology();
        for (auto& seg : topo.segments) {
            seg.crypto_tx.mode = rng.below(2) ? cipher::CipherMode::GCM : cipher::CipherMode::None;
            seg.crypto_rx.mode = rng.below(2) ? cipher::CipherMode::GCM : cipher::CipherMode::None;
        }
        const auto findings = coverage_check(topo);
        std::vector<CoverageFinding> expected;
        for (const auto& seg : topo.segments) {
            if (seg.crypto_tx.mode == cipher::CipherMode::None)
                expected.push_back({seg.id, Direction::Tx});
            if (seg.crypto_rx.mode == cipher::CipherMode::None)
                expected.push_back({seg.id, Direction::Rx});
        }
        CHECK(findings == expected);
    }
}

TEST_CASE("policy tiers reproduce the strength table") {
    const auto tiers = recommend_policy(model::default_topology());
    REQUIRE(tiers.size() == 3);

    const auto find_tier = [&](model::SegmentId id) -> const PolicyTier& {
        for (const auto& t : tiers) {
            if (t.segment == id) return t;
        }
        REQUIRE(false);
        return tiers.front();
    };

    const auto& s1 = find_tier(model::SegmentId::S1_PlannerRelay);
    CHECK(s1.data_value == Tier::High);
    CHECK(s1.required_strength == Tier::High);
    CHECK(s1.suite.mode == cipher::CipherMode::GCM);
    CHECK(s1.suite.protocol == proto::ProtocolKind::Hardened);

    const auto& s2 = find_tier(model::SegmentId::S2_RelayVehicle);
    CHECK(s2.data_value == Tier::High);
    CHECK(s2.required_strength == Tier::High);

    const auto& s3 = find_tier(model::SegmentId::S3_ControllerVehicle);
    CHECK(s3.data_value == Tier::Medium);
    CHECK(s3.required_strength == Tier::Medium);
    CHECK_FALSE(s3.note.empty());  // medium-to-low range retained in the note
}

TEST_CASE("a topology without the controller link yields two tiers") {
    auto topo = model::default_topology();
    std::erase_if(topo.segments,
                  [](const auto& s) { return s.id == model::SegmentId::S3_ControllerVehicle; });
    CHECK(recommend_policy(topo).size() == 2);
}

TEST_CASE("collected sensor data always gets the strongest tier present") {
    auto topo = model::default_topology();
    // move sensor collection onto the controller link only
    topo.segment(model::SegmentId::S1_PlannerRelay)->data_kinds = {model::DataKind::FlightState};
    topo.segment(model::SegmentId::S2_RelayVehicle)->data_kinds = {model::DataKind::FlightState};
    topo.segment(model::SegmentId::S3_ControllerVehicle)->data_kinds = {
        model::DataKind::FlightState, model::DataKind::SensorCollect};

    const auto tiers = recommend_policy(topo);
    Tier max_strength = Tier::Low;
    for (const auto& t : tiers) max_strength = std::max(max_strength, t.required_strength);
    for (const auto& t : tiers) {
        if (t.segment == model::SegmentId::S3_ControllerVehicle) {
            CHECK(t.required_strength == max_strength);
        }
    }
}

TEST_CASE("suite recommendations by strength tier") {
    CHECK(suite_for(Tier::High) ==
          SuiteRecommendation{cipher::CipherMode::GCM, proto::ProtocolKind::Hardened, false});
    CHECK(suite_for(Tier::Medium) ==
          SuiteRecommendation{cipher::CipherMode::GCM, proto::ProtocolKind::Hardened, false});
    // the budget tier trades integrity away and must say so
    const auto low = suite_for(Tier::Low);
    CHECK(low.mode == cipher::CipherMode::CTR);
    CHECK(low.protocol == proto::ProtocolKind::Hardened);
    CHECK(low.integrity_warning);

    AuditReport report;
    report.policy.push_back({model::SegmentId::S3_ControllerVehicle, Tier::Low, Tier::Low, low, ""});
    CHECK(render_report(report).find("add a MAC") != std::string::npos);
}

TEST_CASE("policy strength never inverts against data value") {
    Rng rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        auto topo = model::default_topology();
        for (auto& seg : topo.segments) {
            seg.data_kinds.clear();
            if (rng.below(2)) seg.data_kinds.insert(model::DataKind::FlightState);
            if (rng.below(2)) seg.data_kinds.insert(model::DataKind::SensorCollect);
            if (rng.below(2)) seg.data_kinds.insert(model::DataKind::SensorControl);
        }
        auto tiers = recommend_policy(topo);
        std::sort(tiers.begin(), tiers.end(), [](const auto& a, const auto& b) {
            return static_cast<int>(a.data_value) > static_cast<int>(b.data_value);
        });
        for (std::size_t i = 1; i < tiers.size(); ++i) {
            if (tiers[i - 1].data_value == tiers[i].data_value) continue;
            CHECK(static_cast<int>(tiers[i - 1].required_strength) >=
                  static_cast<int>(tiers[i].required_strength));
        }
    }
}

TEST_CASE("only the fully hardened preset is compliant") {
    const auto fig2 = load_preset("fig2");
    const auto fig3 = load_preset("fig3");
    const auto fig4 = load_preset("fig4");

    CHECK_FALSE(full_audit(fig2.topology, fig2.decls).compliant);
    const auto fig3_report = full_audit(fig3.topology, fig3.decls);
    CHECK_FALSE(fig3_report.compliant);
    CHECK(fig3_report.coverage.size() == 2);
    CHECK(full_audit(fig4.topology, fig4.decls).compliant);
}

TEST_CASE("an empty topology is non-compliant with a failed root item") {
    const auto report = full_audit(model::SystemTopology{}, {});
    CHECK_FALSE(report.compliant);
    CHECK(verdict_of(report.checklist, "1") == Verdict::Fail);
}

TEST_CASE("audit report round-trips through the machine format") {
    const auto p = load_preset("fig3");
    const auto report = full_audit(p.topology, p.decls);
    const auto text = config::audit_report_to_text(report);
    CHECK(config::audit_report_from_text(text) == report);
}

TEST_CASE("shipped registry file matches the built-in registry") {
    const auto loaded =
        config::load_registry(testsupport::data_dir() / "data/protocol_registry.json");
    CHECK(loaded == ProtocolRegistry::builtin());
    CHECK(loaded.trusted("hardened") == true);
    CHECK(loaded.trusted("naive") == false);
    CHECK_FALSE(loaded.trusted("unknown").has_value());
}

TEST_CASE("untrusted or unknown protocols fail item 2") {
    auto p = load_preset("fig4");
    ProtocolRegistry registry{{{"hardened", false}}};  // distrust everything
    const auto items = run_checklist(p.topology, p.decls, registry);
    CHECK(verdict_of(items, "2") == Verdict::Fail);
}

TEST_CASE("human rendering mentions findings and the verdict") {
    const auto p = load_preset("fig3");
    const auto text = render_report(full_audit(p.topology, p.decls));
    CHECK(text.find("s3_controller_vehicle") != std::string::npos);
    CHECK(text.find("UNENCRYPTED") != std::string::npos);
    CHECK(text.find("compliant no") != std::string::npos);
}
