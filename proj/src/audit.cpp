#include "dronesec/audit.hpp"

#include <algorithm>
#include <sstream>

#include "dronesec/errors.hpp"

namespace dronesec::audit {

namespace {

constexpr std::uint64_t kProbeSeed = 0x5ec41u;
constexpr std::uint32_t kProbeTrials = 32;

bool probe_randomized(const cipher::CipherConfig& cfg) {
    Rng rng(kProbeSeed);
    return cipher::probe_determinism(cfg, kProbeTrials, rng) == cipher::ProbeResult::Randomized;
}

Verdict gate(Verdict parent, bool pass) {
    if (parent != Verdict::Pass) return Verdict::NotApplicable;
    return pass ? Verdict::Pass : Verdict::Fail;
}

}  // namespace

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::NotApplicable: return "n/a";
    }
    return "?";
}

const char* direction_name(Direction d) { return d == Direction::Tx ? "tx" : "rx"; }

const char* tier_name(Tier t) {
    switch (t) {
        case Tier::Low: return "low";
        case Tier::Medium: return "medium";
        case Tier::High: return "high";
    }
    return "?";
}

std::optional<bool> ProtocolRegistry::trusted(std::string_view name) const {
    for (const auto& e : entries) {
        if (e.name == name) return e.trusted;
    }
    return std::nullopt;
}

const ProtocolRegistry& ProtocolRegistry::builtin() {
    static const ProtocolRegistry kBuiltin{{{"naive", false}, {"hardened", true}}};
    return kBuiltin;
}

std::vector<ChecklistItem> assemble_checklist(const ChecklistPredicates& p) {
    std::vector<ChecklistItem> items;
    items.reserve(7);

    const Verdict v1 = p.kcmvp_declared ? Verdict::Pass : Verdict::Fail;
    items.push_back({"1", "Certified cryptographic module on board", v1});

    const Verdict v11 = gate(v1, p.symmetric_present);
    items.push_back({"1.1", "Module provides a symmetric cipher", v11});
    items.push_back({"1.1.1", "Configured cipher modes are replay-safe", gate(v11, p.symmetric_modes_safe)});

    // Not providing an asymmetric cipher is not a deficiency, so an undeclared
    // one gates the sub-item off instead of failing the report.
    const Verdict v12 = (v1 != Verdict::Pass) ? Verdict::NotApplicable
                         : (p.asym_declared ? Verdict::Pass : Verdict::NotApplicable);
    items.push_back({"1.2", "Module provides an asymmetric cipher", v12});
    items.push_back({"1.2.1", "Asymmetric encryption is randomized", gate(v12, p.asym_randomized_ok)});

    const Verdict v2 = p.protocols_trusted ? Verdict::Pass : Verdict::Fail;
    items.push_back({"2", "Declared link protocols come from the trusted registry", v2});
    items.push_back({"2.1", "Protocol includes replay protection (sequence numbers)",
                     gate(v2, p.protocols_replay_protected)});
    return items;
}

std::vector<ChecklistItem> run_checklist(const model::SystemTopology& topology,
                                         const AuditDeclarations& decls,
                                         const ProtocolRegistry& registry) {
    ChecklistPredicates p;

    std::vector<const cipher::CipherConfig*> configs;
    for (const auto& seg : topology.segments) {
        configs.push_back(&seg.crypto_tx);
        configs.push_back(&seg.crypto_rx);
    }

    for (const auto* cfg : configs) {
        p.kcmvp_declared |= cfg->kcmvp_certified;
        p.symmetric_present |= cfg->mode != cipher::CipherMode::None;
    }

    p.symmetric_modes_safe = true;
    for (const auto* cfg : configs) {
        if (cfg->mode == cipher::CipherMode::None) continue;
        p.symmetric_modes_safe &= cipher::replay_safe(cfg->mode) && probe_randomized(*cfg);
    }

    p.asym_declared = decls.asym_provided;
    if (decls.asym_provided) {
        // No asymmetric cipher is implemented; model the declared scheme with a
        // symmetric stand-in that has the same determinism behaviour and let
        // the probe corroborate the declared flag.
        cipher::CipherConfig stand_in;
        stand_in.mode = decls.asym_randomized ? cipher::CipherMode::GCM : cipher::CipherMode::ECB;
        stand_in.nonce_policy = cipher::NoncePolicy::RandomPerMessage;
        p.asym_randomized_ok = decls.asym_randomized && probe_randomized(stand_in);
    }

    p.protocols_trusted = !decls.protocols.empty();
    p.protocols_replay_protected = !decls.protocols.empty();
    for (const auto& [seg, proto_kind] : decls.protocols) {
        const auto trusted = registry.trusted(proto::protocol_name(proto_kind));
        p.protocols_trusted &= trusted.value_or(false);
        p.protocols_replay_protected &= proto_kind == proto::ProtocolKind::Hardened;
    }

    return assemble_checklist(p);
}

std::vector<CoverageFinding> coverage_check(const model::SystemTopology& topology) {
    std::vector<CoverageFinding> findings;
    for (const auto& seg : topology.segments) {
        if (seg.crypto_tx.mode == cipher::CipherMode::None) {
            findings.push_back({seg.id, Direction::Tx});
        }
        if (seg.crypto_rx.mode == cipher::CipherMode::None) {
            findings.push_back({seg.id, Direction::Rx});
        }
    }
    return findings;
}

SuiteRecommendation suite_for(Tier strength) {
    switch (strength) {
        case Tier::High:
            return {cipher::CipherMode::GCM, proto::ProtocolKind::Hardened, false};
        case Tier::Medium:
            return {cipher::CipherMode::GCM, proto::ProtocolKind::Hardened, false};
        case Tier::Low:
            return {cipher::CipherMode::CTR, proto::ProtocolKind::Hardened, true};
    }
    throw ConfigError("unknown tier");
}

std::vector<PolicyTier> recommend_policy(const model::SystemTopology& topology) {
    std::vector<PolicyTier> tiers;
    for (const auto& seg : topology.segments) {
        PolicyTier t;
        t.segment = seg.id;
        switch (seg.id) {
            case model::SegmentId::S1_PlannerRelay:
            case model::SegmentId::S2_RelayVehicle:
                t.data_value = Tier::High;
                break;
            case model::SegmentId::S3_ControllerVehicle:
                // published as a medium-to-low range; collapsed to one
                // actionable tier with the range kept in the note
                t.data_value = Tier::Medium;
                t.note = "value range medium-to-low; relaxed key-rotation schedule acceptable";
                break;
        }
        t.required_strength = t.data_value;
        tiers.push_back(std::move(t));
    }

    // Collected sensor data is the highest-value traffic in the system; any
    // segment carrying it gets the strongest tier present in this report.
    Tier max_strength = Tier::Low;
    for (const auto& t : tiers) max_strength = std::max(max_strength, t.required_strength);
    for (auto& t : tiers) {
        const auto* seg = topology.segment(t.segment);
        if (seg && seg->data_kinds.contains(model::DataKind::SensorCollect)) {
            t.required_strength = std::max(t.required_strength, max_strength);
        }
    }

    for (auto& t : tiers) t.suite = suite_for(t.required_strength);
    return tiers;
}

AuditReport full_audit(const model::SystemTopology& topology, const AuditDeclarations& decls,
                       const ProtocolRegistry& registry) {
    AuditReport report;
    report.checklist = run_checklist(topology, decls, registry);
    report.coverage = coverage_check(topology);
    report.policy = recommend_policy(topology);

    const auto verdict = [&](std::string_view id) {
        const auto* item = find_item(report.checklist, id);
        return item ? item->verdict : Verdict::Fail;
    };
    bool children_ok = true;
    for (const char* id : {"1.1", "1.1.1", "1.2", "1.2.1", "2.1"}) {
        children_ok &= verdict(id) != Verdict::Fail;
    }
    report.compliant = report.coverage.empty() && verdict("1") == Verdict::Pass &&
                       verdict("2") == Verdict::Pass && children_ok;
    return report;
}

const ChecklistItem* find_item(const std::vector<ChecklistItem>& items, std::string_view id) {
    for (const auto& item : items) {
        if (item.id == id) return &item;
    }
    return nullptr;
}

std::string render_report(const AuditReport& report) {
    std::ostringstream out;
    out << "checklist\n";
    for (const auto& item : report.checklist) {
        out << "  " << item.id;
        for (std::size_t i = item.id.size(); i < 6; ++i) out << ' ';
        out << ' ';
        const char* v = item.verdict == Verdict::Pass   ? "PASS"
                        : item.verdict == Verdict::Fail ? "FAIL"
                                                        : "N/A ";
        out << v << "  " << item.text << '\n';
    }

    out << "coverage\n";
    if (report.coverage.empty()) {
        out << "  all wireless directions encrypted\n";
    } else {
        for (const auto& f : report.coverage) {
            out << "  UNENCRYPTED " << model::segment_name(f.segment) << ' '
                << direction_name(f.direction) << '\n';
        }
    }

    out << "policy\n";
    for (const auto& t : report.policy) {
        out << "  " << model::segment_name(t.segment) << " value=" << tier_name(t.data_value)
            << " strength=" << tier_name(t.required_strength) << " suite="
            << cipher::mode_name(t.suite.mode) << '+' << proto::protocol_name(t.suite.protocol);
        if (t.suite.integrity_warning) out << " (no built-in integrity; add a MAC)";
        if (!t.note.empty()) out << " [" << t.note << ']';
        out << '\n';
    }

    out << "compliant " << (report.compliant ? "yes" : "no") << '\n';
    return out.str();
}

}  // namespace dronesec::audit
