#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dronesec/model.hpp"
#include "dronesec/proto.hpp"

namespace dronesec::audit {

enum class Verdict { Pass, Fail, NotApplicable };

const char* verdict_name(Verdict v);

struct ChecklistItem {
    std::string id;    // hierarchical code, e.g. "1.1.1"
    std::string text;
    Verdict verdict = Verdict::NotApplicable;

    bool operator==(const ChecklistItem&) const = default;
};

enum class Direction { Tx, Rx };

const char* direction_name(Direction d);

/// An unencrypted wireless direction. Severity is uniformly high: plaintext on
/// the air defeats the point of mounting a certified module anywhere else.
struct CoverageFinding {
    model::SegmentId segment;
    Direction direction;

    bool operator==(const CoverageFinding&) const = default;
};

enum class Tier { Low = 0, Medium = 1, High = 2 };

const char* tier_name(Tier t);

struct SuiteRecommendation {
    cipher::CipherMode mode = cipher::CipherMode::GCM;
    proto::ProtocolKind protocol = proto::ProtocolKind::Hardened;
    bool integrity_warning = false;  // set for suites lacking built-in integrity

    bool operator==(const SuiteRecommendation&) const = default;
};

struct PolicyTier {
    model::SegmentId segment = model::SegmentId::S1_PlannerRelay;
    Tier data_value = Tier::Low;
    Tier required_strength = Tier::Low;
    SuiteRecommendation suite;
    std::string note;

    bool operator==(const PolicyTier&) const = default;
};

/// Declared facts the audit cannot derive from the topology itself.
struct AuditDeclarations {
    std::map<model::SegmentId, proto::ProtocolKind> protocols;
    bool asym_provided = false;    // module claims an asymmetric cipher
    bool asym_randomized = false;  // ...with randomized (probabilistic) encryption

    bool operator==(const AuditDeclarations&) const = default;
};

/// Known wireless protocols and whether each is considered trustworthy.
struct ProtocolRegistry {
    struct Entry {
        std::string name;
        bool trusted;
        bool operator==(const Entry&) const = default;
    };
    std::vector<Entry> entries;

    std::optional<bool> trusted(std::string_view name) const;
    static const ProtocolRegistry& builtin();

    bool operator==(const ProtocolRegistry&) const = default;
};

struct AuditReport {
    std::vector<ChecklistItem> checklist;
    std::vector<CoverageFinding> coverage;
    std::vector<PolicyTier> policy;
    bool compliant = false;

    bool operator==(const AuditReport&) const = default;
};

/// Raw leaf outcomes, one per checklist question, before parent gating is
/// applied. Kept separate so the gating rule is testable over every
/// combination.
struct ChecklistPredicates {
    bool kcmvp_declared = false;
    bool symmetric_present = false;
    bool symmetric_modes_safe = false;
    bool asym_declared = false;
    bool asym_randomized_ok = false;
    bool protocols_trusted = false;
    bool protocols_replay_protected = false;
};

/// Applies the hierarchy: a child is NotApplicable whenever its parent is not
/// Pass. Item 1.2 is NotApplicable (rather than Fail) when no asymmetric
/// cipher is declared; not providing one is not a deficiency.
std::vector<ChecklistItem> assemble_checklist(const ChecklistPredicates& p);

/// Evaluates the checklist over the topology's cipher configs and the
/// declared protocols. Mode verdicts are corroborated by the determinism
/// probe, run with a fixed internal seed so results are reproducible.
std::vector<ChecklistItem> run_checklist(const model::SystemTopology& topology,
                                         const AuditDeclarations& decls,
                                         const ProtocolRegistry& registry = ProtocolRegistry::builtin());

/// One finding per (segment, direction) transmitting in plaintext.
std::vector<CoverageFinding> coverage_check(const model::SystemTopology& topology);

/// Per-segment encryption-strength tiers. Segments carrying collected sensor
/// data are always raised to the strongest tier present in the report.
std::vector<PolicyTier> recommend_policy(const model::SystemTopology& topology);

SuiteRecommendation suite_for(Tier strength);

AuditReport full_audit(const model::SystemTopology& topology, const AuditDeclarations& decls,
                       const ProtocolRegistry& registry = ProtocolRegistry::builtin());

/// Fixed-layout human-readable rendering (checklist, findings, tiers).
std::string render_report(const AuditReport& report);

const ChecklistItem* find_item(const std::vector<ChecklistItem>& items, std::string_view id);

}  // namespace dronesec::audit
