#pragma once

#include <filesystem>
#include <string>

#include "dronesec/audit.hpp"
#include "dronesec/sim.hpp"

namespace dronesec::config {

/// In-memory form of the experiment configuration file. The file is JSON with
/// five top-level sections (topology, ciphers, protocols, scenario,
/// adversary); unknown keys anywhere are rejected. Schema reference:
/// docs/file-formats.md.
struct ConfigDocument {
    model::SystemTopology topology;
    bool asym_provided = false;
    bool asym_randomized = false;
    std::map<model::SegmentId, proto::ProtocolKind> protocols;
    std::string scenario_name = "unnamed";
    model::SegmentId scenario_segment = model::SegmentId::S3_ControllerVehicle;
    std::uint64_t ticks = 100;
    std::uint64_t seed = 1;
    std::vector<double> traffic_weights;  // empty = uniform
    sim::AdversaryPlan plan;

    sim::Scenario to_scenario() const;
    audit::AuditDeclarations to_declarations() const;

    bool operator==(const ConfigDocument&) const = default;
};

ConfigDocument parse_config(const std::string& text);          // throws ConfigError
ConfigDocument load_config(const std::filesystem::path& path); // throws ConfigError
std::string serialize_config(const ConfigDocument& doc);

/// Catalog save/load through the same structured format.
std::string catalog_to_text(const std::vector<model::LinkProfile>& profiles);
std::vector<model::LinkProfile> catalog_from_text(const std::string& text);

/// Machine-readable run metrics; parses back to the identical value.
std::string metrics_to_text(const sim::Metrics& metrics);
sim::Metrics metrics_from_text(const std::string& text);

std::string batch_to_text(const sim::BatchStats& stats);
sim::BatchStats batch_from_text(const std::string& text);

std::string audit_report_to_text(const audit::AuditReport& report);
audit::AuditReport audit_report_from_text(const std::string& text);

std::string registry_to_text(const audit::ProtocolRegistry& registry);
audit::ProtocolRegistry registry_from_text(const std::string& text);
audit::ProtocolRegistry load_registry(const std::filesystem::path& path);

}  // namespace dronesec::config
