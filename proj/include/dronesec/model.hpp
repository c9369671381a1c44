#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "dronesec/cipher.hpp"

namespace dronesec::model {

enum class ComponentKind { MissionPlanner, RelayUnit, RemoteController, Vehicle };

enum class SegmentId : std::uint8_t {
    S1_PlannerRelay = 0x01,
    S2_RelayVehicle = 0x02,
    S3_ControllerVehicle = 0x03,
};

enum class DistanceClass { Short, Long };

enum class DataKind { FlightState, SensorCollect, SensorControl };

enum class SecurityLevel { Low = 0, Medium = 1, High = 2 };

enum class LinkMethodId {
    WiFi,
    Wimax,
    LteU,
    Zigbee,
    Bluetooth,
    Ingenu,
    Lora,
    SigFox,
    FiveG,
    AnalogRF,
};

const char* component_name(ComponentKind k);
const char* segment_name(SegmentId id);
const char* data_kind_name(DataKind k);
const char* link_method_name(LinkMethodId id);
const char* security_level_name(SecurityLevel s);
std::optional<ComponentKind> component_from_name(std::string_view name);
std::optional<SegmentId> segment_from_name(std::string_view name);
std::optional<DataKind> data_kind_from_name(std::string_view name);
std::optional<LinkMethodId> link_method_from_name(std::string_view name);

/// One row of the radio-method comparison table. Latency nullopt means the
/// method is latency-insensitive (no figure applies); energy nullopt means no
/// figure is published. Provisional rows hold expected values for technology
/// that was not deployed when the table was compiled.
struct LinkProfile {
    LinkMethodId id;
    double range_min_m = 0;
    double range_max_m = 0;
    std::optional<double> energy_mw;
    std::uint64_t rate_bps = 0;  // peak rate
    SecurityLevel security = SecurityLevel::Low;
    std::optional<double> latency_ms;
    bool provisional = false;

    bool operator==(const LinkProfile&) const = default;
};

struct Segment {
    SegmentId id;
    DistanceClass distance_class;
    std::set<DataKind> data_kinds;
    cipher::CipherConfig crypto_tx;
    cipher::CipherConfig crypto_rx;
    LinkMethodId link_method;

    bool operator==(const Segment&) const = default;
};

struct SystemTopology {
    std::set<ComponentKind> components;
    std::vector<Segment> segments;

    const Segment* segment(SegmentId id) const;
    Segment* segment(SegmentId id);

    /// Fixed endpoint pair for each of the three wireless segments.
    static std::pair<ComponentKind, ComponentKind> endpoints(SegmentId id);

    /// Throws ConfigError if a segment's endpoints are missing from
    /// components or a SegmentId appears twice.
    void validate() const;

    bool operator==(const SystemTopology&) const = default;
};

/// The reference four-component, three-segment system. All crypto configs
/// default to mode None (plaintext links).
SystemTopology default_topology();

/// The fixed comparison catalog: nine radio methods plus a generic analog RF
/// placeholder row.
const std::vector<LinkProfile>& catalog();

/// Methods from `profiles` that reach required_range_m, sustain min_rate_bps,
/// and meet min_security, sorted by energy ascending (missing energy sorts
/// last), ties by rate descending then id name. Provisional rows are skipped
/// unless include_provisional. required_range_m must be positive.
std::vector<LinkMethodId> select_method(const std::vector<LinkProfile>& profiles,
                                        double required_range_m, std::uint64_t min_rate_bps,
                                        SecurityLevel min_security,
                                        bool include_provisional = false);

/// Same selection over the built-in catalog.
std::vector<LinkMethodId> select_method(double required_range_m, std::uint64_t min_rate_bps,
                                        SecurityLevel min_security,
                                        bool include_provisional = false);

}  // namespace dronesec::model
