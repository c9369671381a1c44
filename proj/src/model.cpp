#include "dronesec/model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "dronesec/errors.hpp"

namespace dronesec::model {

const char* component_name(ComponentKind k) {
    switch (k) {
        case ComponentKind::MissionPlanner: return "mission_planner";
        case ComponentKind::RelayUnit: return "relay_unit";
        case ComponentKind::RemoteController: return "remote_controller";
        case ComponentKind::Vehicle: return "vehicle";
    }
    return "?";
}

const char* segment_name(SegmentId id) {
    switch (id) {
        case SegmentId::S1_PlannerRelay: return "s1_planner_relay";
        case SegmentId::S2_RelayVehicle: return "s2_relay_vehicle";
        case SegmentId::S3_ControllerVehicle: return "s3_controller_vehicle";
    }
    return "?";
}

const char* data_kind_name(DataKind k) {
    switch (k) {
        case DataKind::FlightState: return "flight_state";
        case DataKind::SensorCollect: return "sensor_collect";
        case DataKind::SensorControl: return "sensor_control";
    }
    return "?";
}

const char* link_method_name(LinkMethodId id) {
    switch (id) {
        case LinkMethodId::WiFi: return "wifi";
        case LinkMethodId::Wimax: return "wimax";
        case LinkMethodId::LteU: return "lte_u";
        case LinkMethodId::Zigbee: return "zigbee";
        case LinkMethodId::Bluetooth: return "bluetooth";
        case LinkMethodId::Ingenu: return "ingenu";
        case LinkMethodId::Lora: return "lora";
        case LinkMethodId::SigFox: return "sigfox";
        case LinkMethodId::FiveG: return "five_g";
        case LinkMethodId::AnalogRF: return "analog_rf";
    }
    return "?";
}

const char* security_level_name(SecurityLevel s) {
    switch (s) {
        case SecurityLevel::Low: return "low";
        case SecurityLevel::Medium: return "medium";
        case SecurityLevel::High: return "high";
    }
    return "?";
}

namespace {

template <typename Enum, typename NameFn>
std::optional<Enum> from_name(std::string_view name, NameFn name_fn, std::initializer_list<Enum> all) {
    for (Enum e : all) {
        if (name == name_fn(e)) return e;
    }
    return std::nullopt;
}

}  // namespace

std::optional<ComponentKind> component_from_name(std::string_view name) {
    return from_name(name, component_name,
                     {ComponentKind::MissionPlanner, ComponentKind::RelayUnit,
                      ComponentKind::RemoteController, ComponentKind::Vehicle});
}

std::optional<SegmentId> segment_from_name(std::string_view name) {
    return from_name(name, segment_name,
                     {SegmentId::S1_PlannerRelay, SegmentId::S2_RelayVehicle,
                      SegmentId::S3_ControllerVehicle});
}

std::optional<DataKind> data_kind_from_name(std::string_view name) {
    return from_name(name, data_kind_name,
                     {DataKind::FlightState, DataKind::SensorCollect, DataKind::SensorControl});
}

std::optional<LinkMethodId> link_method_from_name(std::string_view name) {
    return from_name(name, link_method_name,
                     {LinkMethodId::WiFi, LinkMethodId::Wimax, LinkMethodId::LteU,
                      LinkMethodId::Zigbee, LinkMethodId::Bluetooth, LinkMethodId::Ingenu,
                      LinkMethodId::Lora, LinkMethodId::SigFox, LinkMethodId::FiveG,
                      LinkMethodId::AnalogRF});
}

const Segment* SystemTopology::segment(SegmentId id) const {
    for (const auto& s : segments) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

Segment* SystemTopology::segment(SegmentId id) {
    for (auto& s : segments) {
        if (s.id == id) return &s;
    }
    return nullptr;
}

std::pair<ComponentKind, ComponentKind> SystemTopology::endpoints(SegmentId id) {
    switch (id) {
        case SegmentId::S1_PlannerRelay:
            return {ComponentKind::MissionPlanner, ComponentKind::RelayUnit};
        case SegmentId::S2_RelayVehicle:
            return {ComponentKind::RelayUnit, ComponentKind::Vehicle};
        case SegmentId::S3_ControllerVehicle:
            return {ComponentKind::RemoteController, ComponentKind::Vehicle};
    }
    throw ConfigError("unknown segment id");
}

void SystemTopology::validate() const {
    std::set<SegmentId> seen;
    for (const auto& s : segments) {
        if (!seen.insert(s.id).second) {
            throw ConfigError(std::string("duplicate segment ") + segment_name(s.id));
        }
        const auto [a, b] = endpoints(s.id);
        if (!components.contains(a) || !components.contains(b)) {
            throw ConfigError(std::string("segment ") + segment_name(s.id) +
                              " references a component missing from the topology");
        }
    }

    // The relay forwards traffic unchanged, so both of its hops must carry
    // the same data kinds.
    const auto* s1 = segment(SegmentId::S1_PlannerRelay);
    const auto* s2 = segment(SegmentId::S2_RelayVehicle);
    if (s1 && s2 && s1->data_kinds != s2->data_kinds) {
        throw ConfigError("relay segments must carry identical data kinds");
    }
}

SystemTopology default_topology() {
    SystemTopology topo;
    topo.components = {ComponentKind::MissionPlanner, ComponentKind::RelayUnit,
                       ComponentKind::RemoteController, ComponentKind::Vehicle};

    // S1/S2 carry the same data kinds: the relay forwards traffic unchanged.
    const std::set<DataKind> relayed = {DataKind::FlightState, DataKind::SensorCollect};
    const std::set<DataKind> control = {DataKind::FlightState, DataKind::SensorControl};

    topo.segments = {
        Segment{SegmentId::S1_PlannerRelay, DistanceClass::Short, relayed, {}, {}, LinkMethodId::WiFi},
        Segment{SegmentId::S2_RelayVehicle, DistanceClass::Long, relayed, {}, {}, LinkMethodId::LteU},
        Segment{SegmentId::S3_ControllerVehicle, DistanceClass::Long, control, {}, {}, LinkMethodId::WiFi},
    };
    return topo;
}

const std::vector<LinkProfile>& catalog() {
    // Range strings of the form "X >" are stored as [0, X]; see the config
    // format notes for how each published figure maps onto these fields.
    static const std::vector<LinkProfile> kCatalog = {
        {LinkMethodId::WiFi, 50, 250, 835.0, 200'000'000, SecurityLevel::Medium, 50.0, false},
        {LinkMethodId::Wimax, 0, 5'000, 3'200.0, 1'000'000'000, SecurityLevel::High, 40.0, false},
        {LinkMethodId::LteU, 2'000, 5'000, 1'000.0, 1'000'000'000, SecurityLevel::High, 9.0, false},
        {LinkMethodId::Zigbee, 0, 500, 36.9, 250'000, SecurityLevel::High, 20.0, false},
        {LinkMethodId::Bluetooth, 0, 10, 215.0, 3'000'000, SecurityLevel::Medium, 100.0, false},
        {LinkMethodId::Ingenu, 0, 2'000, 160.0, 600'000, SecurityLevel::High, std::nullopt, false},
        {LinkMethodId::Lora, 0, 2'000, 100.0, 100, SecurityLevel::High, std::nullopt, false},
        {LinkMethodId::SigFox, 0, 2'000, 100.0, 50'000, SecurityLevel::Low, std::nullopt, false},
        {LinkMethodId::FiveG, 0, 50'000, std::nullopt, 50'000'000'000, SecurityLevel::Medium, 1.0, true},
        {LinkMethodId::AnalogRF, 0, 10'000, std::nullopt, 0, SecurityLevel::Low, std::nullopt, false},
    };
    return kCatalog;
}

std::vector<LinkMethodId> select_method(const std::vector<LinkProfile>& profiles,
                                        double required_range_m, std::uint64_t min_rate_bps,
                                        SecurityLevel min_security, bool include_provisional) {
    if (!(required_range_m > 0)) throw std::invalid_argument("required range must be positive");

    std::vector<const LinkProfile*> hits;
    for (const auto& p : profiles) {
        if (p.provisional && !include_provisional) continue;
        if (p.range_max_m < required_range_m) continue;
        if (p.rate_bps < min_rate_bps) continue;
        if (static_cast<int>(p.security) < static_cast<int>(min_security)) continue;
        hits.push_back(&p);
    }
    std::sort(hits.begin(), hits.end(), [](const LinkProfile* a, const LinkProfile* b) {
        const double ea = a->energy_mw.value_or(std::numeric_limits<double>::infinity());
        const double eb = b->energy_mw.value_or(std::numeric_limits<double>::infinity());
        if (ea != eb) return ea < eb;
        if (a->rate_bps != b->rate_bps) return a->rate_bps > b->rate_bps;
        return std::string_view(link_method_name(a->id)) < std::string_view(link_method_name(b->id));
    });

    std::vector<LinkMethodId> out;
    out.reserve(hits.size());
    for (const auto* p : hits) out.push_back(p->id);
    return out;
}

std::vector<LinkMethodId> select_method(double required_range_m, std::uint64_t min_rate_bps,
                                        SecurityLevel min_security, bool include_provisional) {
    return select_method(catalog(), required_range_m, min_rate_bps, min_security,
                         include_provisional);
}

}  // namespace dronesec::model
