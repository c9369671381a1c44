#include "dronesec/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dronesec/errors.hpp"

namespace dronesec::config {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void expect_object(const Json& j, const char* where) {
    if (!j.is_object()) fail(std::string(where) + " must be an object");
}

void expect_keys(const Json& obj, std::initializer_list<const char*> allowed, const char* where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) fail("unknown key \"" + key + "\" in " + where);
    }
}

template <typename T>
T get_req(const Json& obj, const char* key, const char* where) {
    if (!obj.contains(key)) fail(std::string(where) + " is missing \"" + key + '"');
    try {
        return obj.at(key).get<T>();
    } catch (const Json::exception&) {
        fail(std::string(where) + " key \"" + key + "\" has the wrong type");
    }
}

template <typename T>
T get_opt(const Json& obj, const char* key, const char* where, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const Json::exception&) {
        fail(std::string(where) + " key \"" + key + "\" has the wrong type");
    }
}

// ---- cipher config ----

Json cipher_to_json(const cipher::CipherConfig& cfg) {
    Json j;
    j["mode"] = cipher::mode_name(cfg.mode);
    if (cfg.mode != cipher::CipherMode::None) j["key"] = to_hex(cfg.key);
    j["nonce_policy"] = cfg.nonce_policy == cipher::NoncePolicy::RandomPerMessage
                            ? "random_per_message"
                            : "counter_per_message";
    j["kcmvp_certified"] = cfg.kcmvp_certified;
    return j;
}

cipher::CipherConfig cipher_from_json(const Json& j, const char* where) {
    expect_object(j, where);
    expect_keys(j, {"mode", "key", "nonce_policy", "kcmvp_certified"}, where);
    cipher::CipherConfig cfg;
    const auto mode_str = get_req<std::string>(j, "mode", where);
    const auto mode = cipher::mode_from_name(mode_str);
    if (!mode) fail("unknown cipher mode \"" + mode_str + '"');
    cfg.mode = *mode;
    if (cfg.mode != cipher::CipherMode::None) {
        const auto key_hex = get_req<std::string>(j, "key", where);
        Bytes key;
        try {
            key = from_hex(key_hex);
        } catch (const std::invalid_argument&) {
            fail("cipher key is not valid hex");
        }
        if (key.size() != 16) fail("cipher key must be 16 bytes (32 hex digits)");
        std::copy(key.begin(), key.end(), cfg.key.begin());
    } else if (j.contains("key")) {
        fail("mode none takes no key");
    }
    const auto policy = get_opt<std::string>(j, "nonce_policy", where, "random_per_message");
    if (policy == "random_per_message") {
        cfg.nonce_policy = cipher::NoncePolicy::RandomPerMessage;
    } else if (policy == "counter_per_message") {
        cfg.nonce_policy = cipher::NoncePolicy::CounterPerMessage;
    } else {
        fail("unknown nonce policy \"" + policy + '"');
    }
    cfg.kcmvp_certified = get_opt<bool>(j, "kcmvp_certified", where, false);
    return cfg;
}

// ---- topology ----

Json topology_to_json(const model::SystemTopology& topo) {
    Json j;
    j["components"] = Json::array();
    for (const auto c : topo.components) j["components"].push_back(model::component_name(c));
    j["segments"] = Json::array();
    for (const auto& seg : topo.segments) {
        Json s;
        s["id"] = model::segment_name(seg.id);
        s["distance"] = seg.distance_class == model::DistanceClass::Short ? "short" : "long";
        s["data"] = Json::array();
        for (const auto d : seg.data_kinds) s["data"].push_back(model::data_kind_name(d));
        s["link"] = model::link_method_name(seg.link_method);
        s["crypto_tx"] = cipher_to_json(seg.crypto_tx);
        s["crypto_rx"] = cipher_to_json(seg.crypto_rx);
        j["segments"].push_back(std::move(s));
    }
    return j;
}

model::SystemTopology topology_from_json(const Json& j) {
    expect_object(j, "topology");
    expect_keys(j, {"components", "segments"}, "topology");
    model::SystemTopology topo;
    for (const auto& c : get_req<std::vector<std::string>>(j, "components", "topology")) {
        const auto kind = model::component_from_name(c);
        if (!kind) fail("unknown component \"" + c + '"');
        topo.components.insert(*kind);
    }
    if (!j.contains("segments")) fail("topology is missing \"segments\"");
    for (const auto& s : j.at("segments")) {
        expect_object(s, "segment");
        expect_keys(s, {"id", "distance", "data", "link", "crypto_tx", "crypto_rx"}, "segment");
        model::Segment seg;
        const auto id_str = get_req<std::string>(s, "id", "segment");
        const auto id = model::segment_from_name(id_str);
        if (!id) fail("unknown segment id \"" + id_str + '"');
        seg.id = *id;
        const auto dist = get_req<std::string>(s, "distance", "segment");
        if (dist == "short") {
            seg.distance_class = model::DistanceClass::Short;
        } else if (dist == "long") {
            seg.distance_class = model::DistanceClass::Long;
        } else {
            fail("unknown distance class \"" + dist + '"');
        }
        for (const auto& d : get_req<std::vector<std::string>>(s, "data", "segment")) {
            const auto kind = model::data_kind_from_name(d);
            if (!kind) fail("unknown data kind \"" + d + '"');
            seg.data_kinds.insert(*kind);
        }
        const auto link_str = get_req<std::string>(s, "link", "segment");
        const auto link = model::link_method_from_name(link_str);
        if (!link) fail("unknown link method \"" + link_str + '"');
        seg.link_method = *link;
        seg.crypto_tx = cipher_from_json(s.at("crypto_tx"), "crypto_tx");
        seg.crypto_rx = cipher_from_json(s.at("crypto_rx"), "crypto_rx");
        topo.segments.push_back(std::move(seg));
    }
    topo.validate();
    return topo;
}

Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

sim::Scenario ConfigDocument::to_scenario() const {
    sim::Scenario s;
    s.name = scenario_name;
    s.topology = topology;
    s.protocols = protocols;
    s.segment = scenario_segment;
    s.traffic.weights = traffic_weights;
    s.traffic.ticks = ticks;
    s.plan = plan;
    s.seed = seed;
    return s;
}

audit::AuditDeclarations ConfigDocument::to_declarations() const {
    audit::AuditDeclarations d;
    d.protocols = protocols;
    d.asym_provided = asym_provided;
    d.asym_randomized = asym_randomized;
    return d;
}

ConfigDocument parse_config(const std::string& text) {
    const Json j = parse_text(text);
    expect_object(j, "config");
    expect_keys(j, {"topology", "ciphers", "protocols", "scenario", "adversary"}, "config");

    ConfigDocument doc;
    if (!j.contains("topology")) fail("config is missing \"topology\"");
    doc.topology = topology_from_json(j.at("topology"));

    if (j.contains("ciphers")) {
        const auto& c = j.at("ciphers");
        expect_object(c, "ciphers");
        expect_keys(c, {"asymmetric"}, "ciphers");
        if (c.contains("asymmetric")) {
            const auto& a = c.at("asymmetric");
            expect_object(a, "ciphers.asymmetric");
            expect_keys(a, {"provided", "randomized_padding"}, "ciphers.asymmetric");
            doc.asym_provided = get_opt<bool>(a, "provided", "ciphers.asymmetric", false);
            doc.asym_randomized = get_opt<bool>(a, "randomized_padding", "ciphers.asymmetric", false);
        }
    }

    if (j.contains("protocols")) {
        const auto& p = j.at("protocols");
        expect_object(p, "protocols");
        for (const auto& [key, value] : p.items()) {
            const auto id = model::segment_from_name(key);
            if (!id) fail("unknown segment \"" + key + "\" in protocols");
            if (!value.is_string()) fail("protocol for " + key + " must be a string");
            const auto kind = proto::protocol_from_name(value.get<std::string>());
            if (!kind) fail("unknown protocol \"" + value.get<std::string>() + '"');
            doc.protocols[*id] = *kind;
        }
    }

    if (j.contains("scenario")) {
        const auto& s = j.at("scenario");
        expect_object(s, "scenario");
        expect_keys(s, {"name", "segment", "ticks", "seed", "traffic"}, "scenario");
        doc.scenario_name = get_opt<std::string>(s, "name", "scenario", doc.scenario_name);
        if (s.contains("segment")) {
            const auto seg_str = s.at("segment").get<std::string>();
            const auto id = model::segment_from_name(seg_str);
            if (!id) fail("unknown segment \"" + seg_str + "\" in scenario");
            doc.scenario_segment = *id;
        }
        doc.ticks = get_opt<std::uint64_t>(s, "ticks", "scenario", doc.ticks);
        doc.seed = get_opt<std::uint64_t>(s, "seed", "scenario", doc.seed);
        if (s.contains("traffic")) {
            const auto& t = s.at("traffic");
            expect_object(t, "traffic");
            expect_keys(t, {"distribution", "weights"}, "traffic");
            const auto dist = get_req<std::string>(t, "distribution", "traffic");
            if (dist == "uniform") {
                if (t.contains("weights")) fail("uniform traffic takes no weights");
            } else if (dist == "weighted") {
                doc.traffic_weights = get_req<std::vector<double>>(t, "weights", "traffic");
                if (doc.traffic_weights.size() != proto::kCommandCount) {
                    fail("weighted traffic needs one weight per command");
                }
            } else {
                fail("unknown traffic distribution \"" + dist + '"');
            }
        }
    }

    if (j.contains("adversary")) {
        const auto& a = j.at("adversary");
        expect_object(a, "adversary");
        expect_keys(a, {"plan", "captures_before", "injections"}, "adversary");
        const auto plan_str = get_req<std::string>(a, "plan", "adversary");
        const auto kind = sim::plan_from_name(plan_str);
        if (!kind) fail("unknown adversary plan \"" + plan_str + '"');
        doc.plan.kind = *kind;
        doc.plan.captures_before = get_opt<std::uint64_t>(a, "captures_before", "adversary", 0);
        doc.plan.injections = get_opt<std::uint64_t>(a, "injections", "adversary", 0);
        if (doc.plan.kind != sim::AdversaryPlan::Kind::ReplayAfter &&
            (a.contains("captures_before") || a.contains("injections"))) {
            fail("captures_before/injections only apply to the replay_after plan");
        }
    }

    return doc;
}

ConfigDocument load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ConfigDocument& doc) {
    Json j;
    j["topology"] = topology_to_json(doc.topology);
    if (doc.asym_provided || doc.asym_randomized) {
        j["ciphers"]["asymmetric"] = {{"provided", doc.asym_provided},
                                      {"randomized_padding", doc.asym_randomized}};
    }
    if (!doc.protocols.empty()) {
        Json p;
        for (const auto& [id, kind] : doc.protocols) {
            p[model::segment_name(id)] = proto::protocol_name(kind);
        }
        j["protocols"] = std::move(p);
    }
    Json s;
    s["name"] = doc.scenario_name;
    s["segment"] = model::segment_name(doc.scenario_segment);
    s["ticks"] = doc.ticks;
    s["seed"] = doc.seed;
    if (doc.traffic_weights.empty()) {
        s["traffic"] = {{"distribution", "uniform"}};
    } else {
        s["traffic"] = {{"distribution", "weighted"}, {"weights", doc.traffic_weights}};
    }
    j["scenario"] = std::move(s);
    Json a;
    a["plan"] = sim::plan_name(doc.plan.kind);
    if (doc.plan.kind == sim::AdversaryPlan::Kind::ReplayAfter) {
        a["captures_before"] = doc.plan.captures_before;
        a["injections"] = doc.plan.injections;
    }
    j["adversary"] = std::move(a);
    return j.dump(2) + "\n";
}

// ---- catalog ----

std::string catalog_to_text(const std::vector<model::LinkProfile>& profiles) {
    Json arr = Json::array();
    for (const auto& p : profiles) {
        Json j;
        j["id"] = model::link_method_name(p.id);
        j["range_m"] = {p.range_min_m, p.range_max_m};
        j["energy_mw"] = p.energy_mw ? Json(*p.energy_mw) : Json(nullptr);
        j["rate_bps"] = p.rate_bps;
        j["security"] = model::security_level_name(p.security);
        j["latency_ms"] = p.latency_ms ? Json(*p.latency_ms) : Json(nullptr);
        j["provisional"] = p.provisional;
        arr.push_back(std::move(j));
    }
    return Json{{"catalog", std::move(arr)}}.dump(2) + "\n";
}

std::vector<model::LinkProfile> catalog_from_text(const std::string& text) {
    const Json j = parse_text(text);
    expect_object(j, "catalog document");
    expect_keys(j, {"catalog"}, "catalog document");
    if (!j.contains("catalog")) fail("catalog document is missing \"catalog\"");
    std::vector<model::LinkProfile> out;
    for (const auto& e : j.at("catalog")) {
        expect_object(e, "catalog row");
        expect_keys(e, {"id", "range_m", "energy_mw", "rate_bps", "security", "latency_ms",
                        "provisional"},
                    "catalog row");
        model::LinkProfile p;
        const auto id_str = get_req<std::string>(e, "id", "catalog row");
        const auto id = model::link_method_from_name(id_str);
        if (!id) fail("unknown link method \"" + id_str + '"');
        p.id = *id;
        const auto range = get_req<std::vector<double>>(e, "range_m", "catalog row");
        if (range.size() != 2 || range[0] < 0 || range[0] > range[1]) {
            fail("range_m must be [lo, hi] with 0 <= lo <= hi");
        }
        p.range_min_m = range[0];
        p.range_max_m = range[1];
        if (!e.at("energy_mw").is_null()) p.energy_mw = e.at("energy_mw").get<double>();
        p.rate_bps = get_req<std::uint64_t>(e, "rate_bps", "catalog row");
        const auto sec = get_req<std::string>(e, "security", "catalog row");
        if (sec == "low") {
            p.security = model::SecurityLevel::Low;
        } else if (sec == "medium") {
            p.security = model::SecurityLevel::Medium;
        } else if (sec == "high") {
            p.security = model::SecurityLevel::High;
        } else {
            fail("unknown security level \"" + sec + '"');
        }
        if (!e.at("latency_ms").is_null()) p.latency_ms = e.at("latency_ms").get<double>();
        p.provisional = get_opt<bool>(e, "provisional", "catalog row", false);
        out.push_back(std::move(p));
    }
    return out;
}

// ---- metrics / batch ----

std::string metrics_to_text(const sim::Metrics& m) {
    Json j;
    j["frames_sent"] = m.frames_sent;
    j["frames_accepted"] = m.frames_accepted;
    j["replays_attempted"] = m.replays_attempted;
    j["replays_executed"] = m.replays_executed;
    if (m.replay_success_rate) j["replay_success_rate"] = *m.replay_success_rate;
    if (m.codebook_completion_tick) j["codebook_completion_tick"] = *m.codebook_completion_tick;
    if (m.prediction_accuracy) j["prediction_accuracy"] = *m.prediction_accuracy;
    Json hist = Json::object();
    for (const auto& [reason, count] : m.rejection_histogram) hist[reason] = count;
    j["rejection_histogram"] = std::move(hist);
    return j.dump(2) + "\n";
}

sim::Metrics metrics_from_text(const std::string& text) {
    const Json j = parse_text(text);
    expect_object(j, "metrics");
    expect_keys(j,
                {"frames_sent", "frames_accepted", "replays_attempted", "replays_executed",
                 "replay_success_rate", "codebook_completion_tick", "prediction_accuracy",
                 "rejection_histogram"},
                "metrics");
    sim::Metrics m;
    m.frames_sent = get_req<std::uint64_t>(j, "frames_sent", "metrics");
    m.frames_accepted = get_req<std::uint64_t>(j, "frames_accepted", "metrics");
    m.replays_attempted = get_req<std::uint64_t>(j, "replays_attempted", "metrics");
    m.replays_executed = get_req<std::uint64_t>(j, "replays_executed", "metrics");
    if (j.contains("replay_success_rate")) m.replay_success_rate = j.at("replay_success_rate").get<double>();
    if (j.contains("codebook_completion_tick")) {
        m.codebook_completion_tick = j.at("codebook_completion_tick").get<std::uint64_t>();
    }
    if (j.contains("prediction_accuracy")) m.prediction_accuracy = j.at("prediction_accuracy").get<double>();
    if (j.contains("rejection_histogram")) {
        for (const auto& [reason, count] : j.at("rejection_histogram").items()) {
            m.rejection_histogram[reason] = count.get<std::uint64_t>();
        }
    }
    return m;
}

std::string batch_to_text(const sim::BatchStats& stats) {
    Json metrics = Json::object();
    for (const auto& [name, stat] : stats.stats) {
        metrics[name] = {{"mean", stat.mean}, {"stddev", stat.stddev}, {"count", stat.count}};
    }
    return Json{{"repetitions", stats.repetitions}, {"metrics", std::move(metrics)}}.dump(2) + "\n";
}

sim::BatchStats batch_from_text(const std::string& text) {
    const Json j = parse_text(text);
    expect_object(j, "batch stats");
    expect_keys(j, {"repetitions", "metrics"}, "batch stats");
    sim::BatchStats out;
    out.repetitions = get_req<std::uint64_t>(j, "repetitions", "batch stats");
    if (j.contains("metrics")) {
        for (const auto& [name, stat] : j.at("metrics").items()) {
            expect_keys(stat, {"mean", "stddev", "count"}, "batch metric");
            sim::MetricStat s;
            s.mean = get_req<double>(stat, "mean", "batch metric");
            s.stddev = get_req<double>(stat, "stddev", "batch metric");
            s.count = get_req<std::uint64_t>(stat, "count", "batch metric");
            out.stats[name] = s;
        }
    }
    return out;
}

// ---- audit report ----

namespace {

Json verdict_to_json(audit::Verdict v) { return audit::verdict_name(v); }

audit::Verdict verdict_from_json(const Json& j) {
    const auto s = j.get<std::string>();
    if (s == "pass") return audit::Verdict::Pass;
    if (s == "fail") return audit::Verdict::Fail;
    if (s == "n/a") return audit::Verdict::NotApplicable;
    fail("unknown verdict \"" + s + '"');
}

Json tier_to_json(audit::Tier t) { return audit::tier_name(t); }

audit::Tier tier_from_json(const Json& j) {
    const auto s = j.get<std::string>();
    if (s == "low") return audit::Tier::Low;
    if (s == "medium") return audit::Tier::Medium;
    if (s == "high") return audit::Tier::High;
    fail("unknown tier \"" + s + '"');
}

}  // namespace

std::string audit_report_to_text(const audit::AuditReport& report) {
    Json j;
    j["checklist"] = Json::array();
    for (const auto& item : report.checklist) {
        j["checklist"].push_back(
            {{"id", item.id}, {"text", item.text}, {"verdict", verdict_to_json(item.verdict)}});
    }
    j["coverage"] = Json::array();
    for (const auto& f : report.coverage) {
        // severity is uniformly high: plaintext on the air
        j["coverage"].push_back({{"segment", model::segment_name(f.segment)},
                                 {"direction", audit::direction_name(f.direction)},
                                 {"severity", "high"}});
    }
    j["policy"] = Json::array();
    for (const auto& t : report.policy) {
        j["policy"].push_back({{"segment", model::segment_name(t.segment)},
                               {"data_value", tier_to_json(t.data_value)},
                               {"required_strength", tier_to_json(t.required_strength)},
                               {"suite",
                                {{"mode", cipher::mode_name(t.suite.mode)},
                                 {"protocol", proto::protocol_name(t.suite.protocol)},
                                 {"integrity_warning", t.suite.integrity_warning}}},
                               {"note", t.note}});
    }
    j["compliant"] = report.compliant;
    return j.dump(2) + "\n";
}

audit::AuditReport audit_report_from_text(const std::string& text) {
    const Json j = parse_text(text);
    expect_object(j, "audit report");
    expect_keys(j, {"checklist", "coverage", "policy", "compliant"}, "audit report");
    audit::AuditReport report;
    for (const auto& item : j.at("checklist")) {
        expect_keys(item, {"id", "text", "verdict"}, "checklist item");
        report.checklist.push_back({get_req<std::string>(item, "id", "checklist item"),
                                    get_req<std::string>(item, "text", "checklist item"),
                                    verdict_from_json(item.at("verdict"))});
    }
    for (const auto& f : j.at("coverage")) {
        expect_keys(f, {"segment", "direction", "severity"}, "coverage finding");
        const auto seg = model::segment_from_name(get_req<std::string>(f, "segment", "finding"));
        if (!seg) fail("unknown segment in coverage finding");
        const auto dir = get_req<std::string>(f, "direction", "finding");
        if (dir != "tx" && dir != "rx") fail("unknown direction in coverage finding");
        if (get_opt<std::string>(f, "severity", "finding", "high") != "high") {
            fail("coverage findings are always high severity");
        }
        report.coverage.push_back(
            {*seg, dir == "tx" ? audit::Direction::Tx : audit::Direction::Rx});
    }
    for (const auto& t : j.at("policy")) {
        expect_keys(t, {"segment", "data_value", "required_strength", "suite", "note"},
                    "policy tier");
        audit::PolicyTier tier;
        const auto seg = model::segment_from_name(get_req<std::string>(t, "segment", "tier"));
        if (!seg) fail("unknown segment in policy tier");
        tier.segment = *seg;
        tier.data_value = tier_from_json(t.at("data_value"));
        tier.required_strength = tier_from_json(t.at("required_strength"));
        const auto& suite = t.at("suite");
        expect_keys(suite, {"mode", "protocol", "integrity_warning"}, "suite");
        const auto mode = cipher::mode_from_name(get_req<std::string>(suite, "mode", "suite"));
        if (!mode) fail("unknown mode in suite");
        tier.suite.mode = *mode;
        const auto pk = proto::protocol_from_name(get_req<std::string>(suite, "protocol", "suite"));
        if (!pk) fail("unknown protocol in suite");
        tier.suite.protocol = *pk;
        tier.suite.integrity_warning = get_req<bool>(suite, "integrity_warning", "suite");
        tier.note = get_opt<std::string>(t, "note", "tier", "");
        report.policy.push_back(std::move(tier));
    }
    report.compliant = get_req<bool>(j, "compliant", "audit report");
    return report;
}

// ---- protocol registry ----

std::string registry_to_text(const audit::ProtocolRegistry& registry) {
    Json arr = Json::array();
    for (const auto& e : registry.entries) {
        arr.push_back({{"name", e.name}, {"trusted", e.trusted}});
    }
    return Json{{"protocols", std::move(arr)}}.dump(2) + "\n";
}

audit::ProtocolRegistry registry_from_text(const std::string& text) {
    const Json j = parse_text(text);
    expect_object(j, "protocol registry");
    expect_keys(j, {"protocols"}, "protocol registry");
    audit::ProtocolRegistry out;
    if (!j.contains("protocols")) fail("registry is missing \"protocols\"");
    for (const auto& e : j.at("protocols")) {
        expect_keys(e, {"name", "trusted"}, "registry entry");
        out.entries.push_back({get_req<std::string>(e, "name", "registry entry"),
                               get_req<bool>(e, "trusted", "registry entry")});
    }
    return out;
}

audit::ProtocolRegistry load_registry(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open registry file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return registry_from_text(buf.str());
}

}  // namespace dronesec::config
