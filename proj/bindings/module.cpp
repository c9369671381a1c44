#include <iostream>

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dronesec/adversary.hpp"
#include "dronesec/audit.hpp"
#include "dronesec/cli.hpp"
#include "dronesec/config.hpp"
#include "dronesec/errors.hpp"
#include "dronesec/sim.hpp"
#include "dronesec/toycipher.hpp"

namespace py = pybind11;
using namespace dronesec;

namespace {

Bytes to_vec(const py::bytes& b) {
    const std::string s = b;
    return Bytes(s.begin(), s.end());
}

py::bytes to_py(std::span<const std::uint8_t> v) {
    return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

cipher::Key key_from_bytes(const py::bytes& b) {
    const Bytes v = to_vec(b);
    if (v.size() != 16) throw InvalidLength("key must be 16 bytes");
    cipher::Key k{};
    std::copy(v.begin(), v.end(), k.begin());
    return k;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Drone wireless-link security simulator and audit toolkit";

    py::register_exception<AuthFailure>(m, "AuthFailure");
    py::register_exception<PaddingError>(m, "PaddingError");
    py::register_exception<ModeMismatch>(m, "ModeMismatch");
    py::register_exception<DecodeError>(m, "DecodeError");
    py::register_exception<InvalidLength>(m, "InvalidLength");
    py::register_exception<SeqExhausted>(m, "SeqExhausted");
    py::register_exception<InconsistentObservation>(m, "InconsistentObservation");
    py::register_exception<ConfigError>(m, "ConfigError");

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", &Rng::next)
        .def("below", &Rng::below, py::arg("bound"))
        .def("uniform", &Rng::uniform);

    // ---- model ----

    py::enum_<model::ComponentKind>(m, "ComponentKind")
        .value("MissionPlanner", model::ComponentKind::MissionPlanner)
        .value("RelayUnit", model::ComponentKind::RelayUnit)
        .value("RemoteController", model::ComponentKind::RemoteController)
        .value("Vehicle", model::ComponentKind::Vehicle);

    py::enum_<model::SegmentId>(m, "SegmentId")
        .value("S1_PlannerRelay", model::SegmentId::S1_PlannerRelay)
        .value("S2_RelayVehicle", model::SegmentId::S2_RelayVehicle)
        .value("S3_ControllerVehicle", model::SegmentId::S3_ControllerVehicle);

    py::enum_<model::DistanceClass>(m, "DistanceClass")
        .value("Short", model::DistanceClass::Short)
        .value("Long", model::DistanceClass::Long);

    py::enum_<model::DataKind>(m, "DataKind")
        .value("FlightState", model::DataKind::FlightState)
        .value("SensorCollect", model::DataKind::SensorCollect)
        .value("SensorControl", model::DataKind::SensorControl);

    py::enum_<model::SecurityLevel>(m, "SecurityLevel")
        .value("Low", model::SecurityLevel::Low)
        .value("Medium", model::SecurityLevel::Medium)
        .value("High", model::SecurityLevel::High);

    py::enum_<model::LinkMethodId>(m, "LinkMethodId")
        .value("WiFi", model::LinkMethodId::WiFi)
        .value("Wimax", model::LinkMethodId::Wimax)
        .value("LteU", model::LinkMethodId::LteU)
        .value("Zigbee", model::LinkMethodId::Zigbee)
        .value("Bluetooth", model::LinkMethodId::Bluetooth)
        .value("Ingenu", model::LinkMethodId::Ingenu)
        .value("Lora", model::LinkMethodId::Lora)
        .value("SigFox", model::LinkMethodId::SigFox)
        .value("FiveG", model::LinkMethodId::FiveG)
        .value("AnalogRF", model::LinkMethodId::AnalogRF);

    py::class_<model::LinkProfile>(m, "LinkProfile")
        .def_readonly("id", &model::LinkProfile::id)
        .def_readonly("range_min_m", &model::LinkProfile::range_min_m)
        .def_readonly("range_max_m", &model::LinkProfile::range_max_m)
        .def_readonly("energy_mw", &model::LinkProfile::energy_mw)
        .def_readonly("rate_bps", &model::LinkProfile::rate_bps)
        .def_readonly("security", &model::LinkProfile::security)
        .def_readonly("latency_ms", &model::LinkProfile::latency_ms)
        .def_readonly("provisional", &model::LinkProfile::provisional);

    // ---- cipher ----

    py::enum_<cipher::CipherMode>(m, "CipherMode")
        .value("None_", cipher::CipherMode::None)
        .value("ECB", cipher::CipherMode::ECB)
        .value("CBC", cipher::CipherMode::CBC)
        .value("CTR", cipher::CipherMode::CTR)
        .value("GCM", cipher::CipherMode::GCM);

    py::enum_<cipher::NoncePolicy>(m, "NoncePolicy")
        .value("RandomPerMessage", cipher::NoncePolicy::RandomPerMessage)
        .value("CounterPerMessage", cipher::NoncePolicy::CounterPerMessage);

    py::enum_<cipher::ProbeResult>(m, "ProbeResult")
        .value("Deterministic", cipher::ProbeResult::Deterministic)
        .value("Randomized", cipher::ProbeResult::Randomized);

    py::class_<cipher::CipherConfig>(m, "CipherConfig")
        .def(py::init([](cipher::CipherMode mode, py::object key, cipher::NoncePolicy policy,
                         bool certified) {
                 cipher::CipherConfig cfg;
                 cfg.mode = mode;
                 if (!key.is_none()) cfg.key = key_from_bytes(py::cast<py::bytes>(key));
                 cfg.nonce_policy = policy;
                 cfg.kcmvp_certified = certified;
                 return cfg;
             }),
             py::arg("mode") = cipher::CipherMode::None, py::arg("key") = py::none(),
             py::arg("nonce_policy") = cipher::NoncePolicy::RandomPerMessage,
             py::arg("kcmvp_certified") = false)
        .def_readwrite("mode", &cipher::CipherConfig::mode)
        .def_property(
            "key", [](const cipher::CipherConfig& c) { return to_py(c.key); },
            [](cipher::CipherConfig& c, const py::bytes& b) { c.key = key_from_bytes(b); })
        .def_readwrite("nonce_policy", &cipher::CipherConfig::nonce_policy)
        .def_readwrite("kcmvp_certified", &cipher::CipherConfig::kcmvp_certified)
        .def(py::self == py::self);

    py::class_<cipher::Ciphertext>(m, "Ciphertext")
        .def_property_readonly("body", [](const cipher::Ciphertext& c) { return to_py(c.body); })
        .def_property_readonly("nonce_or_iv",
                               [](const cipher::Ciphertext& c) -> py::object {
                                   if (!c.nonce_or_iv) return py::none();
                                   return to_py(*c.nonce_or_iv);
                               })
        .def_property_readonly("tag", [](const cipher::Ciphertext& c) -> py::object {
            if (!c.tag) return py::none();
            return to_py(*c.tag);
        })
        .def(py::self == py::self);

    m.def("replay_safe", &cipher::replay_safe, py::arg("mode"));
    m.def("block_encrypt", [](const py::bytes& key, const py::bytes& block) {
        return to_py(cipher::block_encrypt(to_vec(key), to_vec(block)));
    });
    m.def("block_decrypt", [](const py::bytes& key, const py::bytes& block) {
        return to_py(cipher::block_decrypt(to_vec(key), to_vec(block)));
    });
    m.def(
        "encrypt",
        [](const cipher::CipherConfig& cfg, const py::bytes& pt, Rng& rng, std::uint64_t idx) {
            return cipher::encrypt(cfg, to_vec(pt), rng, idx);
        },
        py::arg("cfg"), py::arg("plaintext"), py::arg("rng"), py::arg("msg_index") = 0);
    m.def(
        "decrypt",
        [](const cipher::CipherConfig& cfg, const cipher::Ciphertext& ct) {
            return to_py(cipher::decrypt(cfg, ct));
        },
        py::arg("cfg"), py::arg("ciphertext"));
    m.def("probe_determinism", &cipher::probe_determinism, py::arg("cfg"), py::arg("trials"),
          py::arg("rng"));

    // ---- protocol ----

    py::enum_<proto::Command>(m, "Command")
        .value("Up", proto::Command::Up)
        .value("Down", proto::Command::Down)
        .value("Forward", proto::Command::Forward)
        .value("Backward", proto::Command::Backward)
        .value("Left", proto::Command::Left)
        .value("Right", proto::Command::Right)
        .value("Hover", proto::Command::Hover)
        .value("ReturnHome", proto::Command::ReturnHome);

    py::enum_<proto::ProtocolKind>(m, "ProtocolKind")
        .value("Naive", proto::ProtocolKind::Naive)
        .value("Hardened", proto::ProtocolKind::Hardened);

    py::class_<proto::Frame> frame(m, "Frame");
    frame.def(py::init<>())
        .def_readwrite("version", &proto::Frame::version)
        .def_readwrite("protocol", &proto::Frame::protocol)
        .def_readwrite("segment", &proto::Frame::segment)
        .def_readwrite("seq", &proto::Frame::seq)
        .def_property(
            "body", [](const proto::Frame& f) { return to_py(f.body); },
            [](proto::Frame& f, const py::bytes& b) { f.body = to_vec(b); })
        .def("encode", [](const proto::Frame& f) { return to_py(f.encode()); })
        .def_static("decode",
                    [](const py::bytes& wire) { return proto::Frame::decode(to_vec(wire)); })
        .def("header_aad", [](const proto::Frame& f) { return to_py(f.header_aad()); })
        .def(py::self == py::self);

    py::class_<proto::ReplayWindow> window(m, "ReplayWindow");

    py::enum_<proto::ReplayWindow::Check>(window, "Check")
        .value("Accept", proto::ReplayWindow::Check::Accept)
        .value("Duplicate", proto::ReplayWindow::Check::Duplicate)
        .value("TooOld", proto::ReplayWindow::Check::TooOld);

    window.def(py::init<>())
        .def("check", &proto::ReplayWindow::check, py::arg("seq"))
        .def("check_and_update", &proto::ReplayWindow::check_and_update, py::arg("seq"))
        .def_property_readonly("highest_seq", &proto::ReplayWindow::highest_seq)
        .def_property_readonly("window_mask", &proto::ReplayWindow::window_mask)
        .def(py::self == py::self);

    py::enum_<proto::RejectReason>(m, "RejectReason")
        .value("AuthFailure", proto::RejectReason::AuthFailure)
        .value("ReplayDuplicate", proto::RejectReason::ReplayDuplicate)
        .value("ReplayTooOld", proto::RejectReason::ReplayTooOld);

    py::class_<proto::Rejection>(m, "Rejection")
        .def_readonly("reason", &proto::Rejection::reason)
        .def(py::self == py::self);

    py::class_<proto::LinkEndpoint>(m, "LinkEndpoint")
        .def(py::init<cipher::CipherConfig, proto::ProtocolKind, model::SegmentId>(),
             py::arg("cfg"), py::arg("protocol"), py::arg("segment"))
        .def("naive_send", &proto::LinkEndpoint::naive_send, py::arg("cmd"), py::arg("rng"))
        .def("naive_receive", &proto::LinkEndpoint::naive_receive, py::arg("frame"))
        .def("hardened_send", &proto::LinkEndpoint::hardened_send, py::arg("cmd"), py::arg("rng"))
        .def("hardened_receive", &proto::LinkEndpoint::hardened_receive, py::arg("frame"))
        .def_property_readonly("send_seq", &proto::LinkEndpoint::send_seq)
        .def("set_send_seq", &proto::LinkEndpoint::set_send_seq, py::arg("seq"))
        .def_property_readonly("window", &proto::LinkEndpoint::window);

    // ---- adversary ----

    py::class_<adversary::Observation>(m, "Observation")
        .def(py::init([](std::uint64_t tick, const py::bytes& frame_bytes, proto::Command mv) {
                 return adversary::Observation{tick, to_vec(frame_bytes), mv};
             }),
             py::arg("tick"), py::arg("frame_bytes"), py::arg("movement"))
        .def_readonly("tick", &adversary::Observation::tick)
        .def_property_readonly(
            "frame_bytes", [](const adversary::Observation& o) { return to_py(o.frame_bytes); })
        .def_readonly("movement", &adversary::Observation::movement);

    py::enum_<adversary::FailureReason>(m, "FailureReason")
        .value("AuthFailure", adversary::FailureReason::AuthFailure)
        .value("ReplayDuplicate", adversary::FailureReason::ReplayDuplicate)
        .value("ReplayTooOld", adversary::FailureReason::ReplayTooOld)
        .value("DecodeError", adversary::FailureReason::DecodeError);

    py::class_<adversary::AttackOutcome>(m, "AttackOutcome")
        .def_readonly("executed", &adversary::AttackOutcome::executed)
        .def_readonly("command", &adversary::AttackOutcome::command)
        .def_readonly("reason", &adversary::AttackOutcome::reason);

    py::class_<adversary::AdversaryState>(m, "AdversaryState")
        .def(py::init<>())
        .def("observe", &adversary::AdversaryState::observe, py::arg("observation"))
        .def("predict",
             [](const adversary::AdversaryState& s, const py::bytes& frame_bytes) {
                 return s.predict(to_vec(frame_bytes));
             })
        .def("replay", &adversary::AdversaryState::replay, py::arg("target"), py::arg("pick"))
        .def_property_readonly("codebook_complete", &adversary::AdversaryState::codebook_complete)
        .def_property_readonly("codebook_size", &adversary::AdversaryState::codebook_size)
        .def_property_readonly("captures", &adversary::AdversaryState::captures)
        .def("export_captures", &adversary::AdversaryState::export_captures)
        .def_static("parse_captures", &adversary::AdversaryState::parse_captures);

    py::class_<adversary::ToyCipher>(m, "ToyCipher")
        .def(py::init<std::uint16_t>(), py::arg("key"))
        .def("encrypt_block", &adversary::ToyCipher::encrypt_block, py::arg("block"))
        .def("decrypt_block", &adversary::ToyCipher::decrypt_block, py::arg("block"))
        .def_readonly_static("KEY_SPACE", &adversary::ToyCipher::kKeySpace);

    m.def("kpa_key_search", [](const std::vector<adversary::ToyPair>& pairs) {
        return adversary::kpa_key_search(pairs);
    });
    m.def("coa_candidates",
          [](const std::vector<std::uint16_t>& cts, const std::function<bool(std::uint16_t)>& ok) {
              return adversary::coa_candidates(cts, ok);
          });
    m.def("toy_plaintext", &adversary::toy_plaintext, py::arg("cmd"));
    m.def("is_toy_command_plaintext", &adversary::is_toy_command_plaintext, py::arg("block"));

    // ---- audit ----

    py::enum_<audit::Verdict>(m, "Verdict")
        .value("Pass", audit::Verdict::Pass)
        .value("Fail", audit::Verdict::Fail)
        .value("NotApplicable", audit::Verdict::NotApplicable);

    py::enum_<audit::Direction>(m, "Direction")
        .value("Tx", audit::Direction::Tx)
        .value("Rx", audit::Direction::Rx);

    py::enum_<audit::Tier>(m, "Tier")
        .value("Low", audit::Tier::Low)
        .value("Medium", audit::Tier::Medium)
        .value("High", audit::Tier::High);

    py::class_<audit::ChecklistItem>(m, "ChecklistItem")
        .def_readonly("id", &audit::ChecklistItem::id)
        .def_readonly("text", &audit::ChecklistItem::text)
        .def_readonly("verdict", &audit::ChecklistItem::verdict);

    py::class_<audit::CoverageFinding>(m, "CoverageFinding")
        .def_readonly("segment", &audit::CoverageFinding::segment)
        .def_readonly("direction", &audit::CoverageFinding::direction)
        .def(py::self == py::self);

    py::class_<audit::SuiteRecommendation>(m, "SuiteRecommendation")
        .def_readonly("mode", &audit::SuiteRecommendation::mode)
        .def_readonly("protocol", &audit::SuiteRecommendation::protocol)
        .def_readonly("integrity_warning", &audit::SuiteRecommendation::integrity_warning);

    py::class_<audit::PolicyTier>(m, "PolicyTier")
        .def_readonly("segment", &audit::PolicyTier::segment)
        .def_readonly("data_value", &audit::PolicyTier::data_value)
        .def_readonly("required_strength", &audit::PolicyTier::required_strength)
        .def_readonly("suite", &audit::PolicyTier::suite)
        .def_readonly("note", &audit::PolicyTier::note);

    py::class_<audit::AuditDeclarations>(m, "AuditDeclarations")
        .def(py::init<>())
        .def_readwrite("protocols", &audit::AuditDeclarations::protocols)
        .def_readwrite("asym_provided", &audit::AuditDeclarations::asym_provided)
        .def_readwrite("asym_randomized", &audit::AuditDeclarations::asym_randomized);

    py::class_<audit::ProtocolRegistry>(m, "ProtocolRegistry")
        .def_static("builtin", &audit::ProtocolRegistry::builtin,
                    py::return_value_policy::reference)
        .def("trusted", &audit::ProtocolRegistry::trusted, py::arg("name"));

    py::class_<audit::AuditReport>(m, "AuditReport")
        .def_readonly("checklist", &audit::AuditReport::checklist)
        .def_readonly("coverage", &audit::AuditReport::coverage)
        .def_readonly("policy", &audit::AuditReport::policy)
        .def_readonly("compliant", &audit::AuditReport::compliant);

    m.def("run_checklist",
          [](const model::SystemTopology& topo, const audit::AuditDeclarations& decls) {
              return audit::run_checklist(topo, decls);
          });
    m.def("coverage_check", &audit::coverage_check, py::arg("topology"));
    m.def("recommend_policy", &audit::recommend_policy, py::arg("topology"));
    m.def("full_audit",
          [](const model::SystemTopology& topo, const audit::AuditDeclarations& decls) {
              return audit::full_audit(topo, decls);
          });
    m.def("render_report", &audit::render_report, py::arg("report"));

    // ---- model types found in scenarios ----

    py::class_<model::Segment>(m, "Segment")
        .def_readwrite("id", &model::Segment::id)
        .def_readwrite("distance_class", &model::Segment::distance_class)
        .def_readwrite("data_kinds", &model::Segment::data_kinds)
        .def_readwrite("crypto_tx", &model::Segment::crypto_tx)
        .def_readwrite("crypto_rx", &model::Segment::crypto_rx)
        .def_readwrite("link_method", &model::Segment::link_method);

    py::class_<model::SystemTopology>(m, "SystemTopology")
        .def(py::init<>())
        .def_readwrite("components", &model::SystemTopology::components)
        .def_readwrite("segments", &model::SystemTopology::segments)
        .def("segment",
             [](model::SystemTopology& t, model::SegmentId id) { return t.segment(id); },
             py::return_value_policy::reference_internal)
        .def("validate", &model::SystemTopology::validate)
        .def(py::self == py::self);

    m.def("default_topology", &model::default_topology);
    m.def("catalog", &model::catalog, py::return_value_policy::reference);
    m.def(
        "select_method",
        [](double range_m, std::uint64_t min_rate_bps, model::SecurityLevel min_security,
           bool include_provisional) {
            return model::select_method(range_m, min_rate_bps, min_security, include_provisional);
        },
        py::arg("required_range_m"), py::arg("min_rate_bps"), py::arg("min_security"),
        py::arg("include_provisional") = false);

    // ---- simulation ----

    py::class_<sim::TrafficSpec>(m, "TrafficSpec")
        .def(py::init<>())
        .def_readwrite("weights", &sim::TrafficSpec::weights)
        .def_readwrite("ticks", &sim::TrafficSpec::ticks);

    py::class_<sim::AdversaryPlan> plan(m, "AdversaryPlan");

    py::enum_<sim::AdversaryPlan::Kind>(plan, "Kind")
        .value("PassiveOnly", sim::AdversaryPlan::Kind::PassiveOnly)
        .value("ReplayAfter", sim::AdversaryPlan::Kind::ReplayAfter)
        .value("CodebookThenPredict", sim::AdversaryPlan::Kind::CodebookThenPredict);

    plan.def(py::init<>())
        .def_readwrite("kind", &sim::AdversaryPlan::kind)
        .def_readwrite("captures_before", &sim::AdversaryPlan::captures_before)
        .def_readwrite("injections", &sim::AdversaryPlan::injections);

    py::class_<sim::Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("name", &sim::Scenario::name)
        .def_readwrite("topology", &sim::Scenario::topology)
        .def_readwrite("protocols", &sim::Scenario::protocols)
        .def_readwrite("segment", &sim::Scenario::segment)
        .def_readwrite("traffic", &sim::Scenario::traffic)
        .def_readwrite("plan", &sim::Scenario::plan)
        .def_readwrite("seed", &sim::Scenario::seed);

    py::class_<sim::Metrics>(m, "Metrics")
        .def_readonly("frames_sent", &sim::Metrics::frames_sent)
        .def_readonly("frames_accepted", &sim::Metrics::frames_accepted)
        .def_readonly("replays_attempted", &sim::Metrics::replays_attempted)
        .def_readonly("replays_executed", &sim::Metrics::replays_executed)
        .def_readonly("replay_success_rate", &sim::Metrics::replay_success_rate)
        .def_readonly("codebook_completion_tick", &sim::Metrics::codebook_completion_tick)
        .def_readonly("prediction_accuracy", &sim::Metrics::prediction_accuracy)
        .def_readonly("rejection_histogram", &sim::Metrics::rejection_histogram);

    py::class_<sim::Transcript>(m, "Transcript")
        .def_readonly("lines", &sim::Transcript::lines)
        .def("serialize", &sim::Transcript::serialize);

    py::class_<sim::RunResult>(m, "RunResult")
        .def_readonly("transcript", &sim::RunResult::transcript)
        .def_readonly("metrics", &sim::RunResult::metrics);

    py::class_<sim::MetricStat>(m, "MetricStat")
        .def_readonly("mean", &sim::MetricStat::mean)
        .def_readonly("stddev", &sim::MetricStat::stddev)
        .def_readonly("count", &sim::MetricStat::count);

    py::class_<sim::BatchStats>(m, "BatchStats")
        .def_readonly("repetitions", &sim::BatchStats::repetitions)
        .def_readonly("stats", &sim::BatchStats::stats);

    m.def("run", &sim::run, py::arg("scenario"));
    m.def("run_batch", &sim::run_batch, py::arg("scenario"), py::arg("repetitions"));
    m.def("preset", &sim::preset, py::arg("name"));

    // ---- config ----

    py::class_<config::ConfigDocument>(m, "ConfigDocument")
        .def(py::init<>())
        .def_readwrite("topology", &config::ConfigDocument::topology)
        .def_readwrite("protocols", &config::ConfigDocument::protocols)
        .def_readwrite("asym_provided", &config::ConfigDocument::asym_provided)
        .def_readwrite("asym_randomized", &config::ConfigDocument::asym_randomized)
        .def_readwrite("scenario_name", &config::ConfigDocument::scenario_name)
        .def_readwrite("scenario_segment", &config::ConfigDocument::scenario_segment)
        .def_readwrite("ticks", &config::ConfigDocument::ticks)
        .def_readwrite("seed", &config::ConfigDocument::seed)
        .def("to_scenario", &config::ConfigDocument::to_scenario)
        .def("to_declarations", &config::ConfigDocument::to_declarations);

    m.def("load_config", &config::load_config, py::arg("path"));
    m.def("parse_config", &config::parse_config, py::arg("text"));
    m.def("serialize_config", &config::serialize_config, py::arg("doc"));
    m.def("metrics_to_text", &config::metrics_to_text, py::arg("metrics"));
    m.def("metrics_from_text", &config::metrics_from_text, py::arg("text"));
    m.def("audit_report_to_text", &config::audit_report_to_text, py::arg("report"));
    m.def("catalog_to_text", &config::catalog_to_text, py::arg("profiles"));
    m.def("catalog_from_text", &config::catalog_from_text, py::arg("text"));

    // ---- CLI passthrough (used by the console script) ----

    m.def("cli_main", [](const std::vector<std::string>& args) {
        return cli::run(args, std::cout, std::cerr);
    });
}
