#include "dronesec/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "dronesec/config.hpp"
#include "dronesec/errors.hpp"

namespace dronesec::cli {

namespace {

constexpr const char* kSeedEnvVar = "DRONESEC_SEED";

std::optional<std::uint64_t> seed_from_env() {
    const char* raw = std::getenv(kSeedEnvVar);
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0') throw ConfigError("DRONESEC_SEED is not a number");
    return static_cast<std::uint64_t>(v);
}

std::uint64_t effective_seed(const std::optional<std::uint64_t>& flag, std::uint64_t config_seed) {
    if (flag) return *flag;
    if (const auto env = seed_from_env()) return *env;
    return config_seed;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output file: " + path);
    out << content;
}

void print_metrics_table(const sim::Metrics& m, std::ostream& out) {
    out << "frames_sent        " << m.frames_sent << '\n';
    out << "frames_accepted    " << m.frames_accepted << '\n';
    out << "replays_attempted  " << m.replays_attempted << '\n';
    out << "replays_executed   " << m.replays_executed << '\n';
    if (m.replay_success_rate) {
        out << "replay_success     " << *m.replay_success_rate << '\n';
    }
    if (m.codebook_completion_tick) {
        out << "codebook_complete  tick " << *m.codebook_completion_tick << '\n';
    }
    if (m.prediction_accuracy) {
        out << "prediction_acc     " << *m.prediction_accuracy << '\n';
    }
    for (const auto& [reason, count] : m.rejection_histogram) {
        out << "rejected[" << reason << "] " << count << '\n';
    }
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 std::optional<std::uint64_t> ticks, std::string out_prefix,
                 const std::string& format, std::ostream& out) {
    auto doc = config::load_config(config_path);
    doc.seed = effective_seed(seed, doc.seed);
    if (ticks) doc.ticks = *ticks;

    const auto scenario = doc.to_scenario();
    const auto result = sim::run(scenario);

    if (out_prefix.empty()) out_prefix = scenario.name;
    write_file(out_prefix + ".transcript.txt", result.transcript.serialize());
    write_file(out_prefix + ".metrics.json", config::metrics_to_text(result.metrics));

    if (format == "records") {
        out << config::metrics_to_text(result.metrics);
    } else {
        out << "scenario " << scenario.name << " seed " << scenario.seed << " ticks "
            << scenario.traffic.ticks << '\n';
        print_metrics_table(result.metrics, out);
        out << "wrote " << out_prefix << ".transcript.txt, " << out_prefix << ".metrics.json\n";
    }
    return 0;
}

int cmd_audit(const std::string& config_path, bool strict, const std::string& format,
              const std::string& registry_path, std::ostream& out) {
    const auto doc = config::load_config(config_path);
    const auto registry = registry_path.empty() ? audit::ProtocolRegistry::builtin()
                                                : config::load_registry(registry_path);
    const auto report = audit::full_audit(doc.topology, doc.to_declarations(), registry);

    if (format == "json") {
        out << config::audit_report_to_text(report);
    } else {
        out << audit::render_report(report);
    }

    bool ok = report.compliant;
    if (strict) {
        for (const auto& tier : report.policy) ok &= !tier.suite.integrity_warning;
    }
    return ok ? 0 : 1;
}

int cmd_codebook(const std::string& config_path, std::uint64_t reps,
                 std::optional<std::uint64_t> seed, const std::string& format, std::ostream& out) {
    auto doc = config::load_config(config_path);
    doc.seed = effective_seed(seed, doc.seed);
    doc.plan = {sim::AdversaryPlan::Kind::CodebookThenPredict, 0, 0};

    const auto stats = sim::run_batch(doc.to_scenario(), reps);
    if (format == "records") {
        out << config::batch_to_text(stats);
        return 0;
    }
    out << "repetitions " << stats.repetitions << '\n';
    for (const auto& [name, stat] : stats.stats) {
        out << name << " mean " << stat.mean << " stddev " << stat.stddev << " count "
            << stat.count << '\n';
    }
    return 0;
}

int cmd_replay(const std::string& config_path, std::optional<std::uint64_t> seed,
               std::optional<std::uint64_t> ticks, const std::string& format, std::ostream& out) {
    auto doc = config::load_config(config_path);
    doc.seed = effective_seed(seed, doc.seed);
    if (ticks) doc.ticks = *ticks;
    if (doc.plan.kind != sim::AdversaryPlan::Kind::ReplayAfter) {
        doc.plan = {sim::AdversaryPlan::Kind::ReplayAfter, 10, 100};
    }

    const auto result = sim::run(doc.to_scenario());
    if (format == "records") {
        out << config::metrics_to_text(result.metrics);
        return 0;
    }
    out << "replays executed " << result.metrics.replays_executed << " of "
        << result.metrics.replays_attempted << '\n';
    for (const auto& [reason, count] : result.metrics.rejection_histogram) {
        out << "rejected[" << reason << "] " << count << '\n';
    }
    return 0;
}

int cmd_policy(const std::string& config_path, const std::string& format, std::ostream& out) {
    const auto doc = config::load_config(config_path);
    const auto tiers = audit::recommend_policy(doc.topology);

    if (format == "json") {
        audit::AuditReport wrapper;
        wrapper.policy = tiers;
        out << config::audit_report_to_text(wrapper);
        return 0;
    }
    for (const auto& t : tiers) {
        out << model::segment_name(t.segment) << " value=" << audit::tier_name(t.data_value)
            << " strength=" << audit::tier_name(t.required_strength)
            << " suite=" << cipher::mode_name(t.suite.mode) << '+'
            << proto::protocol_name(t.suite.protocol);
        if (t.suite.integrity_warning) out << " (no built-in integrity; add a MAC)";
        if (!t.note.empty()) out << " [" << t.note << ']';
        out << '\n';
    }
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Wireless-link security simulator and audit toolkit for drone systems"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> ticks;
    std::string out_prefix;
    std::string format = "table";
    bool strict = false;
    std::string registry_path;
    std::uint64_t reps = 1000;

    auto* simulate = app.add_subcommand("simulate", "Run a scenario and write transcript + metrics");
    simulate->add_option("config", config_path, "scenario config file")->required();
    simulate->add_option("--seed", seed, "seed override (beats DRONESEC_SEED and the config)");
    simulate->add_option("--ticks", ticks, "tick-count override");
    simulate->add_option("--out", out_prefix, "output file prefix (default: scenario name)");
    simulate->add_option("--format", format, "stdout format: table|records")
        ->check(CLI::IsMember({"table", "records"}));

    auto* audit_cmd = app.add_subcommand("audit", "Evaluate checklist, coverage, and policy");
    audit_cmd->add_option("config", config_path, "config file")->required();
    audit_cmd->add_flag("--strict", strict, "also fail on integrity warnings");
    audit_cmd->add_option("--format", format, "output format: table|json")
        ->check(CLI::IsMember({"table", "json"}));
    audit_cmd->add_option("--registry", registry_path, "protocol registry file (default built-in)");

    auto* codebook = app.add_subcommand("codebook", "Codebook-building batch statistics");
    codebook->add_option("config", config_path, "config file")->required();
    codebook->add_option("--reps", reps, "repetitions");
    codebook->add_option("--seed", seed, "base seed override");
    codebook->add_option("--format", format, "output format: table|records")
        ->check(CLI::IsMember({"table", "records"}));

    auto* replay = app.add_subcommand("replay", "Run the replay attack plan from the config");
    replay->add_option("config", config_path, "config file")->required();
    replay->add_option("--seed", seed, "seed override");
    replay->add_option("--ticks", ticks, "tick-count override");
    replay->add_option("--format", format, "output format: table|records")
        ->check(CLI::IsMember({"table", "records"}));

    auto* policy = app.add_subcommand("policy", "Print per-segment encryption-strength tiers");
    policy->add_option("config", config_path, "config file")->required();
    policy->add_option("--format", format, "output format: table|json")
        ->check(CLI::IsMember({"table", "json"}));

    std::vector<const char*> argv;
    argv.push_back("dronesec");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(config_path, seed, ticks, out_prefix, format, out);
        if (audit_cmd->parsed()) return cmd_audit(config_path, strict, format, registry_path, out);
        if (codebook->parsed()) return cmd_codebook(config_path, reps, seed, format, out);
        if (replay->parsed()) return cmd_replay(config_path, seed, ticks, format, out);
        if (policy->parsed()) return cmd_policy(config_path, format, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << "no subcommand given\n";
    return 2;
}

}  // namespace dronesec::cli
