#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "ucf/cli/commands.hpp"

using namespace ucf;
using namespace ucf::cli;

namespace {

std::vector<int> parse_n_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stoi(item));
        } else {
            const int lo = std::stoi(item.substr(0, dots));
            const int hi = std::stoi(item.substr(dots + 2));
            for (int n = lo; n <= hi; ++n) out.push_back(n);
        }
    }
    return out;
}

struct Overrides {
    std::optional<int> n;
    std::optional<double> a;
    std::optional<std::uint64_t> seed;
    std::optional<double> box;
    std::optional<std::string> policy;
    std::optional<std::uint64_t> policy_seed;
    std::optional<std::size_t> max_rounds;
    std::optional<std::uint64_t> master_seed;
    std::optional<int> samples;
    std::optional<std::string> trace, report, svg_dir;
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--n", o.n, "number of robots");
    cmd->add_option("--a", o.a, "adjacent chord length, in robot radii");
    cmd->add_option("--seed", o.seed, "random placement seed");
    cmd->add_option("--box", o.box, "random placement box side");
    cmd->add_option("--policy", o.policy, "All | RandomSubset | RoundRobinSingleton | Scripted");
    cmd->add_option("--policy-seed", o.policy_seed, "activation seed");
    cmd->add_option("--max-rounds", o.max_rounds, "round cap (default 200 n)");
    cmd->add_option("--master-seed", o.master_seed, "tie-break seed");
    cmd->add_option("--samples", o.samples, "collision samples per round");
    cmd->add_option("--trace", o.trace, "trace output (JSON lines)");
    cmd->add_option("--report", o.report, "report output (JSON)");
    cmd->add_option("--svg-dir", o.svg_dir, "directory for per-round SVG frames");
}

nlohmann::json build_config(const std::string& path, const Overrides& o) {
    nlohmann::json doc = nlohmann::json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config '" + path + "'");
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
        }
    }
    if (o.n) doc["n"] = *o.n;
    if (o.a) doc["a"] = *o.a;
    if (o.seed || o.box) {
        if (doc.contains("initial")) doc["initial"].erase("centers");
        if (o.seed) doc["initial"]["seed"] = *o.seed;
        if (o.box) doc["initial"]["box"] = *o.box;
    }
    if (o.policy) doc["policy"]["kind"] = *o.policy;
    if (o.policy_seed) doc["policy"]["seed"] = *o.policy_seed;
    if (o.max_rounds) doc["max_rounds"] = *o.max_rounds;
    if (o.master_seed) doc["master_seed"] = *o.master_seed;
    if (o.samples) doc["tolerances"]["collision_samples"] = *o.samples;
    if (o.trace) doc["outputs"]["trace"] = *o.trace;
    if (o.report) doc["outputs"]["report"] = *o.report;
    if (o.svg_dir) doc["outputs"]["svg_dir"] = *o.svg_dir;
    return doc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform circle formation simulator for fat robots"};
    app.require_subcommand(1);

    std::string run_config;
    Overrides run_over;
    auto* run_cmd = app.add_subcommand("run", "simulate one configuration");
    run_cmd->add_option("-c,--config", run_config, "JSON run config");
    add_override_flags(run_cmd, run_over);

    std::string trace_path;
    CheckOptions check_opts;
    auto* check_cmd = app.add_subcommand("check", "re-verify a recorded trace");
    check_cmd->add_option("trace", trace_path, "trace file (JSON lines)")->required();
    check_cmd->add_option("--samples", check_opts.collision_samples, "collision samples per round")
        ->check(CLI::Range(100, 1000000));
    check_cmd->add_option("--window", check_opts.progress_window, "progress window (default 10 n)");
    check_cmd->add_option("--report", check_opts.report_path, "report output (JSON)");

    std::string batch_config;
    Overrides batch_over;
    std::string ns = "3..10";
    std::string seeds = "0..24";
    std::vector<std::string> policies{"All", "RandomSubset", "RoundRobinSingleton"};
    BatchSpec batch;
    batch.jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    auto* batch_cmd = app.add_subcommand("batch", "run the n x seed x policy matrix");
    batch_cmd->add_option("-c,--config", batch_config, "JSON config template");
    add_override_flags(batch_cmd, batch_over);
    batch_cmd->add_option("--ns", ns, "robot counts, e.g. 3..10 or 3,5,8");
    batch_cmd->add_option("--seeds", seeds, "inclusive seed range lo..hi");
    batch_cmd->add_option("--policies", policies, "activation policies")->delimiter(',');
    batch_cmd->add_option("-j,--jobs", batch.jobs, "parallel runs");
    batch_cmd->add_option("--out-dir", batch.out_dir, "per-run traces and reports");
    batch_cmd->add_option("--summary", batch.summary_path, "summary JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run_cmd) return cmd_run(parse_config(build_config(run_config, run_over)), std::cout, std::cerr);
        if (*check_cmd) return cmd_check(trace_path, check_opts, std::cout, std::cerr);

        nlohmann::json doc = build_config(batch_config, batch_over);
        if (!doc.contains("n")) doc["n"] = 3;
        if (!doc.contains("a")) doc["a"] = 3.0;
        if (!doc.contains("initial") || !doc["initial"].contains("box")) doc["initial"]["box"] = 20.0;
        batch.base = parse_config(doc);
        batch.ns = parse_n_list(ns);
        const auto dots = seeds.find("..");
        batch.seed_first = std::stoull(seeds.substr(0, dots));
        batch.seed_last = dots == std::string::npos ? batch.seed_first : std::stoull(seeds.substr(dots + 2));
        batch.policies.clear();
        for (const auto& p : policies) batch.policies.push_back(policy_kind_from_string(p));
        return cmd_batch(batch, std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number in a range argument\n";
        return kExitUsage;
    }
}
