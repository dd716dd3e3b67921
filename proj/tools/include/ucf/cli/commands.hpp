#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ucf/checker.hpp"
#include "ucf/cli/config.hpp"

namespace ucf::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

struct RunResult {
    Trace trace;
    std::vector<CheckResult> checks;  // check_trace over the finished run
    bool success = false;             // Formed and every check passes
};

RunResult execute(const RunConfig& config);

// Outcome, rounds, collision margins, final polygon metrics, checks and flag counts.
nlohmann::ordered_json make_report(const RunResult& result);

// Outcome when not Formed, else the first failing check as "<name>: <detail> (margin m)".
// Empty on success.
std::string failure_summary(const RunResult& result);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct CheckOptions {
    int collision_samples = 1000;
    int progress_window = 0;
    std::string report_path;
};

int cmd_check(const std::string& trace_path, const CheckOptions& options, std::ostream& out, std::ostream& err);
int check_trace_text(const std::string& jsonl, const CheckOptions& options, std::ostream& out, std::ostream& err);

struct BatchSpec {
    RunConfig base;  // random placement; n, seeds and policy kind are substituted
    std::vector<int> ns;
    std::uint64_t seed_first = 0;
    std::uint64_t seed_last = 0;
    std::vector<PolicyKind> policies;
    int jobs = 1;
    std::string out_dir;       // per-run trace_*.jsonl and report_*.json when set
    std::string summary_path;  // JSON summary when set
};

// Run (n, seed, policy) uses initial.seed = policy.seed = master_seed = seed.
RunConfig batch_run_config(const BatchSpec& spec, int n, std::uint64_t seed, PolicyKind policy);

int cmd_batch(const BatchSpec& spec, std::ostream& out, std::ostream& err);

}  // namespace ucf::cli
