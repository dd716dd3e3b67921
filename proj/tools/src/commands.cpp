#include "ucf/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "ucf/cli/svg.hpp"
#include "ucf/cli/trace_io.hpp"
#include "ucf/simulator.hpp"

namespace ucf::cli {
namespace {

using ojson = nlohmann::ordered_json;

void write_json(const ojson& j, const std::string& path) {
    if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

void ensure_parent(const std::string& path) {
    if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
        std::filesystem::create_directories(parent);
}

ojson finite_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

const CheckResult* find_check(const std::vector<CheckResult>& checks, std::string_view name) {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

TraceCheckOptions trace_options(int samples, int window) { return TraceCheckOptions{samples, window, kEpsSnap}; }

}  // namespace

RunResult execute(const RunConfig& config) {
    const WorldState initial = make_initial(config);
    RunResult r;
    r.trace = run(initial, config.policy, RunOptions{config.max_rounds, config.master_seed, config.collision_samples});
    r.checks = check_trace(r.trace, trace_options(config.collision_samples, config.progress_window));
    r.success = r.trace.outcome == Outcome::Formed &&
                std::all_of(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.pass; });
    return r;
}

ojson make_report(const RunResult& r) {
    const Trace& t = r.trace;
    const FormationSpec spec = make_formation_spec(t.meta.n, t.meta.a);
    ojson j;
    j["outcome"] = to_string(t.outcome);
    j["success"] = r.success;
    j["detail"] = t.detail;
    j["rounds"] = t.records.back().round;
    j["n"] = spec.n;
    j["a"] = spec.a;
    j["r"] = spec.r;
    j["policy"] = to_string(t.meta.policy.kind);
    j["master_seed"] = t.meta.master_seed;
    if (const auto* c = find_check(r.checks, "motion_collision_free")) j["min_collision_margin"] = finite_or_null(c->worst_margin);
    if (const auto* c = find_check(r.checks, "static_overlap")) j["min_static_margin"] = finite_or_null(c->worst_margin);

    const PolygonMetrics m = polygon_metrics(t.records.back().post);
    j["final_polygon"] = {{"radius", m.circle.radius},
                          {"center", {m.circle.center.x, m.circle.center.y}},
                          {"max_radial_deviation", m.max_radial_deviation},
                          {"max_angle_deviation", m.max_angle_deviation},
                          {"min_adjacent_chord", m.min_adjacent_chord},
                          {"max_vertex_deviation", m.max_vertex_deviation}};
    ojson checks = ojson::array();
    for (const auto& c : r.checks) checks.push_back(check_to_json(c));
    j["checks"] = checks;

    std::map<std::string, int> flags;
    std::size_t expansion = 0;
    for (const auto& rec : t.records) {
        if (rec.round > 0 && rec.phase == Phase::Expansion) ++expansion;
        for (const auto& f : rec.flags) ++flags[f];
    }
    j["expansion_rounds"] = expansion;
    j["flags"] = flags;
    return j;
}

std::string failure_summary(const RunResult& r) {
    // A run that never formed fails the shape checks as a consequence; report the cause.
    if (r.trace.outcome != Outcome::Formed) return std::string(to_string(r.trace.outcome)) + ": " + r.trace.detail;
    for (const auto& c : r.checks)
        if (!c.pass) {
            std::ostringstream s;
            s << c.name << ": " << c.detail << " (margin " << c.worst_margin << ")";
            return s.str();
        }
    return {};
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    RunResult r;
    try {
        r = execute(config);
    } catch (const ConfigError& e) {
        err << "invalid config: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "invalid initial world: " << e.what() << '\n';
        return kExitUsage;
    }
    try {
        if (!config.trace_path.empty()) {
            ensure_parent(config.trace_path);
            write_trace(r.trace, config.trace_path);
        }
        if (!config.report_path.empty()) write_json(make_report(r), config.report_path);
        if (!config.svg_dir.empty()) write_frames(r.trace, config.svg_dir);
    } catch (const std::exception& e) {
        err << "output error: " << e.what() << '\n';
        return kExitUsage;
    }
    out << to_string(r.trace.outcome) << " after " << r.trace.records.back().round << " rounds\n";
    if (!r.success) {
        err << failure_summary(r) << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int check_trace_text(const std::string& jsonl, const CheckOptions& options, std::ostream& out, std::ostream& err) {
    Trace trace;
    try {
        std::istringstream in(jsonl);
        trace = parse_trace(in);
    } catch (const Error& e) {
        err << "malformed trace: " << e.what() << '\n';
        return kExitUsage;
    }
    RunResult r;
    r.trace = std::move(trace);
    try {
        r.checks = check_trace(r.trace, trace_options(options.collision_samples, options.progress_window));
    } catch (const Error& e) {
        err << "malformed trace: " << e.what() << '\n';
        return kExitUsage;
    }
    r.success = r.trace.outcome == Outcome::Formed &&
                std::all_of(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.pass; });
    for (const auto& c : r.checks)
        out << (c.applicable ? (c.pass ? "PASS " : "FAIL ") : "n/a  ") << std::left << std::setw(24) << c.name << ' '
            << c.detail << '\n';
    if (!options.report_path.empty()) write_json(make_report(r), options.report_path);
    if (!r.success) {
        err << failure_summary(r) << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_check(const std::string& trace_path, const CheckOptions& options, std::ostream& out, std::ostream& err) {
    std::ifstream in(trace_path, std::ios::binary);
    if (!in) {
        err << "cannot open trace '" << trace_path << "'\n";
        return kExitUsage;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return check_trace_text(buf.str(), options, out, err);
}

RunConfig batch_run_config(const BatchSpec& spec, int n, std::uint64_t seed, PolicyKind policy) {
    RunConfig c = spec.base;
    c.n = n;
    c.initial_seed = seed;
    c.policy.kind = policy;
    c.policy.seed = seed;
    c.master_seed = seed;
    c.trace_path.clear();
    c.report_path.clear();
    c.svg_dir.clear();
    return c;
}

int cmd_batch(const BatchSpec& spec, std::ostream& out, std::ostream& err) {
    if (spec.ns.empty() || spec.policies.empty() || spec.seed_last < spec.seed_first) {
        err << "batch needs at least one n, one policy and a non-empty seed range\n";
        return kExitUsage;
    }
    if (spec.base.centers) {
        err << "batch template must use random placement (initial.seed / initial.box)\n";
        return kExitUsage;
    }
    struct Job {
        int n;
        std::uint64_t seed;
        PolicyKind policy;
    };
    std::vector<Job> jobs;
    for (int n : spec.ns)
        for (std::uint64_t s = spec.seed_first; s <= spec.seed_last; ++s)
            for (PolicyKind p : spec.policies) jobs.push_back({n, s, p});
    try {
        for (const auto& j : jobs) validate(batch_run_config(spec, j.n, j.seed, j.policy));
    } catch (const ConfigError& e) {
        err << "invalid batch template: " << e.what() << '\n';
        return kExitUsage;
    }

    std::vector<ojson> reports(jobs.size());
    std::vector<std::string> failures(jobs.size());
    std::vector<bool> ok(jobs.size(), false);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            const std::string tag = "n" + std::to_string(job.n) + "_s" + std::to_string(job.seed) + "_" +
                                    std::string(to_string(job.policy));
            try {
                const RunResult r = execute(batch_run_config(spec, job.n, job.seed, job.policy));
                reports[i] = make_report(r);
                ok[i] = r.success;
                if (!r.success) failures[i] = tag + ": " + failure_summary(r);
                if (!spec.out_dir.empty()) {
                    write_trace(r.trace, (std::filesystem::path(spec.out_dir) / ("trace_" + tag + ".jsonl")).string());
                    write_json(reports[i], (std::filesystem::path(spec.out_dir) / ("report_" + tag + ".json")).string());
                }
            } catch (const std::exception& e) {
                failures[i] = tag + ": " + e.what();
            }
        }
    };
    if (!spec.out_dir.empty()) std::filesystem::create_directories(spec.out_dir);
    const int threads = std::max(1, spec.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Per (n, policy): formed count and round statistics.
    struct Row {
        int runs = 0, formed = 0, clean = 0;
        std::size_t min_rounds = SIZE_MAX, max_rounds = 0, total_rounds = 0;
    };
    std::map<std::pair<int, std::string>, Row> rows;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        Row& row = rows[{jobs[i].n, std::string(to_string(jobs[i].policy))}];
        ++row.runs;
        if (reports[i].is_null()) continue;
        const std::size_t rounds = reports[i]["rounds"].get<std::size_t>();
        if (reports[i]["outcome"] == "Formed") ++row.formed;
        if (ok[i]) ++row.clean;
        row.min_rounds = std::min(row.min_rounds, rounds);
        row.max_rounds = std::max(row.max_rounds, rounds);
        row.total_rounds += rounds;
    }
    out << std::left << std::setw(5) << "n" << std::setw(22) << "policy" << std::right << std::setw(6) << "runs"
        << std::setw(8) << "formed" << std::setw(7) << "clean" << std::setw(8) << "min_r" << std::setw(8) << "mean_r"
        << std::setw(8) << "max_r" << '\n';
    ojson table = ojson::array();
    for (const auto& [key, row] : rows) {
        const double mean = row.runs ? static_cast<double>(row.total_rounds) / row.runs : 0.0;
        out << std::left << std::setw(5) << key.first << std::setw(22) << key.second << std::right << std::setw(6)
            << row.runs << std::setw(8) << row.formed << std::setw(7) << row.clean << std::setw(8)
            << (row.min_rounds == SIZE_MAX ? 0 : row.min_rounds) << std::setw(8) << std::fixed << std::setprecision(1)
            << mean << std::setw(8) << row.max_rounds << '\n';
        table.push_back({{"n", key.first},
                         {"policy", key.second},
                         {"runs", row.runs},
                         {"formed", row.formed},
                         {"clean", row.clean},
                         {"min_rounds", row.min_rounds == SIZE_MAX ? 0 : row.min_rounds},
                         {"mean_rounds", mean},
                         {"max_rounds", row.max_rounds}});
    }
    std::size_t bad = 0;
    ojson failed = ojson::array();
    for (const auto& f : failures)
        if (!f.empty()) {
            ++bad;
            failed.push_back(f);
            err << f << '\n';
        }
    out << jobs.size() - bad << "/" << jobs.size() << " runs formed with clean checks\n";
    if (!spec.summary_path.empty()) {
        ojson summary;
        summary["runs"] = jobs.size();
        summary["clean"] = jobs.size() - bad;
        summary["table"] = table;
        summary["failures"] = failed;
        write_json(summary, spec.summary_path);
    }
    return bad == 0 ? kExitOk : kExitFailure;
}

}  // namespace ucf::cli
