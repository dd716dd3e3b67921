#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "ucf/cli/commands.hpp"
#include "ucf/cli/config.hpp"
#include "ucf/cli/trace_io.hpp"

using namespace ucf;
using namespace ucf::cli;
using nlohmann::json;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("ucf_cli_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig expansion_config() {
    json centers = json::array();
    for (double d : {45.0, 150.0, 225.0}) {
        const double t = d * std::numbers::pi / 180.0;
        centers.push_back({2.0 * std::cos(t), 2.0 * std::sin(t)});
    }
    return parse_config(json{{"n", 3}, {"a", 3.0 * std::sqrt(3.0)}, {"initial", {{"centers", centers}}}});
}

RunConfig random_config(int n, std::uint64_t seed, const std::string& policy) {
    return parse_config(json{{"n", n},
                             {"a", 3.5},
                             {"initial", {{"seed", seed}, {"box", 12.0}}},
                             {"policy", {{"kind", policy}, {"seed", seed}}},
                             {"master_seed", seed}});
}

}  // namespace

TEST(Config, ParsesAndRoundTrips) {
    const RunConfig c = random_config(5, 7, "RandomSubset");
    EXPECT_EQ(c.n, 5);
    EXPECT_EQ(c.policy.kind, PolicyKind::RandomSubset);
    EXPECT_EQ(c.box, 12.0);
    EXPECT_NO_THROW(validate(c));
    const RunConfig back = parse_config(json::parse(config_to_json(c).dump()));
    EXPECT_EQ(config_to_json(back).dump(), config_to_json(c).dump());
}

TEST(Config, RejectsBadFields) {
    auto bad = [](json j) {
        EXPECT_THROW(validate(parse_config(j)), ConfigError) << j.dump();
    };
    bad({{"n", 2}, {"a", 3.0}, {"initial", {{"box", 10.0}}}});
    bad({{"n", 4}, {"a", 2.0}, {"initial", {{"box", 10.0}}}});
    bad({{"n", 4}, {"a", 3.0}, {"initial", {{"box", 0.0}}}});
    bad({{"n", 3}, {"a", 3.0}, {"initial", {{"centers", {{0, 0}, {1, 0}, {9, 9}}}}}});
    bad({{"n", 3}, {"a", 3.0}, {"initial", {{"centers", {{0, 0}, {5, 0}}}}}});
    bad({{"n", 3}, {"a", 3.0}, {"initial", {{"box", 10.0}}}, {"tolerances", {{"eps_geom", 1e-6}}}});
    bad({{"n", 3}, {"a", 3.0}, {"initial", {{"box", 10.0}}}, {"tolerances", {{"collision_samples", 10}}}});
    bad({{"n", 3}, {"a", 3.0}, {"initial", {{"box", 10.0}}}, {"policy", {{"kind", "Scripted"}}}});
    bad({{"n", 3}, {"a", 3.0}, {"initial", {{"box", 10.0}}}, {"policy", {{"kind", "Scripted"}, {"script", {{5}}}}}});
    bad({{"n", 3}, {"a", 3.0}, {"initial", {{"box", 10.0}, {"handedness", {1, 0, 1}}}}});
    EXPECT_THROW(parse_config(json{{"n", 3}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"n", "three"}, {"a", 3.0}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"n", 3}, {"a", 3.0}, {"max_rounds", 0}}), ConfigError);
    EXPECT_THROW(parse_config(json{{"n", 3}, {"a", 3.0}, {"policy", {{"kind", "Sometimes"}}}}), InvalidInput);
}

TEST(Config, LoadFromFile) {
    const auto dir = scratch("load");
    std::ofstream(dir / "c.json") << config_to_json(random_config(4, 2, "All")).dump(2);
    EXPECT_EQ(load_config((dir / "c.json").string()).n, 4);
    std::ofstream(dir / "broken.json") << "{ n: ";
    EXPECT_THROW(load_config((dir / "broken.json").string()), ConfigError);
    EXPECT_THROW(load_config((dir / "missing.json").string()), ConfigError);
}

TEST(CmdRun, TerminalWorldGivesOneRecord) {
    const auto dir = scratch("terminal");
    json centers = json::array();
    for (int k = 0; k < 4; ++k) {
        const double t = (45.0 + 90.0 * k) * std::numbers::pi / 180.0;
        centers.push_back({3.0 / std::sqrt(2.0) * std::cos(t), 3.0 / std::sqrt(2.0) * std::sin(t)});
    }
    RunConfig c = parse_config(json{{"n", 4}, {"a", 3.0}, {"initial", {{"centers", centers}}}});
    c.trace_path = (dir / "t.jsonl").string();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run(c, out, err), kExitOk) << err.str();
    const Trace t = read_trace(c.trace_path);
    EXPECT_EQ(t.records.size(), 1u);
    EXPECT_EQ(t.outcome, Outcome::Formed);
}

TEST(CmdRun, ExpansionConfigShowsBothPhases) {
    const auto dir = scratch("expansion");
    RunConfig c = expansion_config();
    c.trace_path = (dir / "t.jsonl").string();
    c.report_path = (dir / "r.json").string();
    c.svg_dir = (dir / "svg").string();
    std::ostringstream out, err;
    ASSERT_EQ(cmd_run(c, out, err), kExitOk) << err.str();
    const Trace t = read_trace(c.trace_path);
    EXPECT_EQ(t.records[1].phase, Phase::Expansion);
    EXPECT_EQ(t.records.back().phase, Phase::Formation);
    const json report = json::parse(slurp(c.report_path));
    EXPECT_EQ(report["outcome"], "Formed");
    EXPECT_TRUE(report["success"].get<bool>());
    EXPECT_GE(report["min_collision_margin"].get<double>(), 0.0);
    EXPECT_EQ(std::distance(std::filesystem::directory_iterator(c.svg_dir), {}),
              static_cast<std::ptrdiff_t>(t.records.size()));
    const std::string frame = slurp(std::filesystem::path(c.svg_dir) / "frame_0000.svg");
    EXPECT_NE(frame.find("<svg"), std::string::npos);
}

TEST(CmdRun, OverlappingCentersExitTwo) {
    EXPECT_THROW(parse_config(json{{"n", 3}, {"a", 3.0}, {"initial", {{"centers", {{0, 0}, {1.5, 0}, {8, 8}}}}}}),
                 ConfigError);
    RunConfig c;
    c.n = 3;
    c.a = 3.0;
    c.centers = std::vector<Point2>{{0, 0}, {1.5, 0}, {8, 8}};
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run(c, out, err), kExitUsage);
    EXPECT_FALSE(err.str().empty());
}

TEST(CmdRun, RoundCapIsAFailure) {
    RunConfig c = random_config(6, 3, "RoundRobinSingleton");
    c.max_rounds = 1;
    std::ostringstream out, err;
    EXPECT_EQ(cmd_run(c, out, err), kExitFailure);
    EXPECT_NE(err.str().find("RoundCapReached"), std::string::npos) << err.str();
}

TEST(CmdRun, RepeatedRunsAreByteIdentical) {
    const auto dir = scratch("repeat");
    RunConfig c = random_config(7, 21, "RandomSubset");
    c.trace_path = (dir / "a.jsonl").string();
    std::ostringstream out, err;
    ASSERT_EQ(cmd_run(c, out, err), kExitOk) << err.str();
    c.trace_path = (dir / "b.jsonl").string();
    ASSERT_EQ(cmd_run(c, out, err), kExitOk) << err.str();
    EXPECT_EQ(slurp(dir / "a.jsonl"), slurp(dir / "b.jsonl"));
    // Parsing and re-serializing loses nothing.
    EXPECT_EQ(trace_to_jsonl(read_trace((dir / "a.jsonl").string())), slurp(dir / "a.jsonl"));
}

TEST(CmdCheck, RoundTripAndCorruption) {
    const auto dir = scratch("check");
    RunConfig c = random_config(5, 8, "All");
    c.trace_path = (dir / "t.jsonl").string();
    std::ostringstream out, err;
    ASSERT_EQ(cmd_run(c, out, err), kExitOk) << err.str();
    EXPECT_EQ(cmd_check(c.trace_path, CheckOptions{}, out, err), kExitOk) << err.str();

    // Nudge one post coordinate of round 1.
    std::istringstream lines(slurp(c.trace_path));
    std::string line, corrupted;
    for (int k = 0; std::getline(lines, line); ++k) {
        if (k == 1) {
            json j = json::parse(line);
            j["post"][0][0] = j["post"][0][0].get<double>() + 0.5;
            line = j.dump();
        }
        corrupted += line + "\n";
    }
    std::ostringstream out2, err2;
    EXPECT_EQ(check_trace_text(corrupted, CheckOptions{}, out2, err2), kExitFailure);
    EXPECT_NE(out2.str().find("FAIL"), std::string::npos);
}

TEST(CmdCheck, MalformedInputsExitTwo) {
    const auto dir = scratch("malformed");
    std::ofstream(dir / "empty.jsonl").close();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_check((dir / "empty.jsonl").string(), CheckOptions{}, out, err), kExitUsage);
    EXPECT_EQ(cmd_check((dir / "none.jsonl").string(), CheckOptions{}, out, err), kExitUsage);
    EXPECT_EQ(check_trace_text("{\"round\": 0}\nnot json\n", CheckOptions{}, out, err), kExitUsage);
}

TEST(CmdBatch, SmallMatrixAllFormed) {
    const auto dir = scratch("batch");
    BatchSpec spec;
    spec.base = random_config(3, 0, "All");
    spec.ns = {3, 4, 5, 6};
    spec.seed_first = 0;
    spec.seed_last = 9;
    spec.policies = {PolicyKind::All};
    spec.jobs = 2;
    spec.summary_path = (dir / "summary.json").string();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_batch(spec, out, err), kExitOk) << err.str();
    EXPECT_NE(out.str().find("40/40 runs formed"), std::string::npos) << out.str();
    EXPECT_TRUE(std::filesystem::exists(spec.summary_path));
}

TEST(CmdBatch, SingleRunMatchesCmdRunReport) {
    const auto dir = scratch("batch_single");
    BatchSpec spec;
    spec.base = random_config(5, 0, "All");
    spec.ns = {5};
    spec.seed_first = spec.seed_last = 13;
    spec.policies = {PolicyKind::RandomSubset};
    spec.out_dir = (dir / "runs").string();
    std::ostringstream out, err;
    ASSERT_EQ(cmd_batch(spec, out, err), kExitOk) << err.str();

    RunConfig single = batch_run_config(spec, 5, 13, PolicyKind::RandomSubset);
    single.report_path = (dir / "single.json").string();
    single.trace_path = (dir / "single.jsonl").string();
    ASSERT_EQ(cmd_run(single, out, err), kExitOk);
    EXPECT_EQ(slurp(dir / "runs" / "report_n5_s13_RandomSubset.json"), slurp(single.report_path));
    EXPECT_EQ(slurp(dir / "runs" / "trace_n5_s13_RandomSubset.jsonl"), slurp(single.trace_path));
}

TEST(CmdBatch, InvalidTemplateExitsTwo) {
    BatchSpec spec;
    spec.base = random_config(3, 0, "All");
    spec.base.a = 2.0;
    spec.ns = {3};
    spec.policies = {PolicyKind::All};
    std::ostringstream out, err;
    EXPECT_EQ(cmd_batch(spec, out, err), kExitUsage);
    spec.base.a = 3.0;
    spec.seed_first = 5;
    spec.seed_last = 4;
    EXPECT_EQ(cmd_batch(spec, out, err), kExitUsage);
}
