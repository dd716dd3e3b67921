#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ucf/geometry.hpp"
#include "ucf/path.hpp"
#include "ucf/robot_logic.hpp"

namespace ucf {

// Ground truth the simulator owns. Robots never see ids or handedness of others.
struct WorldState {
    FormationSpec spec;
    std::vector<Point2> centers;
    std::vector<int> handedness;  // private X orientation per robot, +1 or -1
    std::size_t round = 0;

    std::size_t size() const { return centers.size(); }
};

enum class PolicyKind { All, RandomSubset, RoundRobinSingleton, Scripted };

std::string_view to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(std::string_view name);

struct ActivationPolicy {
    PolicyKind kind = PolicyKind::All;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::size_t>> script;  // Scripted: cycled when exhausted
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
    double worst_margin = 0.0;  // signed distance to violation; pass <=> worst_margin >= 0
    bool applicable = true;
};

struct RobotDecision {
    std::size_t id = 0;
    Decision decision;  // global frame
    std::optional<std::size_t> anchor_id;
};

struct RoundRecord {
    std::size_t round = 0;
    Phase phase = Phase::Formation;  // from the pre-round SEC radius
    std::vector<std::size_t> activated;
    std::vector<RobotDecision> decisions;  // one per activated robot, ascending id
    std::vector<Point2> pre;
    std::vector<Point2> post;
    std::vector<std::string> flags;
    std::vector<CheckResult> checks;

    const RobotDecision* decision_of(std::size_t id) const;
    std::vector<const RobotDecision*> movers() const;
};

enum class Outcome { Formed, RoundCapReached, InvariantViolation };

std::string_view to_string(Outcome outcome);
Outcome outcome_from_string(std::string_view name);

struct RunMeta {
    int n = 0;
    double a = 0.0;
    ActivationPolicy policy;
    std::uint64_t master_seed = 0;
    std::size_t max_rounds = 0;
    int collision_samples = 1000;
    std::vector<int> handedness;
};

// records[0] describes the initial world (no activation); round k >= 1 follows.
struct Trace {
    RunMeta meta;
    std::vector<RoundRecord> records;
    Outcome outcome = Outcome::RoundCapReached;
    std::string detail;
};

}  // namespace ucf
