#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ucf/geometry.hpp"
#include "ucf/path.hpp"

namespace ucf {

enum class Phase { Expansion, Formation };
enum class Action { Stay, Move };

// Why a robot moves. Radial/ToQ/AltToQ are the three expansion branches; Snap
// is the partial-occupancy correction; Fill and Cascade service a vacant target.
enum class MoveRole { None, LeaderRadial, LeaderToQ, AltLeaderToQ, Snap, Fill, Cascade };

std::string_view to_string(Phase phase);
std::string_view to_string(Action action);
std::string_view to_string(MoveRole role);
Phase phase_from_string(std::string_view name);
Action action_from_string(std::string_view name);
MoveRole role_from_string(std::string_view name);

struct TieEvent {
    std::string what;
    std::size_t options = 0;
    std::size_t chosen = 0;
};

// Source of the "any of them" choices left open when candidates are exact
// mirror images. Implementations pick; the base records every event.
class TieBreaker {
public:
    virtual ~TieBreaker() = default;
    std::size_t choose(std::string_view what, std::size_t options);
    const std::vector<TieEvent>& events() const { return events_; }

protected:
    // `index` is the position of this choice in the event sequence.
    virtual std::size_t pick(std::size_t index, std::size_t options) = 0;

private:
    std::vector<TieEvent> events_;
};

class SeededTieBreaker final : public TieBreaker {
public:
    explicit SeededTieBreaker(std::uint64_t seed) : rng_(seed) {}

protected:
    std::size_t pick(std::size_t index, std::size_t options) override;

private:
    std::mt19937_64 rng_;
};

// Replays a fixed choice prefix (0 afterwards). Used to enumerate all
// admissible outcomes of a decision.
class ScriptedTieBreaker final : public TieBreaker {
public:
    explicit ScriptedTieBreaker(std::vector<std::size_t> script) : script_(std::move(script)) {}

protected:
    std::size_t pick(std::size_t index, std::size_t options) override;

private:
    std::vector<std::size_t> script_;
};

// Robots agree on the Y direction only; X handedness is private.
struct LocalFrame {
    int handedness = 1;
    Point2 origin;
};

Point2 to_local(Point2 global, const LocalFrame& frame);
Point2 from_local(Point2 local, const LocalFrame& frame);

struct Snapshot {
    std::size_t self_id = 0;  // bookkeeping only, never read by the decision rules
    std::vector<Point2> positions;
    FormationSpec spec;
};

Snapshot take_snapshot(std::span<const Point2> global_positions, std::size_t self_id, const LocalFrame& frame,
                       const FormationSpec& spec);
// Index of the observer inside snapshot.positions (the entry at the frame origin).
std::size_t observer_index(const Snapshot& snapshot);

struct SymmetryReport {
    double axis_x = 0.0;  // L: the vertical line x = axis_x through the SEC centre
    bool symmetric = false;
    bool north_robot_present = false;
    std::vector<Point2> leaders;
    bool fallback = false;  // no leader under the stated cases; see flags in the plan
};

struct TargetLayout {
    Circle circle;
    Point2 reference_o;
    bool reference_is_target = false;
    std::vector<double> angles;  // offsets from north, in (-pi, pi]
    std::vector<Point2> points;
};

struct Decision {
    Action action = Action::Stay;
    Phase phase = Phase::Formation;
    std::optional<Path> path;
    std::optional<Point2> destination;
    MoveRole role = MoveRole::None;
    std::optional<Point2> anchor;  // antipodal or farthest rim robot for expansion moves
    std::optional<Point2> target;
    std::vector<TieEvent> ties;
    std::vector<std::string> flags;
};

Decision from_local(const Decision& decision, const LocalFrame& frame);

struct PlannedMove {
    std::size_t robot = 0;
    Path path;
    MoveRole role = MoveRole::None;
    std::optional<std::size_t> anchor;
    std::optional<Point2> target;
};

// Every robot evaluates the same rules on the same snapshot, so the moves of the
// whole swarm are computable by each observer; compute() reads its own entry.
struct RoundPlan {
    Phase phase = Phase::Formation;
    Circle sec;
    std::vector<PlannedMove> moves;
    std::vector<std::string> flags;

    const PlannedMove* move_for(std::size_t robot) const;
};

// Throws InvalidConfiguration when two discs overlap (centres closer than 2 - eps).
void validate_configuration(std::span<const Point2> positions);

SymmetryReport detect_symmetry_and_leaders(std::span<const Point2> positions, const Circle& sec);

TargetLayout compute_target_points(const Circle& sec, std::span<const Point2> positions, int n);

enum class TargetState { Open, Occupied, Partial };

struct TargetOccupancy {
    std::vector<TargetState> state;
    std::vector<std::optional<std::size_t>> holder;  // robot occupying / partially occupying
    int occupied = 0;
    int partial = 0;
};

TargetOccupancy classify_targets(const TargetLayout& layout, std::span<const Point2> positions);

RoundPlan sec_expansion_plan(std::span<const Point2> positions, const Circle& sec, const SymmetryReport& report,
                             const FormationSpec& spec, TieBreaker& ties);
RoundPlan form_ucircle_plan(std::span<const Point2> positions, const TargetLayout& layout, const FormationSpec& spec,
                            TieBreaker& ties);
RoundPlan plan_round(std::span<const Point2> positions, const FormationSpec& spec, TieBreaker& ties);

Decision sec_expansion_decision(const Snapshot& snapshot, const SymmetryReport& report, TieBreaker& ties);
Decision form_ucircle_decision(const Snapshot& snapshot, const TargetLayout& layout, TieBreaker& ties);

// Compute phase: dispatch on the current SEC radius against the formation radius.
Decision compute(const Snapshot& snapshot, TieBreaker& ties);

// All decisions reachable by some resolution of the mirror ties (bounded enumeration).
std::vector<Decision> admissible_decisions(const Snapshot& snapshot, std::size_t max_branches = 64);

}  // namespace ucf
