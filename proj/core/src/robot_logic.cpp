#include "ucf/robot_logic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ucf/errors.hpp"

namespace ucf {

namespace {

constexpr double kTieTol = 1e-9;
// Sliding contact (centres exactly 2 apart) is allowed.
constexpr double kClearance = 2.0 * kRobotRadius - kEpsGeom;

Point2 unit(Point2 v) {
    const double len = norm(v);
    return len == 0.0 ? Point2{0.0, 1.0} : (1.0 / len) * v;
}

bool on_circle(Point2 p, const Circle& c) {
    return std::abs(distance(p, c.center) - c.radius) <= kEpsGeom * std::max(1.0, c.radius);
}

std::vector<Disc> discs_except(std::span<const Point2> positions, std::size_t skip) {
    std::vector<Disc> out;
    out.reserve(positions.size());
    for (std::size_t j = 0; j < positions.size(); ++j)
        if (j != skip) out.push_back({positions[j], kRobotRadius});
    return out;
}

std::optional<std::size_t> robot_near(std::span<const Point2> positions, Point2 p, double tol) {
    std::optional<std::size_t> best;
    double best_d = tol;
    for (std::size_t j = 0; j < positions.size(); ++j) {
        const double d = distance(positions[j], p);
        if (d <= best_d) {
            best = j;
            best_d = d;
        }
    }
    return best;
}

// Candidates ranked by ascending keys; entries equal on every key (within
// kTieTol) share a group. Only frame-independent keys are ever used.
struct Ranked {
    std::size_t index;
    double k1, k2, k3;
};

std::vector<std::vector<std::size_t>> rank_groups(std::vector<Ranked> items) {
    std::sort(items.begin(), items.end(), [](const Ranked& a, const Ranked& b) {
        if (a.k1 != b.k1) return a.k1 < b.k1;
        if (a.k2 != b.k2) return a.k2 < b.k2;
        if (a.k3 != b.k3) return a.k3 < b.k3;
        return a.index < b.index;
    });
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const bool same = i > 0 && std::abs(items[i].k1 - items[i - 1].k1) <= kTieTol &&
                          std::abs(items[i].k2 - items[i - 1].k2) <= kTieTol &&
                          std::abs(items[i].k3 - items[i - 1].k3) <= kTieTol;
        if (same)
            groups.back().push_back(items[i].index);
        else
            groups.push_back({items[i].index});
    }
    return groups;
}

std::vector<std::size_t> resolve_group(std::vector<std::size_t> group, TieBreaker& ties, std::string_view what) {
    if (group.size() > 1) {
        const std::size_t first = ties.choose(what, group.size());
        std::rotate(group.begin(), group.begin() + static_cast<std::ptrdiff_t>(first % group.size()),
                    group.begin() + static_cast<std::ptrdiff_t>(first % group.size()) + 1);
    }
    return group;
}

void add_flag(std::vector<std::string>& flags, std::string flag) {
    if (std::find(flags.begin(), flags.end(), flag) == flags.end()) flags.push_back(std::move(flag));
}

}  // namespace

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(Phase phase) { return phase == Phase::Expansion ? "Expansion" : "Formation"; }
std::string_view to_string(Action action) { return action == Action::Move ? "Move" : "Stay"; }

std::string_view to_string(MoveRole role) {
    switch (role) {
        case MoveRole::None: return "None";
        case MoveRole::LeaderRadial: return "LeaderRadial";
        case MoveRole::LeaderToQ: return "LeaderToQ";
        case MoveRole::AltLeaderToQ: return "AltLeaderToQ";
        case MoveRole::Snap: return "Snap";
        case MoveRole::Fill: return "Fill";
        case MoveRole::Cascade: return "Cascade";
    }
    return "None";
}

Phase phase_from_string(std::string_view name) {
    if (name == "Expansion") return Phase::Expansion;
    if (name == "Formation") return Phase::Formation;
    throw InvalidInput("unknown phase '" + std::string(name) + "'");
}

Action action_from_string(std::string_view name) {
    if (name == "Move") return Action::Move;
    if (name == "Stay") return Action::Stay;
    throw InvalidInput("unknown action '" + std::string(name) + "'");
}

MoveRole role_from_string(std::string_view name) {
    for (MoveRole r : {MoveRole::None, MoveRole::LeaderRadial, MoveRole::LeaderToQ, MoveRole::AltLeaderToQ,
                       MoveRole::Snap, MoveRole::Fill, MoveRole::Cascade})
        if (to_string(r) == name) return r;
    throw InvalidInput("unknown move role '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Tie breakers

std::size_t TieBreaker::choose(std::string_view what, std::size_t options) {
    if (options == 0) throw InvalidInput("tie with no options");
    const std::size_t chosen = std::min(pick(events_.size(), options), options - 1);
    events_.push_back({std::string(what), options, chosen});
    return chosen;
}

// Modulo bias is irrelevant for the two-way ties that occur here.
std::size_t SeededTieBreaker::pick(std::size_t, std::size_t options) {
    return static_cast<std::size_t>(rng_() % options);
}

std::size_t ScriptedTieBreaker::pick(std::size_t index, std::size_t) {
    return index < script_.size() ? script_[index] : 0;
}

// ---------------------------------------------------------------------------
// Frames and snapshots

Point2 to_local(Point2 global, const LocalFrame& frame) {
    const double h = frame.handedness < 0 ? -1.0 : 1.0;
    return {h * (global.x - frame.origin.x), global.y - frame.origin.y};
}

Point2 from_local(Point2 local, const LocalFrame& frame) {
    const double h = frame.handedness < 0 ? -1.0 : 1.0;
    return {h * local.x + frame.origin.x, local.y + frame.origin.y};
}

Snapshot take_snapshot(std::span<const Point2> global_positions, std::size_t self_id, const LocalFrame& frame,
                       const FormationSpec& spec) {
    Snapshot s{self_id, {}, spec};
    s.positions.reserve(global_positions.size());
    for (Point2 p : global_positions) s.positions.push_back(to_local(p, frame));
    return s;
}

std::size_t observer_index(const Snapshot& snapshot) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < snapshot.positions.size(); ++j) {
        const double d = norm(snapshot.positions[j]);
        if (d < best_d) {
            best = j;
            best_d = d;
        }
    }
    if (best_d > kEpsGeom) throw InvalidInput("snapshot has no robot at the observer's origin");
    return best;
}

Decision from_local(const Decision& decision, const LocalFrame& frame) {
    Decision out = decision;
    const double h = frame.handedness < 0 ? -1.0 : 1.0;
    if (decision.path) out.path = transform_path(*decision.path, h, frame.origin);
    if (decision.destination) out.destination = from_local(*decision.destination, frame);
    if (decision.anchor) out.anchor = from_local(*decision.anchor, frame);
    if (decision.target) out.target = from_local(*decision.target, frame);
    return out;
}

const PlannedMove* RoundPlan::move_for(std::size_t robot) const {
    for (const auto& m : moves)
        if (m.robot == robot) return &m;
    return nullptr;
}

void validate_configuration(std::span<const Point2> positions) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!std::isfinite(positions[i].x) || !std::isfinite(positions[i].y))
            throw InvalidConfiguration("robot " + std::to_string(i) + " has a non-finite coordinate");
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            if (distance(positions[i], positions[j]) < 2.0 * kRobotRadius - kEpsGeom)
                throw InvalidConfiguration("robots " + std::to_string(i) + " and " + std::to_string(j) +
                                           " overlap (centre distance " +
                                           std::to_string(distance(positions[i], positions[j])) + ")");
    }
}

// ---------------------------------------------------------------------------
// Leader election

namespace {

Point2 mirror(Point2 p, double axis_x) { return {2.0 * axis_x - p.x, p.y}; }

bool on_axis(Point2 p, double axis_x) { return std::abs(p.x - axis_x) <= kEpsGeom; }

bool has_mirror(std::span<const Point2> positions, std::size_t i, double axis_x) {
    const Point2 m = mirror(positions[i], axis_x);
    for (std::size_t j = 0; j < positions.size(); ++j)
        if (j != i && distance(positions[j], m) <= kEpsGeom) return true;
    return false;
}

}  // namespace

SymmetryReport detect_symmetry_and_leaders(std::span<const Point2> positions, const Circle& sec) {
    SymmetryReport rep;
    rep.axis_x = sec.center.x;
    const double ax = rep.axis_x;
    const Point2 o = sec.north();

    rep.symmetric = true;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!on_axis(positions[i], ax) && !has_mirror(positions, i, ax)) {
            rep.symmetric = false;
            break;
        }
    }
    rep.north_robot_present = robot_near(positions, o, kEpsSnap).has_value();

    // On-SEC robots off the axis, highest first.
    std::vector<std::size_t> rim;
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (on_circle(positions[i], sec) && !on_axis(positions[i], ax)) rim.push_back(i);
    std::sort(rim.begin(), rim.end(), [&](std::size_t a, std::size_t b) { return positions[a].y > positions[b].y; });

    if (!rep.symmetric) {
        for (std::size_t i : rim) {
            if (!has_mirror(positions, i, ax)) {
                rep.leaders.push_back(positions[i]);
                return rep;
            }
        }
        // Every rim robot off L is mirrored, yet the whole set is not: orient by the
        // highest unmirrored robot anywhere and take the top rim robot on its side.
        rep.fallback = true;
        if (rim.empty()) return rep;
        std::vector<std::size_t> all(positions.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        std::sort(all.begin(), all.end(), [&](std::size_t a, std::size_t b) {
            if (positions[a].y != positions[b].y) return positions[a].y > positions[b].y;
            return std::abs(positions[a].x - ax) > std::abs(positions[b].x - ax);
        });
        double side = 1.0;
        for (std::size_t i : all) {
            if (!on_axis(positions[i], ax) && !has_mirror(positions, i, ax)) {
                side = positions[i].x > ax ? 1.0 : -1.0;
                break;
            }
        }
        const double top_y = positions[rim.front()].y;
        for (std::size_t i : rim) {
            if (std::abs(positions[i].y - top_y) <= kEpsGeom && (positions[i].x - ax) * side > 0.0) {
                rep.leaders.push_back(positions[i]);
                return rep;
            }
        }
        rep.leaders.push_back(positions[rim.front()]);
        return rep;
    }

    // Symmetric: the highest mirror pair on the rim. A robot on the north point is never part of it.
    if (rim.empty()) {
        rep.fallback = true;
        if (auto north = robot_near(positions, o, kEpsSnap)) rep.leaders.push_back(positions[*north]);
        return rep;
    }
    const double top_y = positions[rim.front()].y;
    for (std::size_t i : rim)
        if (std::abs(positions[i].y - top_y) <= kEpsGeom) rep.leaders.push_back(positions[i]);
    return rep;
}

// ---------------------------------------------------------------------------
// SEC expansion

RoundPlan sec_expansion_plan(std::span<const Point2> positions, const Circle& sec, const SymmetryReport& report,
                             const FormationSpec& spec, TieBreaker& ties) {
    if (!(sec.radius < spec.r - kEpsGeom))
        throw PhaseError("SEC expansion requested with r_c = " + std::to_string(sec.radius) +
                         " >= r = " + std::to_string(spec.r));
    RoundPlan plan;
    plan.phase = Phase::Expansion;
    plan.sec = sec;
    if (report.fallback) add_flag(plan.flags, "leader_fallback");
    const Point2 c = sec.center;
    const double ax = sec.center.x;

    for (Point2 leader_pos : report.leaders) {
        const auto li = robot_near(positions, leader_pos, kEpsGeom);
        if (!li) continue;
        const Point2 p = 2.0 * c - positions[*li];

        if (const auto rp = robot_near(positions, p, kEpsSnap)) {
            // Antipode occupied: push straight out so the diameter becomes 2r.
            const double d = 2.0 * (spec.r - sec.radius);
            const Point2 dest = positions[*li] + d * unit(positions[*li] - c);
            plan.moves.push_back({*li, make_segment_path(positions[*li], dest), MoveRole::LeaderRadial, *rp, {}});
            continue;
        }

        // Anchor: rim robot farthest from the leader, ties to the larger Y.
        std::vector<Ranked> far;
        for (std::size_t j = 0; j < positions.size(); ++j)
            if (j != *li && on_circle(positions[j], sec))
                far.push_back({j, -distance(positions[j], positions[*li]), -positions[j].y,
                               -std::abs(positions[j].x - ax)});
        if (far.empty()) {
            add_flag(plan.flags, "no_far_robot");
            continue;
        }
        auto try_anchor = [&](std::size_t rf) -> std::optional<PlannedMove> {
            const Point2 q = positions[rf] + (2.0 * spec.r) * unit(c - positions[rf]);
            auto reaches_q = [&](std::size_t j) {
                if (distance(positions[j], q) == 0.0) return false;
                const auto others = discs_except(positions, j);
                return is_free_path(positions[j], q, others) && is_vacant(q, others);
            };
            if (rf != *li && reaches_q(*li))
                return PlannedMove{*li, make_segment_path(positions[*li], q), MoveRole::LeaderToQ, rf, q};
            // Stand-in leader: nearest robot with a free path to q.
            std::vector<Ranked> alt;
            for (std::size_t j = 0; j < positions.size(); ++j)
                if (j != rf && j != *li && reaches_q(j))
                    alt.push_back({j, distance(positions[j], q), -positions[j].y, -std::abs(positions[j].x - ax)});
            if (alt.empty()) return std::nullopt;
            const std::size_t mover = resolve_group(rank_groups(std::move(alt)).front(), ties, "alt_leader").front();
            return PlannedMove{mover, make_segment_path(positions[mover], q), MoveRole::AltLeaderToQ, rf, q};
        };

        // Any rim robot pins the new circle of radius r through q, so when nobody
        // reaches the q of the farthest robot, the next farthest rim robots are tried, the leader last.
        std::optional<PlannedMove> move;
        bool first_anchor = true;
        for (auto& group : rank_groups(std::move(far))) {
            for (std::size_t rf : resolve_group(std::move(group), ties, "far_robot")) {
                move = try_anchor(rf);
                if (move) break;
                first_anchor = false;
            }
            if (move) break;
        }
        if (!move) move = try_anchor(*li);
        if (!move) {
            add_flag(plan.flags, "expansion_blocked");
            continue;
        }
        if (!first_anchor) add_flag(plan.flags, "anchor_fallback");
        plan.moves.push_back(std::move(*move));
    }

    // Two leaders resolving to the same alternative robot: it serves one of them.
    if (plan.moves.size() == 2 && plan.moves[0].robot == plan.moves[1].robot) {
        const std::size_t keep = ties.choose("shared_alt_leader", 2);
        plan.moves.erase(plan.moves.begin() + static_cast<std::ptrdiff_t>(1 - keep));
    }
    if (plan.moves.size() == 2 && path_path_clearance(plan.moves[0].path, plan.moves[1].path) < kClearance)
        add_flag(plan.flags, "concurrent_leader_conflict");
    return plan;
}

// ---------------------------------------------------------------------------
// Target layout

TargetLayout compute_target_points(const Circle& sec, std::span<const Point2> positions, int n) {
    if (n < 3) throw InvalidSpec("target layout needs n >= 3");
    TargetLayout layout;
    layout.circle = sec;
    layout.reference_o = sec.north();
    layout.reference_is_target = robot_near(positions, layout.reference_o, kEpsSnap).has_value();
    const double step = 2.0 * std::numbers::pi / n;
    const double first = layout.reference_is_target ? 0.0 : step / 2.0;
    for (int k = 0; k < n; ++k) {
        const double offset = wrap_angle(first + k * step);
        layout.angles.push_back(offset);
        layout.points.push_back(
            {sec.center.x + sec.radius * std::sin(offset), sec.center.y + sec.radius * std::cos(offset)});
    }
    return layout;
}

TargetOccupancy classify_targets(const TargetLayout& layout, std::span<const Point2> positions) {
    TargetOccupancy occ;
    occ.state.assign(layout.points.size(), TargetState::Open);
    occ.holder.assign(layout.points.size(), std::nullopt);
    for (std::size_t k = 0; k < layout.points.size(); ++k) {
        std::optional<std::size_t> best;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < positions.size(); ++j) {
            const double d = distance(positions[j], layout.points[k]);
            if (d < best_d) {
                best = j;
                best_d = d;
            }
        }
        if (!best) continue;
        if (best_d <= kEpsSnap) {
            occ.state[k] = TargetState::Occupied;
            occ.holder[k] = best;
            ++occ.occupied;
        } else if (best_d < kRobotRadius) {
            occ.state[k] = TargetState::Partial;
            occ.holder[k] = best;
            ++occ.partial;
        }
    }
    return occ;
}

// ---------------------------------------------------------------------------
// Uniform circle formation

namespace {

class FormationPlanner {
public:
    FormationPlanner(std::span<const Point2> positions, const TargetLayout& layout, TieBreaker& ties)
        : pos_(positions), layout_(layout), sec_(layout.circle), ties_(ties), occ_(classify_targets(layout, positions)) {
        on_sec_.resize(pos_.size());
        for (std::size_t j = 0; j < pos_.size(); ++j) on_sec_[j] = on_circle(pos_[j], sec_);
        assigned_.assign(pos_.size(), false);
        for (const auto& h : occ_.holder)
            if (h) assigned_[*h] = true;
    }

    RoundPlan plan() {
        RoundPlan out;
        out.phase = Phase::Formation;
        out.sec = sec_;
        if (occ_.occupied == static_cast<int>(layout_.points.size())) return out;

        // A cascade leaves the occupied count unchanged, so a plain fill of any
        // group is preferred over it.
        for (bool pinned : {true, false}) {
            for (bool cascade : {false, true}) {
                require_pin_ = pinned;
                allow_cascade_ = cascade;
                moves_.clear();
                plan_snaps();
                plan_fills();
                if (!moves_.empty()) break;
            }
            if (!moves_.empty()) {
                if (!pinned) add_flag(flags_, "sec_unpinned_fallback");
                break;
            }
        }
        if (moves_.empty()) add_flag(flags_, "formation_stuck");
        out.moves = moves_;
        out.flags = flags_;
        return out;
    }

private:
    bool clear_of_robots(const Path& path, std::size_t mover) const {
        for (std::size_t j = 0; j < pos_.size(); ++j)
            if (j != mover && path_point_clearance(path, pos_[j]) < kClearance) return false;
        return true;
    }

    bool compatible(const PlannedMove& cand, const std::vector<PlannedMove>& with) const {
        for (const auto& m : with) {
            if (m.robot == cand.robot) return false;
            if (path_path_clearance(m.path, cand.path) < kClearance) return false;
        }
        return true;
    }

    // The SEC must survive whichever subset of the rim movers actually gets activated.
    bool keeps_sec(const std::vector<PlannedMove>& planned) const {
        std::vector<const PlannedMove*> risky;
        for (const auto& m : planned)
            if (on_sec_[m.robot]) risky.push_back(&m);
        if (risky.empty()) return true;
        const std::size_t k = std::min<std::size_t>(risky.size(), 10);
        std::vector<Point2> pts;
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            pts.clear();
            for (std::size_t j = 0; j < pos_.size(); ++j) {
                if (!on_sec_[j]) continue;
                bool moved = false;
                for (std::size_t b = 0; b < k; ++b)
                    if ((mask >> b & 1U) && risky[b]->robot == j) moved = true;
                if (!moved) pts.push_back(pos_[j]);
            }
            for (std::size_t b = 0; b < k; ++b)
                if (mask >> b & 1U) pts.push_back(risky[b]->path.end);
            if (!pins_circle(pts, sec_.center)) return false;
        }
        return true;
    }

    bool feasible(const PlannedMove& cand, const std::vector<PlannedMove>& with) const {
        if (!clear_of_robots(cand.path, cand.robot)) return false;
        if (!compatible(cand, with)) return false;
        if (require_pin_) {
            auto all = with;
            all.push_back(cand);
            if (!keeps_sec(all)) return false;
        }
        return true;
    }

    void plan_snaps() {
        std::vector<std::size_t> order;
        for (std::size_t k = 0; k < layout_.points.size(); ++k)
            if (occ_.state[k] == TargetState::Partial) order.push_back(k);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return layout_.points[a].y > layout_.points[b].y; });
        for (std::size_t k : order) {
            const std::size_t robot = *occ_.holder[k];
            PlannedMove cand{robot, make_segment_path(pos_[robot], layout_.points[k]), MoveRole::Snap, {},
                             layout_.points[k]};
            if (feasible(cand, moves_)) moves_.push_back(std::move(cand));
            else add_flag(flags_, "snap_deferred");
        }
    }

    std::vector<std::size_t> blockers_of(const Path& path, std::size_t mover) const {
        std::vector<std::pair<double, std::size_t>> hits;
        for (std::size_t j = 0; j < pos_.size(); ++j)
            if (j != mover && path_point_clearance(path, pos_[j]) < kClearance)
                hits.push_back({distance(pos_[mover], pos_[j]), j});
        std::sort(hits.begin(), hits.end());
        std::vector<std::size_t> out;
        for (const auto& h : hits) out.push_back(h.second);
        return out;
    }

    // Straight first; then around each blocker, shorter side first, ties to the
    // side whose arc midpoint is higher.
    std::optional<PlannedMove> interior_route(std::size_t x, Point2 target) {
        PlannedMove straight{x, make_segment_path(pos_[x], target), MoveRole::Fill, {}, target};
        if (feasible(straight, moves_)) return straight;
        for (std::size_t b : blockers_of(straight.path, x)) {
            std::vector<Path> sides;
            for (int dir : {+1, -1})
                if (auto p = make_obstacle_slide(pos_[x], target, pos_[b], dir)) sides.push_back(std::move(*p));
            if (sides.size() == 2) {
                const double la = sides[0].total_length;
                const double lb = sides[1].total_length;
                bool swap = lb < la - kTieTol;
                if (std::abs(la - lb) <= kTieTol) {
                    const double ya = arc_mid_y(sides[0]);
                    const double yb = arc_mid_y(sides[1]);
                    if (yb > ya + kTieTol) swap = true;
                    else if (std::abs(ya - yb) <= kTieTol) swap = ties_.choose("slide_side", 2) == 1;
                }
                if (swap) std::swap(sides[0], sides[1]);
            }
            for (auto& p : sides) {
                PlannedMove cand{x, std::move(p), MoveRole::Fill, {}, target};
                if (feasible(cand, moves_)) return cand;
            }
        }
        return std::nullopt;
    }

    static double arc_mid_y(const Path& p) {
        for (const auto& piece : p.pieces)
            if (const auto* a = std::get_if<ArcPiece>(&piece))
                return piece_point_at(piece, 0.5 * std::abs(a->sweep) * a->radius).y;
        return path_point_at(p, 0.5).y;
    }

    std::optional<std::size_t> adjacent_holder(std::size_t target_k, std::size_t robot) const {
        const std::size_t n = layout_.points.size();
        for (std::size_t nb : {(target_k + 1) % n, (target_k + n - 1) % n})
            if (occ_.state[nb] == TargetState::Occupied && occ_.holder[nb] == robot) return nb;
        return std::nullopt;
    }

    std::optional<PlannedMove> rim_route(std::size_t x, std::size_t target_k) {
        const Point2 target = layout_.points[target_k];
        const double turn = wrap_angle(angle_of(sec_.center, target) - angle_of(sec_.center, pos_[x]));
        int short_dir = turn >= 0.0 ? +1 : -1;
        if (std::abs(std::abs(turn) - std::numbers::pi) <= kTieTol)
            short_dir = ties_.choose("antipodal_arc_direction", 2) == 0 ? +1 : -1;

        PlannedMove arc{x, make_arc_path(sec_, pos_[x], target, short_dir), MoveRole::Fill, {}, target};
        if (feasible(arc, moves_)) return arc;

        // Cascade: the only obstruction is the robot on a target next to T; it
        // slides into T and leaves its own target for a later round.
        const auto blockers = blockers_of(arc.path, x);
        if (allow_cascade_ && blockers.size() == 1 && adjacent_holder(target_k, blockers.front())) {
            const std::size_t r2 = blockers.front();
            const double t2 = wrap_angle(angle_of(sec_.center, target) - angle_of(sec_.center, pos_[r2]));
            PlannedMove cascade{r2, make_arc_path(sec_, pos_[r2], target, t2 >= 0.0 ? +1 : -1), MoveRole::Cascade,
                                {}, target};
            if (feasible(cascade, moves_)) return cascade;
        }

        PlannedMove long_arc{x, make_arc_path(sec_, pos_[x], target, -short_dir), MoveRole::Fill, {}, target};
        if (feasible(long_arc, moves_)) return long_arc;
        return interior_route(x, target);
    }

    std::optional<PlannedMove> best_for(std::size_t target_k) {
        const Point2 t = layout_.points[target_k];
        const double ax = sec_.center.x;
        std::vector<Ranked> cands;
        for (std::size_t j = 0; j < pos_.size(); ++j) {
            if (assigned_[j]) continue;
            bool moving = false;
            for (const auto& m : moves_) moving = moving || m.robot == j;
            if (!moving) cands.push_back({j, distance(pos_[j], t), -pos_[j].y, -std::abs(pos_[j].x - ax)});
        }
        for (auto& group : rank_groups(std::move(cands))) {
            if (group.size() > 1) {
                // Exact mirror images competing for one target: no frame-independent
                // choice exists, so nobody takes it this round.
                add_flag(flags_, "mirror_mover_tie");
                continue;
            }
            const std::size_t x = group.front();
            auto move = on_sec_[x] ? rim_route(x, target_k) : interior_route(x, t);
            if (move) return move;
        }
        return std::nullopt;
    }

    void plan_fills() {
        std::vector<std::size_t> open;
        for (std::size_t k = 0; k < layout_.points.size(); ++k)
            if (occ_.state[k] == TargetState::Open) open.push_back(k);
        std::sort(open.begin(), open.end(),
                  [&](std::size_t a, std::size_t b) { return layout_.points[a].y > layout_.points[b].y; });

        std::size_t i = 0;
        while (i < open.size()) {
            std::vector<std::size_t> group{open[i]};
            while (i + group.size() < open.size() &&
                   std::abs(layout_.points[open[i + group.size()]].y - layout_.points[open[i]].y) <= kTieTol)
                group.push_back(open[i + group.size()]);
            i += group.size();
            if (serve_group(group)) {
                if (group.front() != open.front()) add_flag(flags_, "lower_target_served");
                return;
            }
        }
    }

    bool serve_group(const std::vector<std::size_t>& group) {
        if (group.size() == 1) {
            auto m = best_for(group[0]);
            if (!m) return false;
            moves_.push_back(std::move(*m));
            return true;
        }
        auto m0 = best_for(group[0]);
        auto m1 = best_for(group[1]);
        if (m0 && m1 && m0->robot == m1->robot) {
            // One robot nearest to both mirror targets goes to the nearer one alone.
            const double d0 = distance(pos_[m0->robot], layout_.points[group[0]]);
            const double d1 = distance(pos_[m1->robot], layout_.points[group[1]]);
            bool second = d1 < d0 - kTieTol;
            if (std::abs(d0 - d1) <= kTieTol) second = ties_.choose("mirror_targets", 2) == 1;
            moves_.push_back(second ? std::move(*m1) : std::move(*m0));
            return true;
        }
        if (m0 && m1) {
            auto with = moves_;
            with.push_back(*m0);
            if (feasible(*m1, with)) {
                moves_.push_back(std::move(*m0));
                moves_.push_back(std::move(*m1));
                return true;
            }
            const double d0 = m0->path.total_length;
            const double d1 = m1->path.total_length;
            if (std::abs(d0 - d1) <= kTieTol) {
                add_flag(flags_, "mirror_pair_conflict");
                return false;
            }
            moves_.push_back(d0 < d1 ? std::move(*m0) : std::move(*m1));
            return true;
        }
        if (m0) moves_.push_back(std::move(*m0));
        else if (m1) moves_.push_back(std::move(*m1));
        else return false;
        return true;
    }

    std::span<const Point2> pos_;
    const TargetLayout& layout_;
    Circle sec_;
    TieBreaker& ties_;
    TargetOccupancy occ_;
    std::vector<bool> on_sec_;
    std::vector<bool> assigned_;
    std::vector<PlannedMove> moves_;
    std::vector<std::string> flags_;
    bool require_pin_ = true;
    bool allow_cascade_ = false;
};

}  // namespace

RoundPlan form_ucircle_plan(std::span<const Point2> positions, const TargetLayout& layout, const FormationSpec& spec,
                            TieBreaker& ties) {
    if (static_cast<int>(layout.points.size()) != spec.n || static_cast<int>(positions.size()) != spec.n)
        throw InvalidLayout("layout has " + std::to_string(layout.points.size()) + " targets for " +
                            std::to_string(positions.size()) + " robots");
    if (layout.circle.radius < spec.r - kEpsGeom)
        throw PhaseError("uniform circle formation requested with r_c < r");
    return FormationPlanner(positions, layout, ties).plan();
}

RoundPlan plan_round(std::span<const Point2> positions, const FormationSpec& spec, TieBreaker& ties) {
    validate_configuration(positions);
    if (static_cast<int>(positions.size()) != spec.n)
        throw InvalidConfiguration("snapshot has " + std::to_string(positions.size()) + " robots, spec says " +
                                   std::to_string(spec.n));
    const Circle sec = smallest_enclosing_circle(positions);
    if (sec.radius < spec.r - kEpsGeom)
        return sec_expansion_plan(positions, sec, detect_symmetry_and_leaders(positions, sec), spec, ties);
    RoundPlan plan = form_ucircle_plan(positions, compute_target_points(sec, positions, spec.n), spec, ties);
    if (!plan.moves.empty() || std::find(plan.flags.begin(), plan.flags.end(), "formation_stuck") == plan.flags.end())
        return plan;
    // No target can be reached on the current circle: grow it by one robot radius
    // and retry the layout from the larger circle next round.
    FormationSpec wider = spec;
    wider.r = sec.radius + kRobotRadius;
    RoundPlan grow = sec_expansion_plan(positions, sec, detect_symmetry_and_leaders(positions, sec), wider, ties);
    grow.phase = Phase::Formation;
    for (const auto& f : plan.flags) add_flag(grow.flags, f);
    add_flag(grow.flags, "sec_regrown");
    return grow;
}

namespace {

Decision decision_from_plan(const RoundPlan& plan, std::size_t self, std::span<const Point2> positions) {
    Decision d;
    d.phase = plan.phase;
    d.flags = plan.flags;
    if (const PlannedMove* m = plan.move_for(self)) {
        d.action = Action::Move;
        d.path = m->path;
        d.destination = m->path.end;
        d.role = m->role;
        if (m->anchor) d.anchor = positions[*m->anchor];
        d.target = m->target ? m->target : std::optional<Point2>(m->path.end);
    }
    return d;
}

}  // namespace

Decision sec_expansion_decision(const Snapshot& snapshot, const SymmetryReport& report, TieBreaker& ties) {
    const Circle sec = smallest_enclosing_circle(snapshot.positions);
    const RoundPlan plan = sec_expansion_plan(snapshot.positions, sec, report, snapshot.spec, ties);
    return decision_from_plan(plan, observer_index(snapshot), snapshot.positions);
}

Decision form_ucircle_decision(const Snapshot& snapshot, const TargetLayout& layout, TieBreaker& ties) {
    const RoundPlan plan = form_ucircle_plan(snapshot.positions, layout, snapshot.spec, ties);
    return decision_from_plan(plan, observer_index(snapshot), snapshot.positions);
}

Decision compute(const Snapshot& snapshot, TieBreaker& ties) {
    const std::size_t before = ties.events().size();
    const RoundPlan plan = plan_round(snapshot.positions, snapshot.spec, ties);
    Decision d = decision_from_plan(plan, observer_index(snapshot), snapshot.positions);
    d.ties.assign(ties.events().begin() + static_cast<std::ptrdiff_t>(before), ties.events().end());
    return d;
}

std::vector<Decision> admissible_decisions(const Snapshot& snapshot, std::size_t max_branches) {
    std::vector<Decision> out;
    std::vector<std::size_t> script;
    for (std::size_t branch = 0; branch < max_branches; ++branch) {
        ScriptedTieBreaker ties(script);
        out.push_back(compute(snapshot, ties));
        // Odometer step over the recorded branch points.
        const auto& ev = ties.events();
        std::vector<std::size_t> next;
        for (const auto& e : ev) next.push_back(e.chosen);
        while (!next.empty() && next.back() + 1 >= ev[next.size() - 1].options) next.pop_back();
        if (next.empty()) break;
        ++next.back();
        script = std::move(next);
    }
    return out;
}

}  // namespace ucf
