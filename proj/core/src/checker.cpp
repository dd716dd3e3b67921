#include "ucf/checker.hpp"

#include "ucf/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace ucf {
namespace {

constexpr double kContact = 2.0 * kRobotRadius - 1e-9;
constexpr double kOnSecTol = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

CheckResult result(std::string name, double margin, std::string detail) {
    return CheckResult{std::move(name), margin >= 0.0, std::move(detail), margin, true};
}

CheckResult not_applicable(std::string name, std::string why) {
    return CheckResult{std::move(name), true, std::move(why), 0.0, false};
}

std::size_t occupied_count(std::span<const Point2> centers, const FormationSpec& spec) {
    const Circle sec = smallest_enclosing_circle(centers);
    if (sec.radius < spec.r - kEpsGeom) return 0;
    const TargetLayout layout = compute_target_points(sec, centers, spec.n);
    const TargetOccupancy occ = classify_targets(layout, centers);
    return static_cast<std::size_t>(std::count(occ.state.begin(), occ.state.end(), TargetState::Occupied));
}

// Minimum over t in [0,1] of |(p0 + t dp)|.
double min_linear_norm(Point2 p0, Point2 dp) {
    const double dd = dot(dp, dp);
    double t = dd > 0.0 ? -dot(p0, dp) / dd : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p0 + t * dp);
}

struct Linear {
    Point2 from;
    Point2 to;
};

std::optional<Linear> linear_motion(const RoundRecord& rec, std::size_t id) {
    const RobotDecision* d = rec.decision_of(id);
    if (!d || d->decision.action != Action::Move || !d->decision.path) return Linear{rec.pre[id], rec.pre[id]};
    const Path& p = *d->decision.path;
    if (p.pieces.size() != 1 || !std::holds_alternative<SegmentPiece>(p.pieces.front())) return std::nullopt;
    return Linear{p.start, p.end};
}

}  // namespace

PolygonMetrics polygon_metrics(std::span<const Point2> centers) {
    PolygonMetrics m;
    if (centers.empty()) return m;
    m.circle = smallest_enclosing_circle(centers);
    const std::size_t n = centers.size();
    if (n < 2) return m;
    const Point2 c = m.circle.center;
    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);

    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < n; ++i) {
        m.max_radial_deviation = std::max(m.max_radial_deviation, std::abs(distance(centers[i], c) - m.circle.radius));
        order.emplace_back(angle_of(c, centers[i]), i);
    }
    std::sort(order.begin(), order.end());

    m.min_adjacent_chord = kInf;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& [ang, i] = order[k];
        const auto& [next_ang, j] = order[(k + 1) % n];
        double gap = next_ang - ang;
        if (k + 1 == n) gap += 2.0 * std::numbers::pi;
        m.max_angle_deviation = std::max(m.max_angle_deviation, std::abs(gap - step));
        m.min_adjacent_chord = std::min(m.min_adjacent_chord, distance(centers[i], centers[j]));
    }

    // Best rotation: circular mean of each sorted angle minus its ideal offset.
    double sx = 0.0;
    double sy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double phase = order[k].first - step * static_cast<double>(k);
        sx += std::cos(phase);
        sy += std::sin(phase);
    }
    const double rot = std::atan2(sy, sx);
    for (std::size_t k = 0; k < n; ++k) {
        const Point2 ideal = polar(c, m.circle.radius, rot + step * static_cast<double>(k));
        m.max_vertex_deviation = std::max(m.max_vertex_deviation, distance(ideal, centers[order[k].second]));
    }
    return m;
}

CheckResult check_static_overlap(std::span<const Point2> centers) {
    double best = kInf;
    std::size_t bi = 0;
    std::size_t bj = 0;
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j) {
            const double d = distance(centers[i], centers[j]);
            if (d < best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    if (best == kInf) return result("static_overlap", 0.0, "fewer than two robots");
    return result("static_overlap", best - kContact,
                  "min centre distance " + fmt(best) + " between robots " + std::to_string(bi) + " and " +
                      std::to_string(bj));
}

CheckResult check_static_overlap(const WorldState& world) { return check_static_overlap(world.centers); }

CheckResult check_motion_collision_free(const RoundRecord& record, int samples) {
    const auto movers = record.movers();
    if (movers.empty()) return result("motion_collision_free", kInf, "no movers");
    samples = std::max(samples, 2);
    const std::size_t n = record.pre.size();
    double best = kInf;
    double best_t = 0.0;
    std::size_t bi = 0;
    std::size_t bj = 0;
    std::vector<Point2> at(n);
    for (int k = 0; k < samples; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(samples - 1);
        for (std::size_t i = 0; i < n; ++i) at[i] = record.pre[i];
        for (const RobotDecision* m : movers) at[m->id] = path_point_at(*m->decision.path, t);
        for (const RobotDecision* m : movers)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == m->id) continue;
                const double d = distance(at[m->id], at[j]);
                if (d < best) {
                    best = d;
                    best_t = t;
                    bi = m->id;
                    bj = j;
                }
            }
    }
    if (best == kInf) return result("motion_collision_free", kInf, "single robot");
    return result("motion_collision_free", best - kContact,
                  "round " + std::to_string(record.round) + ": min distance " + fmt(best) + " at t=" + fmt(best_t) +
                      " between robots " + std::to_string(bi) + " and " + std::to_string(bj));
}

CheckResult check_segment_motion_exact(const RoundRecord& record) {
    const auto movers = record.movers();
    const std::size_t n = record.pre.size();
    double best = kInf;
    std::size_t bi = 0;
    std::size_t bj = 0;
    std::size_t pairs = 0;
    for (const RobotDecision* m : movers) {
        const auto a = linear_motion(record, m->id);
        if (!a) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == m->id) continue;
            const RobotDecision* other = record.decision_of(j);
            const bool j_moves = other && other->decision.action == Action::Move;
            if (j_moves && j < m->id) continue;  // counted from the other side
            const auto b = linear_motion(record, j);
            if (!b) continue;
            ++pairs;
            const Point2 p0 = a->from - b->from;
            const Point2 dp = (a->to - a->from) - (b->to - b->from);
            const double d = min_linear_norm(p0, dp);
            if (d < best) {
                best = d;
                bi = m->id;
                bj = j;
            }
        }
    }
    if (pairs == 0) return not_applicable("segment_motion_exact", "no straight-line mover pairs");
    return result("segment_motion_exact", best - kContact,
                  "round " + std::to_string(record.round) + ": exact min distance " + fmt(best) + " between robots " +
                      std::to_string(bi) + " and " + std::to_string(bj));
}

CheckResult check_leaders_on_sec(const RoundRecord& record, const FormationSpec& spec) {
    if (record.phase != Phase::Expansion || record.round == 0)
        return not_applicable("leaders_on_sec", "not an expansion round");
    (void)spec;
    const Circle sec = smallest_enclosing_circle(record.post);
    double worst = 0.0;
    std::size_t who = 0;
    bool any = false;
    auto probe = [&](std::size_t id) {
        any = true;
        const double dev = std::abs(distance(record.post[id], sec.center) - sec.radius);
        if (dev > worst) {
            worst = dev;
            who = id;
        }
    };
    for (const RobotDecision* m : record.movers()) {
        probe(m->id);
        if (m->anchor_id) probe(*m->anchor_id);
    }
    if (!any) return result("leaders_on_sec", kOnSecTol, "no expansion move this round");
    return result("leaders_on_sec", kOnSecTol - worst,
                  "round " + std::to_string(record.round) + ": worst off-SEC deviation " + fmt(worst) + " (robot " +
                      std::to_string(who) + ")");
}

CheckResult check_sec_monotone(const Trace& trace, const FormationSpec& spec) {
    double margin = kInf;
    std::string where = "no expansion rounds";
    bool expanded = false;
    for (const auto& rec : trace.records) {
        if (rec.round == 0 || rec.phase != Phase::Expansion) continue;
        expanded = true;
        const double before = smallest_enclosing_circle(rec.pre).radius;
        const double after = smallest_enclosing_circle(rec.post).radius;
        const double m = after - before + kEpsGeom;
        if (m < margin) {
            margin = m;
            where = "round " + std::to_string(rec.round) + ": radius " + fmt(before) + " -> " + fmt(after);
        }
    }
    if (!expanded) return result("sec_monotone", 0.0, where);
    if (!trace.records.empty()) {
        const auto& last = trace.records.back();
        const double final_r = smallest_enclosing_circle(last.post).radius;
        const bool finished = trace.outcome == Outcome::Formed || final_r >= spec.r - kEpsGeom;
        if (finished) {
            const double m = final_r - spec.r + kEpsGeom;
            if (m < margin) {
                margin = m;
                where = "final radius " + fmt(final_r) + " below " + fmt(spec.r);
            }
        } else {
            where += "; expansion unfinished at radius " + fmt(final_r);
        }
    }
    return result("sec_monotone", margin, where);
}

CheckResult check_regular_polygon(std::span<const Point2> centers, const FormationSpec& spec, double tol) {
    if (static_cast<int>(centers.size()) != spec.n)
        return result("regular_polygon", -1.0, "robot count differs from n");
    const PolygonMetrics m = polygon_metrics(centers);
    const double radial = tol - m.max_radial_deviation;
    const double angular = tol - m.max_angle_deviation;
    const double chord = m.min_adjacent_chord - (spec.a - tol);
    return result("regular_polygon", std::min({radial, angular, chord}),
                  "radial dev " + fmt(m.max_radial_deviation) + ", angle dev " + fmt(m.max_angle_deviation) +
                      ", min chord " + fmt(m.min_adjacent_chord) + ", radius " + fmt(m.circle.radius));
}

CheckResult check_progress(const Trace& trace, const FormationSpec& spec, int window) {
    window = std::max(window, spec.n);
    std::size_t stall = 0;
    std::size_t longest = 0;
    std::size_t stall_end = 0;
    for (const auto& rec : trace.records) {
        if (rec.round == 0) continue;
        const bool terminal = detect_termination(rec.post, spec);
        const double r0 = smallest_enclosing_circle(rec.pre).radius;
        const double r1 = smallest_enclosing_circle(rec.post).radius;
        const bool grew = r1 > r0 + kEpsGeom;
        const bool filled = occupied_count(rec.post, spec) > occupied_count(rec.pre, spec);
        if (terminal || grew || filled) {
            stall = 0;
        } else if (++stall > longest) {
            longest = stall;
            stall_end = rec.round;
        }
    }
    const double margin = static_cast<double>(window) - 1.0 - static_cast<double>(longest);
    std::string detail = "longest stall " + std::to_string(longest) + " rounds (window " + std::to_string(window) + ")";
    if (longest > 0) detail += ", ending round " + std::to_string(stall_end);
    return result("progress", margin, detail);
}

CheckResult check_trace_consistency(const Trace& trace) {
    auto fail = [](std::string why) { return result("trace_consistency", -1.0, std::move(why)); };
    if (trace.records.empty()) return fail("trace has no records");
    const std::size_t n = trace.records.front().post.size();
    if (static_cast<int>(n) != trace.meta.n) return fail("record 0 holds " + std::to_string(n) + " robots");
    for (std::size_t k = 0; k < trace.records.size(); ++k) {
        const auto& rec = trace.records[k];
        const std::string at = "round " + std::to_string(rec.round);
        if (rec.pre.size() != n || rec.post.size() != n) return fail(at + ": wrong robot count");
        if (k == 0) {
            if (rec.pre != rec.post) return fail("record 0 moves robots");
            continue;
        }
        const auto& prev = trace.records[k - 1];
        if (rec.round != prev.round + 1) return fail(at + ": rounds are not consecutive");
        if (rec.pre != prev.post) return fail(at + ": pre positions differ from the previous post positions");
        if (rec.activated.empty()) return fail(at + ": empty activation set");
        for (std::size_t id = 0; id < n; ++id) {
            const RobotDecision* d = rec.decision_of(id);
            const bool active = std::find(rec.activated.begin(), rec.activated.end(), id) != rec.activated.end();
            if (d && !active) return fail(at + ": inactive robot " + std::to_string(id) + " has a decision");
            if (active && !d) return fail(at + ": activated robot " + std::to_string(id) + " has no decision");
            if (d && d->decision.action == Action::Move) {
                if (!d->decision.path || !d->decision.destination) return fail(at + ": mover without a path");
                const Path& p = *d->decision.path;
                if (p.start != rec.pre[id]) return fail(at + ": path of robot " + std::to_string(id) + " starts elsewhere");
                if (p.end != *d->decision.destination || rec.post[id] != p.end)
                    return fail(at + ": robot " + std::to_string(id) + " did not end on its destination");
            } else if (rec.post[id] != rec.pre[id]) {
                return fail(at + ": stationary robot " + std::to_string(id) + " moved");
            }
        }
    }
    return result("trace_consistency", 0.0, std::to_string(trace.records.size()) + " records chain");
}

std::vector<CheckResult> check_trace(const Trace& trace, const TraceCheckOptions& options) {
    std::vector<CheckResult> out;
    out.push_back(check_trace_consistency(trace));
    if (!out.back().pass) return out;
    const FormationSpec spec = make_formation_spec(trace.meta.n, trace.meta.a);

    // Per-round checks collapse to the worst round.
    auto worst_of = [&](std::string name, auto&& per_round) {
        std::optional<CheckResult> worst;
        for (const auto& rec : trace.records) {
            CheckResult r = per_round(rec);
            if (!r.applicable) continue;
            if (!worst || r.worst_margin < worst->worst_margin) worst = std::move(r);
        }
        if (!worst) return not_applicable(std::move(name), "no applicable rounds");
        return *worst;
    };
    out.push_back(worst_of("static_overlap", [](const RoundRecord& r) {
        CheckResult c = check_static_overlap(r.post);
        c.detail = "round " + std::to_string(r.round) + ": " + c.detail;
        return c;
    }));
    out.push_back(worst_of("motion_collision_free", [&](const RoundRecord& r) {
        if (r.round == 0) return not_applicable("motion_collision_free", "initial record");
        return check_motion_collision_free(r, options.collision_samples);
    }));
    out.push_back(worst_of("segment_motion_exact", [](const RoundRecord& r) {
        if (r.round == 0) return not_applicable("segment_motion_exact", "initial record");
        return check_segment_motion_exact(r);
    }));
    out.push_back(worst_of("leaders_on_sec", [&](const RoundRecord& r) { return check_leaders_on_sec(r, spec); }));
    out.push_back(check_sec_monotone(trace, spec));
    const int window = options.progress_window > 0 ? options.progress_window : 10 * spec.n;
    out.push_back(check_progress(trace, spec, window));
    out.push_back(check_regular_polygon(trace.records.back().post, spec, options.polygon_tol));
    return out;
}

}  // namespace ucf
