#pragma once

#include <span>
#include <vector>

#include "ucf/world.hpp"

namespace ucf {

// Shape of a configuration relative to the regular n-gon inscribed in its SEC.
struct PolygonMetrics {
    Circle circle;
    double max_radial_deviation = 0.0;  // max | |p - c| - R |
    double max_angle_deviation = 0.0;   // max | adjacent central angle - 2pi/n |
    double min_adjacent_chord = 0.0;
    double max_vertex_deviation = 0.0;  // distance to the best-rotated ideal vertex
};

PolygonMetrics polygon_metrics(std::span<const Point2> centers);

CheckResult check_static_overlap(std::span<const Point2> centers);
CheckResult check_static_overlap(const WorldState& world);

// Movers follow their paths at a shared fraction t; `samples` uniform values of t.
CheckResult check_motion_collision_free(const RoundRecord& record, int samples);

// Closed-form minimum distance between straight-line movers (and movers vs
// stationary robots); cross-checks the sampled test on segment-only rounds.
CheckResult check_segment_motion_exact(const RoundRecord& record);

CheckResult check_leaders_on_sec(const RoundRecord& record, const FormationSpec& spec);

CheckResult check_sec_monotone(const Trace& trace, const FormationSpec& spec);

CheckResult check_regular_polygon(std::span<const Point2> centers, const FormationSpec& spec, double tol);

CheckResult check_progress(const Trace& trace, const FormationSpec& spec, int window);

// Rounds must chain (pre = previous post), movers must end on their destinations
// and stayers must not move.
CheckResult check_trace_consistency(const Trace& trace);

struct TraceCheckOptions {
    int collision_samples = 1000;
    int progress_window = 0;  // 0 -> 10 * n
    double polygon_tol = 1e-6;
};

// Every check over a recorded trace, independent of the simulator code path.
std::vector<CheckResult> check_trace(const Trace& trace, const TraceCheckOptions& options = {});

}  // namespace ucf
