#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "ucf/geometry.hpp"

namespace ucf {

enum class PathKind { Segment, SecArc, ObstacleSlide };

std::string_view to_string(PathKind kind);
PathKind path_kind_from_string(std::string_view name);

struct SegmentPiece {
    Point2 from;
    Point2 to;
};

// Circular arc starting at `start_angle`; positive sweep runs counterclockwise.
struct ArcPiece {
    Point2 center;
    double radius = 0.0;
    double start_angle = 0.0;
    double sweep = 0.0;
};

using PathPiece = std::variant<SegmentPiece, ArcPiece>;

double piece_length(const PathPiece& piece);
Point2 piece_start(const PathPiece& piece);
Point2 piece_end(const PathPiece& piece);
// Point at arc-length s from the start of the piece, s clamped to [0, length].
Point2 piece_point_at(const PathPiece& piece, double s);
double point_piece_distance(Point2 p, const PathPiece& piece);

// Piecewise-smooth route a robot centre follows during a Move phase. `end` is
// the exact destination; intermediate piece endpoints may differ by rounding.
struct Path {
    PathKind kind = PathKind::Segment;
    std::vector<PathPiece> pieces;
    Point2 start;
    Point2 end;
    double total_length = 0.0;
};

Path make_segment_path(Point2 from, Point2 to);

// Slide along `circle` from `from` to `to` (both on the circle) turning in
// `direction` (+1 counterclockwise, -1 clockwise).
Path make_arc_path(const Circle& circle, Point2 from, Point2 to, int direction);

// Straight to tangency with the circle of radius `wrap_radius` around the
// obstacle, along that circle in `direction`, then straight to `to`. Empty when
// either endpoint lies strictly inside the wrap circle.
std::optional<Path> make_obstacle_slide(Point2 from, Point2 to, Point2 obstacle, int direction,
                                        double wrap_radius = 2.0 * kRobotRadius);

// Constant-speed parameterization: t = 0 gives start, t = 1 gives end exactly.
Point2 path_point_at(const Path& path, double t);

// Minimum distance from any point of the path to p (exact per piece).
double path_point_clearance(const Path& path, Point2 p);

// Lower bound on the distance between any point of `a` and any point of `b`.
double path_path_clearance(const Path& a, const Path& b);

// Apply p -> (handedness * p.x + offset.x, p.y + offset.y) to every piece.
Path transform_path(const Path& path, double handedness, Point2 offset);

// Pieces connect end-to-start within tol and total_length matches their sum.
bool is_well_formed(const Path& path, double tol = 1e-9);

}  // namespace ucf
