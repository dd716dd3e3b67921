#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ucf {

// All lengths are measured in robot radii.
inline constexpr double kRobotRadius = 1.0;
inline constexpr double kEpsGeom = 1e-9;
inline constexpr double kEpsSnap = 1e-6;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend constexpr Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Point2, Point2) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 polar(Point2 center, double radius, double angle) {
    return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
}
inline double angle_of(Point2 center, Point2 p) { return std::atan2(p.y - center.y, p.x - center.x); }

struct Disc {
    Point2 center;
    double radius = kRobotRadius;
};

struct Circle {
    Point2 center;
    double radius = 0.0;

    bool contains(Point2 p, double eps = kEpsGeom) const { return distance(center, p) <= radius + eps; }
    bool on_boundary(Point2 p, double eps = kEpsGeom) const {
        return std::abs(distance(center, p) - radius) <= eps;
    }
    // North-most point, where the vertical line through the center meets the circle.
    Point2 north() const { return {center.x, center.y + radius}; }
};

// Target formation: n robots on a circle of radius r with adjacent chord at least a.
struct FormationSpec {
    int n = 0;
    double a = 0.0;
    double r = 0.0;
    double alpha = 0.0;  // central angle between neighbours, 2*pi/n
};

// Radius of the smallest circle that carries n robots with adjacent centres a apart.
// Throws InvalidSpec for n < 3 or a < 3.
double compute_formation_radius(int n, double a);

FormationSpec make_formation_spec(int n, double a);

// Chord subtended by central_angle on a circle; central_angle must lie in (0, pi].
double chord_for_angle(double radius, double central_angle);

// Minimum enclosing circle, randomized incremental construction with a fixed
// shuffle seed so the result only depends on the input.
Circle smallest_enclosing_circle(std::span<const Point2> points);

// O(n^4) enumeration of every diameter pair and circumscribing triple. Kept as an
// independent reference for smallest_enclosing_circle; accepts at most 12 points.
Circle sec_bruteforce_oracle(std::span<const Point2> points);

// Circle through three points; nullopt-like result signalled by radius < 0 when collinear.
Circle circumcircle(Point2 a, Point2 b, Point2 c);

double point_segment_distance(Point2 p, Point2 a, Point2 b);

// Distance from p to the axis-aligned-along-the-segment rectangle of half-width
// `half_width` spanning exactly source..dest (no end caps). Zero inside.
double point_corridor_distance(Point2 p, Point2 source, Point2 dest, double half_width = kRobotRadius);

// A unit-disc robot may travel source -> dest when no other disc reaches into the
// width-2 corridor between them. Contact at distance exactly 1 counts as free.
bool is_free_path(Point2 source, Point2 dest, std::span<const Disc> others);

// No other robot covers any part of the unit disc around `point`.
bool is_vacant(Point2 point, std::span<const Disc> others);

// True when the points (all assumed on `circle`) are not contained in an open
// half-circle, i.e. they keep `circle` as their smallest enclosing circle.
bool pins_circle(std::span<const Point2> on_circle, Point2 center, double angle_eps = kEpsGeom);

// Normalize to (-pi, pi].
double wrap_angle(double a);

std::vector<Disc> discs_from(std::span<const Point2> centers);

}  // namespace ucf
