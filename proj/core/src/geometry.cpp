#include "ucf/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "ucf/errors.hpp"

namespace ucf {

double compute_formation_radius(int n, double a) {
    if (n < 3) throw InvalidSpec("formation needs at least 3 robots, got n=" + std::to_string(n));
    if (!std::isfinite(a) || a < 3.0) throw InvalidSpec("side length a must be >= 3, got " + std::to_string(a));
    return a / (2.0 * std::sin(std::numbers::pi / n));
}

FormationSpec make_formation_spec(int n, double a) {
    return FormationSpec{n, a, compute_formation_radius(n, a), 2.0 * std::numbers::pi / n};
}

double chord_for_angle(double radius, double central_angle) {
    if (!(radius > 0.0)) throw InvalidInput("chord radius must be positive");
    if (!(central_angle > 0.0) || central_angle > std::numbers::pi)
        throw InvalidInput("central angle must lie in (0, pi]");
    return 2.0 * radius * std::sin(central_angle / 2.0);
}

Circle circumcircle(Point2 a, Point2 b, Point2 c) {
    const Point2 ab = b - a;
    const Point2 ac = c - a;
    const double d = 2.0 * cross(ab, ac);
    if (d == 0.0) return {{0.0, 0.0}, -1.0};
    const double ab2 = dot(ab, ab);
    const double ac2 = dot(ac, ac);
    const Point2 offset{(ac.y * ab2 - ab.y * ac2) / d, (ab.x * ac2 - ac.x * ab2) / d};
    return {a + offset, norm(offset)};
}

namespace {

Circle diameter_circle(Point2 a, Point2 b) { return {0.5 * (a + b), 0.5 * distance(a, b)}; }

bool inside(const Circle& c, Point2 p) {
    // Relative slack only; anything looser would make the result measurably non-minimal.
    return distance(c.center, p) <= c.radius * (1.0 + 1e-14) + 1e-14;
}

Circle circle_through(Point2 a, Point2 b, Point2 c) {
    Circle cc = circumcircle(a, b, c);
    if (cc.radius >= 0.0) return cc;
    // Collinear: the two farthest points span it.
    Circle best = diameter_circle(a, b);
    for (const Circle& cand : {diameter_circle(a, c), diameter_circle(b, c)})
        if (cand.radius > best.radius) best = cand;
    return best;
}

}  // namespace

Circle smallest_enclosing_circle(std::span<const Point2> points) {
    if (points.empty()) throw InvalidInput("smallest enclosing circle of an empty point set");
    std::vector<Point2> pts(points.begin(), points.end());
    std::mt19937_64 rng(0x5ecc1e5eedULL);
    std::shuffle(pts.begin(), pts.end(), rng);

    Circle c{pts[0], 0.0};
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (inside(c, pts[i])) continue;
        c = {pts[i], 0.0};
        for (std::size_t j = 0; j < i; ++j) {
            if (inside(c, pts[j])) continue;
            c = diameter_circle(pts[i], pts[j]);
            for (std::size_t k = 0; k < j; ++k) {
                if (inside(c, pts[k])) continue;
                c = circle_through(pts[i], pts[j], pts[k]);
            }
        }
    }
    return c;
}

Circle sec_bruteforce_oracle(std::span<const Point2> points) {
    if (points.empty()) throw InvalidInput("smallest enclosing circle of an empty point set");
    if (points.size() > 12) throw InvalidInput("brute-force oracle accepts at most 12 points");
    if (points.size() == 1) return {points[0], 0.0};

    auto encloses = [&](const Circle& c) {
        return std::all_of(points.begin(), points.end(), [&](Point2 p) {
            return distance(c.center, p) <= c.radius + 1e-10 * (1.0 + c.radius);
        });
    };
    Circle best{{0.0, 0.0}, std::numeric_limits<double>::infinity()};
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Circle d = diameter_circle(points[i], points[j]);
            if (d.radius < best.radius && encloses(d)) best = d;
            for (std::size_t k = j + 1; k < n; ++k) {
                Circle t = circumcircle(points[i], points[j], points[k]);
                if (t.radius >= 0.0 && t.radius < best.radius && encloses(t)) best = t;
            }
        }
    }
    return best;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
    const Point2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

double point_corridor_distance(Point2 p, Point2 source, Point2 dest, double half_width) {
    const Point2 d = dest - source;
    const double len = norm(d);
    if (len == 0.0) throw DegeneratePath("corridor with coincident endpoints");
    const Point2 u = (1.0 / len) * d;
    const Point2 rel = p - source;
    const double along = dot(rel, u);
    const double across = std::abs(cross(u, rel));
    const double dx = std::max({0.0, -along, along - len});
    const double dy = std::max(0.0, across - half_width);
    return std::hypot(dx, dy);
}

bool is_free_path(Point2 source, Point2 dest, std::span<const Disc> others) {
    if (source == dest) throw DegeneratePath("free path from a point to itself");
    return std::all_of(others.begin(), others.end(), [&](const Disc& o) {
        return point_corridor_distance(o.center, source, dest, kRobotRadius) >= o.radius;
    });
}

bool is_vacant(Point2 point, std::span<const Disc> others) {
    return std::all_of(others.begin(), others.end(),
                       [&](const Disc& o) { return distance(point, o.center) >= kRobotRadius + o.radius; });
}

double wrap_angle(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    if (a <= -std::numbers::pi) a += two_pi;
    if (a > std::numbers::pi) a -= two_pi;
    return a;
}

bool pins_circle(std::span<const Point2> on_circle, Point2 center, double angle_eps) {
    if (on_circle.size() < 2) return false;
    std::vector<double> angles;
    angles.reserve(on_circle.size());
    for (Point2 p : on_circle) angles.push_back(angle_of(center, p));
    std::sort(angles.begin(), angles.end());
    double max_gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i) max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
    return max_gap <= std::numbers::pi + angle_eps;
}

std::vector<Disc> discs_from(std::span<const Point2> centers) {
    std::vector<Disc> out;
    out.reserve(centers.size());
    for (Point2 c : centers) out.push_back({c, kRobotRadius});
    return out;
}

}  // namespace ucf
