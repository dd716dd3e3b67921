#include "ucf/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ucf/errors.hpp"

namespace ucf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double positive_mod(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool segments_intersect(Point2 a, Point2 b, Point2 c, Point2 d) {
    const double d1 = cross(b - a, c - a);
    const double d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c);
    const double d4 = cross(d - c, b - c);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double segment_segment_distance(const SegmentPiece& s, const SegmentPiece& t) {
    if (segments_intersect(s.from, s.to, t.from, t.to)) return 0.0;
    return std::min({point_segment_distance(s.from, t.from, t.to), point_segment_distance(s.to, t.from, t.to),
                     point_segment_distance(t.from, s.from, s.to), point_segment_distance(t.to, s.from, s.to)});
}

// Sample the arc finely and take exact distances to the other piece. Distance
// is 1-Lipschitz along the arc, so subtracting half the step keeps a lower bound.
double arc_piece_distance(const ArcPiece& arc, const PathPiece& other) {
    const double len = std::abs(arc.sweep) * arc.radius;
    constexpr double kStep = 0.01;
    const int steps = std::max(1, static_cast<int>(std::ceil(len / kStep)));
    const double h = len / steps;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) best = std::min(best, point_piece_distance(piece_point_at(arc, i * h), other));
    return std::max(0.0, best - 0.5 * h);
}

double piece_piece_distance(const PathPiece& a, const PathPiece& b) {
    if (const auto* sa = std::get_if<SegmentPiece>(&a)) {
        if (const auto* sb = std::get_if<SegmentPiece>(&b)) return segment_segment_distance(*sa, *sb);
        return arc_piece_distance(std::get<ArcPiece>(b), a);
    }
    return arc_piece_distance(std::get<ArcPiece>(a), b);
}

}  // namespace

std::string_view to_string(PathKind kind) {
    switch (kind) {
        case PathKind::Segment: return "Segment";
        case PathKind::SecArc: return "SecArc";
        case PathKind::ObstacleSlide: return "ObstacleSlide";
    }
    return "Segment";
}

PathKind path_kind_from_string(std::string_view name) {
    if (name == "Segment") return PathKind::Segment;
    if (name == "SecArc") return PathKind::SecArc;
    if (name == "ObstacleSlide") return PathKind::ObstacleSlide;
    throw InvalidInput("unknown path kind '" + std::string(name) + "'");
}

double piece_length(const PathPiece& piece) {
    return std::visit(overloaded{[](const SegmentPiece& s) { return distance(s.from, s.to); },
                                 [](const ArcPiece& a) { return std::abs(a.sweep) * a.radius; }},
                      piece);
}

Point2 piece_start(const PathPiece& piece) {
    return std::visit(overloaded{[](const SegmentPiece& s) { return s.from; },
                                 [](const ArcPiece& a) { return polar(a.center, a.radius, a.start_angle); }},
                      piece);
}

Point2 piece_end(const PathPiece& piece) {
    return std::visit(
        overloaded{[](const SegmentPiece& s) { return s.to; },
                   [](const ArcPiece& a) { return polar(a.center, a.radius, a.start_angle + a.sweep); }},
        piece);
}

Point2 piece_point_at(const PathPiece& piece, double s) {
    return std::visit(overloaded{[s](const SegmentPiece& seg) {
                                     const double len = distance(seg.from, seg.to);
                                     if (len == 0.0) return seg.from;
                                     const double f = std::clamp(s / len, 0.0, 1.0);
                                     return seg.from + f * (seg.to - seg.from);
                                 },
                                 [s](const ArcPiece& a) {
                                     const double len = std::abs(a.sweep) * a.radius;
                                     if (len == 0.0) return polar(a.center, a.radius, a.start_angle);
                                     const double f = std::clamp(s / len, 0.0, 1.0);
                                     return polar(a.center, a.radius, a.start_angle + f * a.sweep);
                                 }},
                      piece);
}

double point_piece_distance(Point2 p, const PathPiece& piece) {
    return std::visit(overloaded{[p](const SegmentPiece& s) { return point_segment_distance(p, s.from, s.to); },
                                 [p](const ArcPiece& a) {
                                     const double endpoints =
                                         std::min(distance(p, polar(a.center, a.radius, a.start_angle)),
                                                  distance(p, polar(a.center, a.radius, a.start_angle + a.sweep)));
                                     const double r = distance(p, a.center);
                                     if (r == 0.0) return a.radius;
                                     const double theta = angle_of(a.center, p);
                                     const double rel = a.sweep >= 0.0 ? positive_mod(theta - a.start_angle)
                                                                       : positive_mod(a.start_angle - theta);
                                     if (rel <= std::abs(a.sweep)) return std::min(endpoints, std::abs(r - a.radius));
                                     return endpoints;
                                 }},
                      piece);
}

namespace {

Path assemble(PathKind kind, std::vector<PathPiece> pieces, Point2 from, Point2 to) {
    Path path{kind, {}, from, to, 0.0};
    for (auto& piece : pieces) {
        const double len = piece_length(piece);
        if (len <= 1e-12 && pieces.size() > 1) continue;
        path.total_length += len;
        path.pieces.push_back(std::move(piece));
    }
    if (path.pieces.empty()) path.pieces.push_back(SegmentPiece{from, to});
    return path;
}

}  // namespace

Path make_segment_path(Point2 from, Point2 to) {
    return assemble(PathKind::Segment, {SegmentPiece{from, to}}, from, to);
}

Path make_arc_path(const Circle& circle, Point2 from, Point2 to, int direction) {
    const double a0 = angle_of(circle.center, from);
    const double a1 = angle_of(circle.center, to);
    const double sweep = direction > 0 ? positive_mod(a1 - a0) : -positive_mod(a0 - a1);
    return assemble(PathKind::SecArc, {ArcPiece{circle.center, circle.radius, a0, sweep}}, from, to);
}

std::optional<Path> make_obstacle_slide(Point2 from, Point2 to, Point2 obstacle, int direction, double wrap_radius) {
    const double ds = distance(from, obstacle);
    const double dt = distance(to, obstacle);
    if (ds < wrap_radius - 1e-9 || dt < wrap_radius - 1e-9) return std::nullopt;
    const double dir = direction > 0 ? 1.0 : -1.0;
    const double bs = std::acos(std::min(1.0, wrap_radius / ds));
    const double bt = std::acos(std::min(1.0, wrap_radius / dt));
    const double enter = angle_of(obstacle, from) + dir * bs;
    const double leave = angle_of(obstacle, to) - dir * bt;
    const double sweep = dir > 0 ? positive_mod(leave - enter) : -positive_mod(enter - leave);
    const Point2 a = polar(obstacle, wrap_radius, enter);
    const Point2 b = polar(obstacle, wrap_radius, enter + sweep);
    return assemble(PathKind::ObstacleSlide,
                    {SegmentPiece{from, a}, ArcPiece{obstacle, wrap_radius, enter, sweep}, SegmentPiece{b, to}}, from,
                    to);
}

Point2 path_point_at(const Path& path, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("path parameter outside [0, 1]");
    if (t == 0.0) return path.start;
    if (t == 1.0) return path.end;
    double s = t * path.total_length;
    for (const auto& piece : path.pieces) {
        const double len = piece_length(piece);
        if (s <= len) return piece_point_at(piece, s);
        s -= len;
    }
    return path.end;
}

double path_point_clearance(const Path& path, Point2 p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : path.pieces) best = std::min(best, point_piece_distance(p, piece));
    return best;
}

double path_path_clearance(const Path& a, const Path& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pa : a.pieces)
        for (const auto& pb : b.pieces) best = std::min(best, piece_piece_distance(pa, pb));
    return best;
}

Path transform_path(const Path& path, double handedness, Point2 offset) {
    const double h = handedness < 0.0 ? -1.0 : 1.0;
    auto map = [&](Point2 p) { return Point2{h * p.x + offset.x, p.y + offset.y}; };
    Path out{path.kind, {}, map(path.start), map(path.end), path.total_length};
    out.pieces.reserve(path.pieces.size());
    for (const auto& piece : path.pieces) {
        out.pieces.push_back(std::visit(
            overloaded{[&](const SegmentPiece& s) -> PathPiece { return SegmentPiece{map(s.from), map(s.to)}; },
                       [&](const ArcPiece& a) -> PathPiece {
                           if (h > 0) return ArcPiece{map(a.center), a.radius, a.start_angle, a.sweep};
                           return ArcPiece{map(a.center), a.radius, wrap_angle(std::numbers::pi - a.start_angle),
                                           -a.sweep};
                       }},
            piece));
    }
    return out;
}

bool is_well_formed(const Path& path, double tol) {
    if (path.pieces.empty()) return false;
    if (distance(piece_start(path.pieces.front()), path.start) > tol) return false;
    if (distance(piece_end(path.pieces.back()), path.end) > tol) return false;
    double total = 0.0;
    for (std::size_t i = 0; i < path.pieces.size(); ++i) {
        total += piece_length(path.pieces[i]);
        if (i > 0 && distance(piece_end(path.pieces[i - 1]), piece_start(path.pieces[i])) > tol) return false;
    }
    return std::abs(total - path.total_length) <= tol * std::max(1.0, total);
}

}  // namespace ucf
