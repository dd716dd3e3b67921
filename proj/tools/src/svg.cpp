#include "ucf/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ucf/errors.hpp"

namespace ucf::cli {
namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// SVG y grows downward.
std::string xy(Point2 p) { return num(p.x) + "," + num(-p.y); }

std::string path_d(const Path& path) {
    std::string d = "M" + xy(path.start);
    for (const auto& piece : path.pieces) {
        if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
            d += " L" + xy(s->to);
        } else {
            const auto& a = std::get<ArcPiece>(piece);
            const Point2 end = piece_end(piece);
            const int large = std::abs(a.sweep) > std::numbers::pi ? 1 : 0;
            // Counterclockwise in world coordinates is clockwise on screen.
            const int sweep_flag = a.sweep > 0 ? 0 : 1;
            d += " A" + num(a.radius) + "," + num(a.radius) + " 0 " + std::to_string(large) + " " +
                 std::to_string(sweep_flag) + " " + xy(end);
        }
    }
    return d;
}

}  // namespace

std::string render_frame(const RoundRecord& rec, const FormationSpec& spec) {
    const Circle sec = smallest_enclosing_circle(rec.pre);
    double lo_x = sec.center.x - sec.radius, hi_x = sec.center.x + sec.radius;
    double lo_y = sec.center.y - sec.radius, hi_y = sec.center.y + sec.radius;
    for (const auto* set : {&rec.pre, &rec.post})
        for (Point2 p : *set) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
    const double pad = 2.0;
    lo_x -= pad;
    lo_y -= pad;
    hi_x += pad;
    hi_y += pad;

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(lo_x) << " " << num(-hi_y) << " "
      << num(hi_x - lo_x) << " " << num(hi_y - lo_y) << "\" width=\"640\" height=\""
      << static_cast<int>(640.0 * (hi_y - lo_y) / (hi_x - lo_x)) << "\">\n";
    s << "<rect x=\"" << num(lo_x) << "\" y=\"" << num(-hi_y) << "\" width=\"" << num(hi_x - lo_x) << "\" height=\""
      << num(hi_y - lo_y) << "\" fill=\"white\"/>\n";
    s << "<title>round " << rec.round << " (" << to_string(rec.phase) << ")</title>\n";
    s << "<circle cx=\"" << num(sec.center.x) << "\" cy=\"" << num(-sec.center.y) << "\" r=\"" << num(sec.radius)
      << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.05\" stroke-dasharray=\"0.3 0.2\"/>\n";
    s << "<line x1=\"" << num(sec.center.x) << "\" y1=\"" << num(-hi_y) << "\" x2=\"" << num(sec.center.x)
      << "\" y2=\"" << num(-lo_y) << "\" stroke=\"#c66\" stroke-width=\"0.04\"/>\n";

    if (sec.radius >= spec.r - kEpsGeom) {
        const TargetLayout layout = compute_target_points(sec, rec.pre, spec.n);
        for (Point2 t : layout.points)
            s << "<circle cx=\"" << num(t.x) << "\" cy=\"" << num(-t.y)
              << "\" r=\"0.15\" fill=\"none\" stroke=\"#393\" stroke-width=\"0.05\"/>\n";
    }
    for (std::size_t i = 0; i < rec.pre.size(); ++i) {
        const Point2 p = rec.pre[i];
        const bool active = std::find(rec.activated.begin(), rec.activated.end(), i) != rec.activated.end();
        s << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(-p.y) << "\" r=\"1\" fill=\""
          << (active ? "#9cf" : "#ddd") << "\" stroke=\"#246\" stroke-width=\"0.05\"/>\n";
        s << "<text x=\"" << num(p.x) << "\" y=\"" << num(-p.y + 0.25) << "\" font-size=\"0.7\" text-anchor=\"middle\">"
          << i << "</text>\n";
    }
    for (const RobotDecision* m : rec.movers()) {
        s << "<path d=\"" << path_d(*m->decision.path)
          << "\" fill=\"none\" stroke=\"#d60\" stroke-width=\"0.08\"/>\n";
        const Point2 e = m->decision.path->end;
        s << "<circle cx=\"" << num(e.x) << "\" cy=\"" << num(-e.y)
          << "\" r=\"1\" fill=\"none\" stroke=\"#d60\" stroke-width=\"0.05\" stroke-dasharray=\"0.2 0.15\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void write_frames(const Trace& trace, const std::string& dir) {
    std::filesystem::create_directories(dir);
    const FormationSpec spec = make_formation_spec(trace.meta.n, trace.meta.a);
    for (const auto& rec : trace.records) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04zu.svg", rec.round);
        std::ofstream out(std::filesystem::path(dir) / name);
        if (!out) throw InvalidInput("cannot write SVG frame into '" + dir + "'");
        out << render_frame(rec, spec);
    }
}

}  // namespace ucf::cli
