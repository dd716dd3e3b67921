#include "ucf/cli/trace_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ucf/errors.hpp"

namespace ucf::cli {
namespace {

using ojson = nlohmann::ordered_json;
using nlohmann::json;

ojson pt(Point2 p) { return ojson::array({p.x, p.y}); }

ojson points(const std::vector<Point2>& ps) {
    ojson a = ojson::array();
    for (Point2 p : ps) a.push_back(pt(p));
    return a;
}

ojson path_to_json(const Path& path) {
    ojson j;
    j["kind"] = to_string(path.kind);
    j["start"] = pt(path.start);
    j["end"] = pt(path.end);
    j["length"] = path.total_length;
    ojson pieces = ojson::array();
    for (const auto& piece : path.pieces) {
        if (const auto* s = std::get_if<SegmentPiece>(&piece)) {
            pieces.push_back({{"segment", {pt(s->from), pt(s->to)}}});
        } else {
            const auto& a = std::get<ArcPiece>(piece);
            pieces.push_back(
                {{"arc", {{"center", pt(a.center)}, {"radius", a.radius}, {"start", a.start_angle}, {"sweep", a.sweep}}}});
        }
    }
    j["pieces"] = pieces;
    return j;
}

ojson decision_to_json(const RobotDecision& rd) {
    const Decision& d = rd.decision;
    ojson j;
    j["id"] = rd.id;
    j["action"] = to_string(d.action);
    j["phase"] = to_string(d.phase);
    if (d.action == Action::Move) {
        j["role"] = to_string(d.role);
        if (d.path) j["path"] = path_to_json(*d.path);
        if (d.destination) j["destination"] = pt(*d.destination);
        if (d.target) j["target"] = pt(*d.target);
        if (d.anchor) j["anchor"] = pt(*d.anchor);
        if (rd.anchor_id) j["anchor_id"] = *rd.anchor_id;
    }
    if (!d.ties.empty()) {
        ojson ties = ojson::array();
        for (const auto& t : d.ties) ties.push_back({{"what", t.what}, {"options", t.options}, {"chosen", t.chosen}});
        j["ties"] = ties;
    }
    if (!d.flags.empty()) j["flags"] = d.flags;
    return j;
}

// --- reading ---------------------------------------------------------------

[[noreturn]] void malformed(std::size_t line, const std::string& why) {
    throw InvalidInput("trace line " + std::to_string(line) + ": " + why);
}

Point2 read_pt(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidInput("expected a point [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point2> read_points(const json& j) {
    if (!j.is_array()) throw InvalidInput("expected a list of points");
    std::vector<Point2> out;
    for (const auto& p : j) out.push_back(read_pt(p));
    return out;
}

Path read_path(const json& j) {
    Path p;
    p.kind = path_kind_from_string(j.at("kind").get<std::string>());
    p.start = read_pt(j.at("start"));
    p.end = read_pt(j.at("end"));
    p.total_length = j.at("length").get<double>();
    for (const auto& piece : j.at("pieces")) {
        if (piece.contains("segment")) {
            const auto& s = piece.at("segment");
            p.pieces.push_back(SegmentPiece{read_pt(s.at(0)), read_pt(s.at(1))});
        } else {
            const auto& a = piece.at("arc");
            p.pieces.push_back(ArcPiece{read_pt(a.at("center")), a.at("radius").get<double>(),
                                        a.at("start").get<double>(), a.at("sweep").get<double>()});
        }
    }
    if (p.pieces.empty()) throw InvalidInput("path without pieces");
    return p;
}

RobotDecision read_decision(const json& j) {
    RobotDecision rd;
    rd.id = j.at("id").get<std::size_t>();
    Decision& d = rd.decision;
    d.action = action_from_string(j.at("action").get<std::string>());
    d.phase = phase_from_string(j.at("phase").get<std::string>());
    if (j.contains("role")) d.role = role_from_string(j.at("role").get<std::string>());
    if (j.contains("path")) d.path = read_path(j.at("path"));
    if (j.contains("destination")) d.destination = read_pt(j.at("destination"));
    if (j.contains("target")) d.target = read_pt(j.at("target"));
    if (j.contains("anchor")) d.anchor = read_pt(j.at("anchor"));
    if (j.contains("anchor_id")) rd.anchor_id = j.at("anchor_id").get<std::size_t>();
    if (j.contains("ties"))
        for (const auto& t : j.at("ties"))
            d.ties.push_back({t.at("what").get<std::string>(), t.at("options").get<std::size_t>(),
                              t.at("chosen").get<std::size_t>()});
    if (j.contains("flags")) d.flags = j.at("flags").get<std::vector<std::string>>();
    return rd;
}

CheckResult read_check(const json& j) {
    CheckResult c;
    c.name = j.at("name").get<std::string>();
    c.pass = j.at("pass").get<bool>();
    c.worst_margin = j.at("margin").is_null() ? std::numeric_limits<double>::infinity() : j.at("margin").get<double>();
    c.applicable = j.value("applicable", true);
    c.detail = j.value("detail", "");
    return c;
}

}  // namespace

ojson check_to_json(const CheckResult& c) {
    ojson j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    // Infinite margins (nothing to collide with) serialize as null.
    if (std::isfinite(c.worst_margin)) j["margin"] = c.worst_margin;
    else j["margin"] = nullptr;
    if (!c.applicable) j["applicable"] = false;
    j["detail"] = c.detail;
    return j;
}

std::string trace_to_jsonl(const Trace& trace) {
    std::ostringstream out;
    for (const auto& rec : trace.records) {
        ojson j;
        j["round"] = rec.round;
        if (rec.round == 0) {
            const RunMeta& m = trace.meta;
            ojson policy = {{"kind", to_string(m.policy.kind)}, {"seed", m.policy.seed}};
            if (!m.policy.script.empty()) policy["script"] = m.policy.script;
            j["meta"] = {{"n", m.n},
                         {"a", m.a},
                         {"policy", policy},
                         {"master_seed", m.master_seed},
                         {"max_rounds", m.max_rounds},
                         {"collision_samples", m.collision_samples},
                         {"handedness", m.handedness}};
        }
        j["phase"] = to_string(rec.phase);
        if (rec.round > 0) {
            j["activated"] = rec.activated;
            ojson ds = ojson::array();
            for (const auto& d : rec.decisions) ds.push_back(decision_to_json(d));
            j["decisions"] = ds;
        }
        j["post"] = points(rec.post);
        if (!rec.flags.empty()) j["flags"] = rec.flags;
        ojson checks = ojson::array();
        for (const auto& c : rec.checks) checks.push_back(check_to_json(c));
        j["checks"] = checks;
        out << j.dump() << '\n';
    }
    ojson tail;
    tail["outcome"] = to_string(trace.outcome);
    tail["rounds"] = trace.records.empty() ? 0 : trace.records.back().round;
    tail["detail"] = trace.detail;
    out << tail.dump() << '\n';
    return out.str();
}

void write_trace(const Trace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("cannot write trace '" + path + "'");
    out << trace_to_jsonl(trace);
}

Trace parse_trace(std::istream& in) {
    Trace trace;
    bool have_outcome = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (have_outcome) malformed(lineno, "content after the outcome line");
        try {
            const json j = json::parse(line);
            if (!j.is_object()) malformed(lineno, "not an object");
            if (j.contains("outcome")) {
                trace.outcome = outcome_from_string(j.at("outcome").get<std::string>());
                trace.detail = j.value("detail", "");
                have_outcome = true;
                continue;
            }
            RoundRecord rec;
            rec.round = j.at("round").get<std::size_t>();
            if (trace.records.empty()) {
                if (!j.contains("meta")) malformed(lineno, "first record has no meta");
                const auto& m = j.at("meta");
                trace.meta.n = m.at("n").get<int>();
                trace.meta.a = m.at("a").get<double>();
                trace.meta.policy.kind = policy_kind_from_string(m.at("policy").at("kind").get<std::string>());
                trace.meta.policy.seed = m.at("policy").at("seed").get<std::uint64_t>();
                if (m.at("policy").contains("script"))
                    trace.meta.policy.script = m.at("policy").at("script").get<std::vector<std::vector<std::size_t>>>();
                trace.meta.master_seed = m.at("master_seed").get<std::uint64_t>();
                trace.meta.max_rounds = m.at("max_rounds").get<std::size_t>();
                trace.meta.collision_samples = m.at("collision_samples").get<int>();
                trace.meta.handedness = m.at("handedness").get<std::vector<int>>();
            }
            rec.phase = phase_from_string(j.at("phase").get<std::string>());
            rec.post = read_points(j.at("post"));
            rec.pre = trace.records.empty() ? rec.post : trace.records.back().post;
            if (j.contains("activated")) rec.activated = j.at("activated").get<std::vector<std::size_t>>();
            if (j.contains("decisions"))
                for (const auto& d : j.at("decisions")) rec.decisions.push_back(read_decision(d));
            if (j.contains("flags")) rec.flags = j.at("flags").get<std::vector<std::string>>();
            if (j.contains("checks"))
                for (const auto& c : j.at("checks")) rec.checks.push_back(read_check(c));
            trace.records.push_back(std::move(rec));
        } catch (const json::exception& e) {
            malformed(lineno, e.what());
        } catch (const InvalidInput& e) {
            malformed(lineno, e.what());
        }
    }
    if (trace.records.empty()) throw InvalidInput("trace is empty");
    if (!have_outcome) throw InvalidInput("trace has no outcome line");
    if (trace.meta.n < 3 || trace.meta.a < 3.0) throw InvalidInput("trace meta has an invalid formation spec");
    return trace;
}

Trace read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot open trace '" + path + "'");
    return parse_trace(in);
}

}  // namespace ucf::cli
