// One line per acceptance criterion; exit status is nonzero when any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "oracles.hpp"
#include "ucf/checker.hpp"
#include "ucf/cli/commands.hpp"
#include "ucf/cli/trace_io.hpp"
#include "ucf/simulator.hpp"

using namespace ucf;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Verdict& v, Clock::time_point started) {
    const double secs = std::chrono::duration<double>(Clock::now() - started).count();
    std::printf("criterion %d %-4s %s: %s [%.2fs]\n", id, v.pass ? "PASS" : "FAIL", title, v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failures;
}

std::string num(double v, int precision = 3) {
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

Verdict formation_radius_fixtures() {
    struct Case {
        int n;
        double a, tol;
    };
    Verdict v;
    double worst = 0.0;
    for (const Case c : {Case{6, 3.0, 1e-12}, Case{4, 3.0, 1e-9}, Case{3, 3.0, 1e-9}}) {
        const double want = c.n == 6 ? 3.0 : oracle::formation_radius(c.n, c.a);
        const double err = std::abs(compute_formation_radius(c.n, c.a) - want);
        worst = std::max(worst, err);
        if (err > c.tol) {
            v.pass = false;
            v.detail += "n=" + std::to_string(c.n) + " off by " + num(err) + "; ";
        }
    }
    v.detail += "worst error " + num(worst) + " against 50-digit oracle";
    return v;
}

Verdict sec_oracle_equivalence() {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_int_distribution<int> count(3, 12);
    int bad = 0;
    double worst = 0.0;
    for (int set = 0; set < 1000; ++set) {
        std::vector<Point2> pts(count(rng));
        for (auto& p : pts) p = {coord(rng), coord(rng)};
        const Circle fast = smallest_enclosing_circle(pts);
        const Circle slow = sec_bruteforce_oracle(pts);
        const double err = std::max(std::abs(fast.radius - slow.radius), distance(fast.center, slow.center));
        worst = std::max(worst, err);
        if (err > 1e-9) ++bad;
    }
    return {bad == 0, std::to_string(1000 - bad) + "/1000 sets agree, worst deviation " + num(worst)};
}

Verdict predicate_oracles() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(-10.0, 10.0), off(-3.0, 3.0), unit(0.0, 1.0);
    int path_bad = 0, path_free = 0;
    for (int i = 0; i < 1000; ++i) {
        const Point2 s{coord(rng), coord(rng)}, d{coord(rng), coord(rng)};
        // Discs scattered around the segment so both verdicts are common.
        const Point2 o = s + unit(rng) * (d - s) + Point2{off(rng), off(rng)};
        const bool got = is_free_path(s, d, std::vector<Disc>{{o, kRobotRadius}});
        const bool want = oracle::free_path(s, d, {o});
        path_free += want;
        path_bad += got != want;
    }
    int vac_bad = 0, vac_yes = 0;
    for (int i = 0; i < 1000; ++i) {
        const Point2 p{coord(rng), coord(rng)};
        const Point2 o = p + Point2{off(rng), off(rng)};
        const bool got = is_vacant(p, std::vector<Disc>{{o, kRobotRadius}});
        const bool want = oracle::vacant(p, {o});
        vac_yes += want;
        vac_bad += got != want;
    }
    return {path_bad == 0 && vac_bad == 0,
            "free path " + std::to_string(path_bad) + " disagreements (" + std::to_string(path_free) +
                " free of 1000), vacancy " + std::to_string(vac_bad) + " disagreements (" + std::to_string(vac_yes) +
                " vacant of 1000)"};
}

Verdict radial_expansion_fixture() {
    // r = 3 with n = 3. The robots at 190 and 225 degrees overlap (centres 1.2
    // apart), so the rule is evaluated directly rather than through step().
    const FormationSpec spec = make_formation_spec(3, 3.0 * std::sqrt(3.0));
    std::vector<Point2> pts;
    for (double deg : {45.0, 190.0, 225.0}) pts.push_back(polar({0, 0}, 2.0, deg * std::numbers::pi / 180.0));
    const Point2 want{2.0 * std::numbers::sqrt2, 2.0 * std::numbers::sqrt2};
    Verdict v;
    double worst_pos = 0.0, worst_sec = 0.0;
    for (int h : {+1, -1}) {
        const LocalFrame frame{h, pts[0]};
        const Snapshot snap = take_snapshot(pts, 0, frame, spec);
        const SymmetryReport rep = detect_symmetry_and_leaders(snap.positions, smallest_enclosing_circle(snap.positions));
        SeededTieBreaker ties(0);
        const Decision d = from_local(sec_expansion_decision(snap, rep, ties), frame);
        if (d.action != Action::Move || d.role != MoveRole::LeaderRadial) {
            v.pass = false;
            v.detail = "leader did not take the radial move; ";
            continue;
        }
        auto post = pts;
        post[0] = *d.destination;
        worst_pos = std::max(worst_pos, distance(*d.destination, want));
        worst_sec = std::max(worst_sec, std::abs(smallest_enclosing_circle(post).radius - 3.0));
    }
    if (worst_pos > 1e-9 || worst_sec > 1e-9) v.pass = false;
    v.detail += "destination error " + num(worst_pos) + ", post SEC radius error " + num(worst_sec);
    return v;
}

struct MatrixStats {
    int runs = 0, formed = 0, clean = 0, identical = 0, checked_ok = 0;
    std::size_t max_rounds = 0;
    double min_collision = 1e300;
    std::vector<std::string> problems;
};

MatrixStats run_matrix() {
    MatrixStats st;
    for (int n = 3; n <= 10; ++n)
        for (std::uint64_t s = 0; s < 25; ++s)
            for (PolicyKind kind : {PolicyKind::All, PolicyKind::RandomSubset, PolicyKind::RoundRobinSingleton}) {
                ++st.runs;
                const std::string tag = "n=" + std::to_string(n) + " seed=" + std::to_string(s) + " " +
                                        std::string(to_string(kind));
                const WorldState w = fixtures::matrix_world(n, s);
                const ActivationPolicy policy{kind, s, {}};
                const RunOptions opts{std::nullopt, s, 1000};
                const Trace t = run(w, policy, opts);
                const bool formed = t.outcome == Outcome::Formed && t.records.back().round <= 200u * n;
                st.formed += formed;
                st.max_rounds = std::max(st.max_rounds, t.records.back().round);

                const auto checks = check_trace(t, TraceCheckOptions{1000, 0, 1e-6});
                bool clean = true;
                for (const auto& c : checks) {
                    if (c.name == "motion_collision_free") st.min_collision = std::min(st.min_collision, c.worst_margin);
                    if (!c.pass) {
                        clean = false;
                        if (st.problems.size() < 5) st.problems.push_back(tag + " " + c.name + ": " + c.detail);
                    }
                }
                if (!formed && st.problems.size() < 5) st.problems.push_back(tag + " " + t.detail);
                st.clean += clean && formed;

                const std::string first = cli::trace_to_jsonl(t);
                const std::string again = cli::trace_to_jsonl(run(w, policy, opts));
                st.identical += first == again;
                std::ostringstream out, err;
                const int code = cli::check_trace_text(first, cli::CheckOptions{}, out, err);
                st.checked_ok += code == cli::kExitOk;
                if (code != cli::kExitOk && st.problems.size() < 5) st.problems.push_back(tag + " check: " + err.str());
            }
    return st;
}

Verdict chirality_invariance() {
    std::mt19937_64 rng(4242);
    std::vector<std::vector<Point2>> worlds;
    std::vector<FormationSpec> specs;
    int expansion = 0, formation = 0, symmetric = 0;

    auto add = [&](std::vector<Point2> pts, const FormationSpec& spec) {
        const Circle sec = smallest_enclosing_circle(pts);
        (sec.radius < spec.r - kEpsGeom ? expansion : formation)++;
        if (detect_symmetry_and_leaders(pts, sec).symmetric) ++symmetric;
        worlds.push_back(std::move(pts));
        specs.push_back(spec);
    };

    // Mirror-symmetric snapshots, some with a robot on the axis.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    while (worlds.size() < 30) {
        const int pairs = 1 + static_cast<int>(u(rng) * 4);
        const bool on_axis = u(rng) < 0.5;
        const int n = 2 * pairs + (on_axis ? 1 : 0);
        if (n < 3) continue;
        const double span = 2.5 * std::sqrt(static_cast<double>(n)) * (u(rng) < 0.5 ? 1.0 : 2.5);
        const double x0 = -3.0 + 6.0 * u(rng);
        std::vector<Point2> pts;
        for (int k = 0; k < pairs; ++k) {
            const double dx = 1.05 + u(rng) * span, y = (u(rng) - 0.5) * 2.0 * span;
            pts.push_back({x0 + dx, y});
            pts.push_back({x0 - dx, y});
        }
        if (on_axis) pts.push_back({x0, (u(rng) - 0.5) * 2.0 * span});
        bool ok = true;
        for (std::size_t i = 0; i < pts.size() && ok; ++i)
            for (std::size_t j = i + 1; j < pts.size() && ok; ++j) ok = distance(pts[i], pts[j]) >= 2.1;
        if (!ok) continue;
        add(std::move(pts), make_formation_spec(n, 3.0 + u(rng) * 6.0));
    }
    // Tight random placements with a wide target circle, then snapshots taken mid-run.
    for (std::uint64_t s = 0; worlds.size() < 65; ++s) {
        const int n = 3 + static_cast<int>(s % 8);
        const WorldState w = random_initial(n, 6.0 + s % 3, 700 + s, 4.2 * std::sqrt(static_cast<double>(n)));
        add(w.centers, w.spec);
    }
    for (std::uint64_t s = 0; worlds.size() < 100; ++s) {
        const int n = 3 + static_cast<int>(s % 8);
        const auto c = fixtures::matrix_case(n, 500 + s);
        const WorldState w = random_initial(n, c.a, c.seed, c.box);
        const Trace t = run(w, ActivationPolicy{PolicyKind::RandomSubset, s, {}}, RunOptions{std::nullopt, s, 100});
        add(t.records[t.records.size() / 2].post, w.spec);
    }

    int bad = 0, decisions = 0;
    std::size_t largest = 0;
    for (std::size_t k = 0; k < worlds.size(); ++k) {
        const auto& pts = worlds[k];
        for (std::size_t i = 0; i < pts.size(); ++i) {
            auto dests = [&](int h) {
                const LocalFrame f{h, pts[i]};
                std::vector<Point2> out;
                for (const Decision& d : admissible_decisions(take_snapshot(pts, i, f, specs[k])))
                    out.push_back(d.destination ? from_local(*d.destination, f) : pts[i]);
                return out;
            };
            const auto plus = dests(+1), minus = dests(-1);
            largest = std::max({largest, plus.size(), minus.size()});
            auto covered = [](const std::vector<Point2>& a, const std::vector<Point2>& b) {
                return std::all_of(a.begin(), a.end(), [&](Point2 p) {
                    return std::any_of(b.begin(), b.end(), [&](Point2 q) { return distance(p, q) <= 1e-9; });
                });
            };
            ++decisions;
            if (!covered(plus, minus) || !covered(minus, plus)) ++bad;
        }
    }
    const bool spans = expansion > 0 && formation > 0 && symmetric > 0;
    return {bad == 0 && spans,
            std::to_string(worlds.size()) + " snapshots (" + std::to_string(expansion) + " expansion, " +
                std::to_string(formation) + " formation, " + std::to_string(symmetric) + " symmetric), " +
                std::to_string(decisions) + " observers, " + std::to_string(bad) +
                " mismatched destination sets, up to " + std::to_string(largest) + " admissible outcomes"};
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    report(1, "formation radius fixtures", formation_radius_fixtures(), t0);

    t0 = Clock::now();
    report(2, "SEC matches brute force", sec_oracle_equivalence(), t0);

    t0 = Clock::now();
    report(3, "free-path and vacancy oracles", predicate_oracles(), t0);

    t0 = Clock::now();
    report(4, "radial expansion fixture", radial_expansion_fixture(), t0);

    t0 = Clock::now();
    const MatrixStats m = run_matrix();
    Verdict v5{m.clean == m.runs,
               std::to_string(m.clean) + "/" + std::to_string(m.runs) + " runs formed with clean checks, " +
                   std::to_string(m.formed) + " formed, max " + std::to_string(m.max_rounds) +
                   " rounds, min collision margin " + num(m.min_collision)};
    for (const auto& p : m.problems) v5.detail += "; " + p;
    report(5, "end-to-end matrix", v5, t0);

    t0 = Clock::now();
    report(6, "chirality invariance", chirality_invariance(), t0);

    t0 = Clock::now();
    // Reruns and trace checks happen inside the matrix runs, so their time is counted under criterion 5.
    const Verdict v7{m.identical == m.runs && m.checked_ok == m.runs,
                     std::to_string(m.identical) + "/" + std::to_string(m.runs) + " reruns byte-identical, " +
                         std::to_string(m.checked_ok) + "/" + std::to_string(m.runs) + " traces pass the trace checker"};
    report(7, "determinism and trace round-trip", v7, t0);

    std::printf("%d of 7 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
