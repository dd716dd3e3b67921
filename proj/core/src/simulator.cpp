#include "ucf/simulator.hpp"

#include <algorithm>
#include <string>

#include "ucf/checker.hpp"
#include "ucf/errors.hpp"

namespace ucf {

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::All: return "All";
        case PolicyKind::RandomSubset: return "RandomSubset";
        case PolicyKind::RoundRobinSingleton: return "RoundRobinSingleton";
        case PolicyKind::Scripted: return "Scripted";
    }
    return "All";
}

PolicyKind policy_kind_from_string(std::string_view name) {
    for (PolicyKind k : {PolicyKind::All, PolicyKind::RandomSubset, PolicyKind::RoundRobinSingleton,
                         PolicyKind::Scripted})
        if (to_string(k) == name) return k;
    throw InvalidInput("unknown activation policy '" + std::string(name) + "'");
}

std::string_view to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Formed: return "Formed";
        case Outcome::RoundCapReached: return "RoundCapReached";
        case Outcome::InvariantViolation: return "InvariantViolation";
    }
    return "RoundCapReached";
}

Outcome outcome_from_string(std::string_view name) {
    for (Outcome o : {Outcome::Formed, Outcome::RoundCapReached, Outcome::InvariantViolation})
        if (to_string(o) == name) return o;
    throw InvalidInput("unknown outcome '" + std::string(name) + "'");
}

const RobotDecision* RoundRecord::decision_of(std::size_t id) const {
    for (const auto& d : decisions)
        if (d.id == id) return &d;
    return nullptr;
}

std::vector<const RobotDecision*> RoundRecord::movers() const {
    std::vector<const RobotDecision*> out;
    for (const auto& d : decisions)
        if (d.decision.action == Action::Move) out.push_back(&d);
    return out;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

WorldState make_world(const FormationSpec& spec, std::vector<Point2> centers, std::uint64_t handedness_seed) {
    if (static_cast<int>(centers.size()) != spec.n)
        throw InvalidConfiguration("expected " + std::to_string(spec.n) + " centres, got " +
                                   std::to_string(centers.size()));
    validate_configuration(centers);
    WorldState w{spec, std::move(centers), {}, 0};
    std::mt19937_64 rng(mix_seed(handedness_seed, 0x4a4e));
    for (std::size_t i = 0; i < w.centers.size(); ++i) w.handedness.push_back((rng() & 1U) ? 1 : -1);
    return w;
}

WorldState random_initial(int n, double a, std::uint64_t seed, double box) {
    const FormationSpec spec = make_formation_spec(n, a);
    if (!(box > 0.0)) throw GeneratorError("placement box must be positive");
    constexpr double kMinGap = 2.0 * kRobotRadius + 0.1;
    std::mt19937_64 rng(mix_seed(seed, 0x1417));
    std::uniform_real_distribution<double> coord(-box / 2.0, box / 2.0);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Point2> pts;
        for (int tries = 0; tries < 20000 && static_cast<int>(pts.size()) < n; ++tries) {
            const Point2 p{coord(rng), coord(rng)};
            if (std::all_of(pts.begin(), pts.end(), [&](Point2 q) { return distance(p, q) >= kMinGap; }))
                pts.push_back(p);
        }
        if (static_cast<int>(pts.size()) == n) return make_world(spec, std::move(pts), seed);
    }
    throw GeneratorError("could not place " + std::to_string(n) + " robots in a box of side " + std::to_string(box));
}

Activator::Activator(ActivationPolicy policy, std::size_t n)
    : policy_(std::move(policy)), n_(n), rng_(mix_seed(policy_.seed, 0xac71)) {
    if (n_ == 0) throw SchedulerError("no robots to activate");
    if (policy_.kind == PolicyKind::Scripted && policy_.script.empty())
        throw SchedulerError("scripted policy without any activation set");
}

std::vector<std::size_t> Activator::next(std::size_t round) {
    std::vector<std::size_t> out;
    switch (policy_.kind) {
        case PolicyKind::All:
            for (std::size_t i = 0; i < n_; ++i) out.push_back(i);
            break;
        case PolicyKind::RandomSubset:
            // Each robot independently with probability 1/2, redrawn when empty.
            while (out.empty())
                for (std::size_t i = 0; i < n_; ++i)
                    if (rng_() >> 63) out.push_back(i);
            break;
        case PolicyKind::RoundRobinSingleton:
            out.push_back((round - 1) % n_);
            break;
        case PolicyKind::Scripted: {
            const auto& set = policy_.script[(round - 1) % policy_.script.size()];
            for (std::size_t id : set)
                if (id < n_) out.push_back(id);
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            if (out.empty()) throw SchedulerError("scripted activation set " + std::to_string(round) + " is empty");
            break;
        }
    }
    return out;
}

std::pair<WorldState, RoundRecord> step(const WorldState& world, std::span<const std::size_t> activated,
                                        std::uint64_t tie_seed, const StepOptions& options) {
    if (activated.empty()) throw SchedulerError("empty activation set");
    std::vector<std::size_t> ids(activated.begin(), activated.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.back() >= world.size()) throw SchedulerError("activation of unknown robot " + std::to_string(ids.back()));

    RoundRecord rec;
    rec.round = world.round + 1;
    rec.activated = ids;
    rec.pre = world.centers;
    rec.post = world.centers;
    const Circle sec = smallest_enclosing_circle(rec.pre);
    rec.phase = sec.radius < world.spec.r - kEpsGeom ? Phase::Expansion : Phase::Formation;

    // Look and compute against the same pre-round world for every activated robot.
    for (std::size_t id : ids) {
        const LocalFrame frame{world.handedness[id], rec.pre[id]};
        const Snapshot snap = take_snapshot(rec.pre, id, frame, world.spec);
        SeededTieBreaker ties(mix_seed(tie_seed, id));
        RobotDecision rd{id, from_local(compute(snap, ties), frame), std::nullopt};
        if (rd.decision.anchor) {
            for (std::size_t j = 0; j < rec.pre.size(); ++j)
                if (distance(rec.pre[j], *rd.decision.anchor) <= kEpsSnap) rd.anchor_id = j;
        }
        for (const auto& f : rd.decision.flags)
            if (std::find(rec.flags.begin(), rec.flags.end(), f) == rec.flags.end()) rec.flags.push_back(f);
        rec.decisions.push_back(std::move(rd));
    }
    // Rigid motion: movers end exactly on their destinations.
    for (const auto& d : rec.decisions)
        if (d.decision.action == Action::Move) rec.post[d.id] = *d.decision.destination;

    rec.checks.push_back(check_static_overlap(rec.post));
    rec.checks.push_back(check_motion_collision_free(rec, options.collision_samples));
    if (rec.phase == Phase::Expansion) rec.checks.push_back(check_leaders_on_sec(rec, world.spec));

    WorldState next = world;
    next.centers = rec.post;
    next.round = rec.round;
    return {std::move(next), std::move(rec)};
}

namespace {

// Ids of the elected leaders when the world is in the expansion phase, else empty.
std::vector<std::size_t> expansion_leaders(const WorldState& world) {
    const Circle sec = smallest_enclosing_circle(world.centers);
    if (sec.radius >= world.spec.r - kEpsGeom) return {};
    std::vector<std::size_t> ids;
    for (Point2 l : detect_symmetry_and_leaders(world.centers, sec).leaders)
        for (std::size_t j = 0; j < world.size(); ++j)
            if (distance(world.centers[j], l) <= kEpsSnap) ids.push_back(j);
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace

Trace run(const WorldState& initial, const ActivationPolicy& policy, const RunOptions& options) {
    if (initial.spec.n < 3 || static_cast<int>(initial.size()) != initial.spec.n)
        throw InvalidConfiguration("world does not match its formation spec");
    validate_configuration(initial.centers);

    Trace trace;
    const std::size_t cap = options.max_rounds.value_or(default_round_cap(initial.spec.n));
    trace.meta = RunMeta{initial.spec.n, initial.spec.a, policy, options.master_seed, cap,
                         options.collision_samples, initial.handedness};

    RoundRecord first;
    first.round = initial.round;
    first.pre = initial.centers;
    first.post = initial.centers;
    const Circle sec0 = smallest_enclosing_circle(initial.centers);
    first.phase = sec0.radius < initial.spec.r - kEpsGeom ? Phase::Expansion : Phase::Formation;
    first.checks.push_back(check_static_overlap(initial.centers));
    trace.records.push_back(std::move(first));

    Activator activator(policy, initial.size());
    WorldState world = initial;
    // Leaders are re-elected every round; a change mid-expansion is flagged for inspection.
    std::vector<std::size_t> prev_leaders;
    for (;;) {
        if (detect_termination(world)) {
            trace.outcome = Outcome::Formed;
            break;
        }
        if (world.round >= cap) {
            trace.outcome = Outcome::RoundCapReached;
            trace.detail = "no uniform circle after " + std::to_string(cap) + " rounds";
            break;
        }
        const auto ids = activator.next(world.round + 1);
        const std::vector<std::size_t> leaders = expansion_leaders(world);
        auto [next, rec] = step(world, ids, mix_seed(options.master_seed, world.round + 1),
                                StepOptions{options.collision_samples});
        if (!leaders.empty() && !prev_leaders.empty() && leaders != prev_leaders) rec.flags.push_back("leader_changed");
        prev_leaders = leaders;
        world = std::move(next);
        const auto bad = std::find_if(rec.checks.begin(), rec.checks.end(), [](const CheckResult& c) { return !c.pass; });
        const bool violated = bad != rec.checks.end();
        if (violated)
            trace.detail = "round " + std::to_string(rec.round) + ": " + bad->name + " failed (margin " +
                           std::to_string(bad->worst_margin) + "): " + bad->detail;
        trace.records.push_back(std::move(rec));
        if (violated) {
            trace.outcome = Outcome::InvariantViolation;
            break;
        }
    }
    return trace;
}

bool detect_termination(std::span<const Point2> centers, const FormationSpec& spec, double tol) {
    if (static_cast<int>(centers.size()) != spec.n || centers.size() < 3) return false;
    const PolygonMetrics m = polygon_metrics(centers);
    return m.circle.radius >= spec.r - tol && m.max_vertex_deviation <= tol;
}

bool detect_termination(const WorldState& world, double tol) {
    return detect_termination(world.centers, world.spec, tol);
}

}  // namespace ucf
