#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ucf/world.hpp"

namespace ucf {

inline constexpr int kDefaultCollisionSamples = 1000;

inline std::size_t default_round_cap(int n) { return 200 * static_cast<std::size_t>(n); }

// splitmix64 finalizer; all per-round and per-robot seeds are derived with it.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

WorldState make_world(const FormationSpec& spec, std::vector<Point2> centers, std::uint64_t handedness_seed);

// Rejection sampling in the square [-box/2, box/2]^2 with centres at least 2.1 apart.
WorldState random_initial(int n, double a, std::uint64_t seed, double box);

class Activator {
public:
    Activator(ActivationPolicy policy, std::size_t n);
    // Non-empty, ascending ids for round `round` (1-based).
    std::vector<std::size_t> next(std::size_t round);

private:
    ActivationPolicy policy_;
    std::size_t n_;
    std::mt19937_64 rng_;
};

struct StepOptions {
    int collision_samples = kDefaultCollisionSamples;
};

// One semi-synchronous round: every activated robot looks at the pre-round
// world, computes, and movers reach their destinations with a shared path
// fraction. Checks on the round are attached to the record.
std::pair<WorldState, RoundRecord> step(const WorldState& world, std::span<const std::size_t> activated,
                                        std::uint64_t tie_seed, const StepOptions& options = {});

struct RunOptions {
    std::optional<std::size_t> max_rounds;  // default_round_cap(n) when unset
    std::uint64_t master_seed = 0;
    int collision_samples = kDefaultCollisionSamples;
};

Trace run(const WorldState& initial, const ActivationPolicy& policy, const RunOptions& options);

bool detect_termination(const WorldState& world, double tol = kEpsSnap);
bool detect_termination(std::span<const Point2> centers, const FormationSpec& spec, double tol = kEpsSnap);

}  // namespace ucf
