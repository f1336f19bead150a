#pragma once

// Brute-force ground truth. Values are computed straight from path
// semantics: enumerate every positive-probability path, add up the
// probability (or reward) of the ones satisfying the query. Imprecise rows
// are handled by exhaustive search over vertex selections. Only usable on
// small models; guards throw ExplosionGuardTripped instead of sampling.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "iprctl/model.hpp"

namespace iprctl::oracle {

inline constexpr std::size_t kMaxPaths = 1'000'000;
inline constexpr std::size_t kMaxSelections = 2'000'000;

struct WeightedPath {
    std::vector<std::size_t> states;
    double probability = 0.0;
};

/// Transition PMF used from the last state of `prefix`. Allows selections
/// that vary with time and history.
using SelectionPolicy = std::function<const Pmf&(std::span<const std::size_t> prefix)>;

/// Every path of `steps` transitions from `start` with positive probability.
std::vector<WeightedPath> enumerate_paths(const SelectionPolicy& policy, std::size_t start,
                                          std::size_t steps, std::size_t max_paths = kMaxPaths);

/// Same, for the stationary chain of a precise model.
std::vector<WeightedPath> enumerate_paths(const TransitionModel& model, std::size_t start,
                                          std::size_t steps, std::size_t max_paths = kMaxPaths);

/// Paths weighted by the model's initial distribution times the transition
/// product. Needs a precise model and a precise initial specification.
std::vector<WeightedPath> enumerate_joint_paths(const TransitionModel& model, std::size_t steps,
                                                std::size_t max_paths = kMaxPaths);

/// Sum of rewards of path[0..t], both ends included.
Reward path_reward(std::span<const std::size_t> path, std::span<const Reward> rewards, std::size_t t);

namespace query {

struct Next {
    StateSet target;
};
struct Until {
    StateSet stay;
    StateSet goal;
    std::size_t horizon;
};
struct CumulativeReward {
    StateSet target;
    std::size_t horizon;
};
struct BoundedReward {
    StateSet stay;
    StateSet goal;
    std::size_t horizon;
    Reward budget;
};

}  // namespace query

using Query = std::variant<query::Next, query::Until, query::CumulativeReward, query::BoundedReward>;

/// Value of `q` on one complete path (0/1 for events, reward otherwise).
double path_value(const Query& q, std::span<const std::size_t> path, std::span<const Reward> rewards);

struct Bounds {
    double lower = 0.0;
    double upper = 0.0;
};

struct Options {
    std::size_t max_paths = kMaxPaths;
    std::size_t max_selections = kMaxSelections;
    /// Restrict to one vertex per state for all times (stationary chains).
    bool stationary_only = false;
};

/// Minimum and maximum of the query value over all vertex selections. A
/// selection picks one vertex of each row per decision point: per (time,
/// state), or per (time, state, accumulated reward) for bounded-reward
/// queries whose outcome depends on the reward already collected.
Bounds brute_force(const TransitionModel& model, const Query& q, std::size_t start,
                   const Options& options = {});

/// Number of selections brute_force would enumerate.
std::size_t selection_count(const TransitionModel& model, const Query& q, std::size_t start,
                            const Options& options = {});

/// Spot check by uniformly random vertex selections. Never exact; the
/// result is an inner approximation of the brute-force bounds.
Bounds monte_carlo(const TransitionModel& model, const Query& q, std::size_t start,
                   std::size_t samples, std::uint64_t seed);

}  // namespace iprctl::oracle
