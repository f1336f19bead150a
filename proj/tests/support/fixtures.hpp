#pragma once

// Models shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "iprctl/model.hpp"
#include "iprctl/model_io.hpp"

namespace iprctl::testing {

inline std::string model_path(const std::string& name) {
    return std::string(IPRCTL_MODELS_DIR) + "/" + name;
}

// State order: start, delivered, try, lost.
inline constexpr std::size_t kStart = 0;
inline constexpr std::size_t kDelivered = 1;
inline constexpr std::size_t kTry = 2;
inline constexpr std::size_t kLost = 3;

inline TransitionModel channel_model() { return io::load_model(model_path("channel.json")); }

inline TransitionModel channel_eps_model(double eps) {
    return io::build_model(io::with_contamination(io::read_document(model_path("channel_eps.json")), eps));
}

/// Unlabelled model whose rows are given as explicit vertex lists.
inline TransitionModel vertex_model(const std::vector<std::vector<std::vector<double>>>& rows,
                                    std::optional<std::vector<Reward>> rewards = std::nullopt) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < rows.size(); ++i) ids.push_back("s" + std::to_string(i));
    std::vector<CredalSet> sets;
    for (const auto& row : rows) {
        CredalSet::Vertices vs;
        for (const auto& v : row) vs.push_back(Pmf::make(v));
        sets.push_back(CredalSet::from_vertices(std::move(vs)));
    }
    return TransitionModel({StateSpace(ids), std::move(sets), {}, {}, std::move(rewards), std::nullopt,
                            std::nullopt});
}

/// Three-state toy with two vertices per row; state 2 is the target.
inline TransitionModel two_vertex_toy() {
    return vertex_model({
        {{0.5, 0.5, 0.0}, {0.7, 0.0, 0.3}},
        {{1.0, 0.0, 0.0}, {0.0, 0.8, 0.2}},
        {{0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}},
    });
}

/// Chain where the best vertex at state 2 depends on the remaining time:
/// with one step left go straight for the goal (0.5), with two steps left
/// take the sure detour through state 3. State 0 reaches state 2 after one
/// or two steps with equal probability. States: 0 a, 1 a2, 2 s, 3 b, 4 goal, 5 sink.
inline TransitionModel stationarity_witness() {
    return vertex_model({
        {{0.0, 0.5, 0.5, 0.0, 0.0, 0.0}},
        {{0.0, 0.0, 1.0, 0.0, 0.0, 0.0}},
        {{0.0, 0.0, 0.0, 0.0, 0.5, 0.5}, {0.0, 0.0, 0.0, 1.0, 0.0, 0.0}},
        {{0.0, 0.0, 0.0, 0.0, 1.0, 0.0}},
        {{0.0, 0.0, 0.0, 0.0, 1.0, 0.0}},
        {{0.0, 0.0, 0.0, 0.0, 0.0, 1.0}},
    });
}

/// Random PMF supported on a random non-empty subset.
inline std::vector<double> random_pmf(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> w(n, 0.0);
    double total = 0.0;
    while (total == 0.0) {
        for (auto& x : w) {
            x = unit(rng) < 0.6 ? unit(rng) : 0.0;
            total += x;
        }
    }
    for (auto& x : w) x /= total;
    return w;
}

struct RandomModelLimits {
    std::size_t max_states = 5;
    std::size_t max_vertices = 3;
    Reward max_reward = 3;
};

/// Random small model mixing precise rows, vertex rows and two-state interval
/// rows (which have exactly two vertices). Carries rewards in 0..max_reward.
inline TransitionModel random_model(std::mt19937_64& rng, const RandomModelLimits& limits = {}) {
    std::uniform_int_distribution<std::size_t> size_dist(2, limits.max_states);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = size_dist(rng);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("s" + std::to_string(i));

    std::vector<CredalSet> rows;
    for (std::size_t s = 0; s < n; ++s) {
        const double kind = unit(rng);
        if (kind < 0.35) {
            rows.push_back(CredalSet::point(Pmf::make(random_pmf(rng, n))));
        } else if (kind < 0.7) {
            const std::size_t count =
                std::uniform_int_distribution<std::size_t>(2, limits.max_vertices)(rng);
            CredalSet::Vertices vs;
            for (std::size_t k = 0; k < count; ++k) vs.push_back(Pmf::make(random_pmf(rng, n)));
            rows.push_back(CredalSet::from_vertices(std::move(vs)));
        } else {
            std::vector<std::size_t> order(n);
            for (std::size_t i = 0; i < n; ++i) order[i] = i;
            std::shuffle(order.begin(), order.end(), rng);
            const double lo = 0.6 * unit(rng);
            const double hi = lo + (1.0 - lo) * unit(rng) * 0.5;
            CredalSet::Intervals iv(n);
            iv[order[0]] = {lo, hi};
            iv[order[1]] = {1.0 - hi, 1.0 - lo};
            rows.push_back(CredalSet::from_intervals(std::move(iv)));
        }
    }
    std::vector<std::set<std::string>> labels(n);
    std::vector<Reward> rewards(n);
    std::uniform_int_distribution<Reward> reward_dist(0, limits.max_reward);
    for (std::size_t s = 0; s < n; ++s) {
        if (unit(rng) < 0.5) labels[s].insert("a");
        if (unit(rng) < 0.4) labels[s].insert("b");
        rewards[s] = reward_dist(rng);
    }
    return TransitionModel({StateSpace(ids), std::move(rows), {"a", "b"}, std::move(labels),
                            std::move(rewards), std::nullopt, std::nullopt});
}

inline StateSet random_subset(std::mt19937_64& rng, std::size_t n, double density = 0.5) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    StateSet out(n);
    for (std::size_t s = 0; s < n; ++s) {
        if (unit(rng) < density) out.insert(s);
    }
    return out;
}

/// Random precise model with one vertex picked from each row of `model`.
inline TransitionModel random_selection(std::mt19937_64& rng, const TransitionModel& model) {
    std::vector<CredalSet> rows;
    for (const auto& row : model.rows()) {
        const auto vs = row.extreme_points();
        rows.push_back(CredalSet::point(vs[std::uniform_int_distribution<std::size_t>(0, vs.size() - 1)(rng)]));
    }
    return model.with_rows(std::move(rows));
}

}  // namespace iprctl::testing
