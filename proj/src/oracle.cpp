#include "iprctl/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <tuple>

#include "iprctl/error.hpp"

namespace iprctl::oracle {

namespace {

void walk(const SelectionPolicy& policy, std::vector<std::size_t>& prefix, double probability,
          std::size_t steps, std::size_t max_paths, std::size_t& emitted,
          const std::function<void(std::span<const std::size_t>, double)>& visit) {
    if (prefix.size() == steps + 1) {
        if (++emitted > max_paths) {
            throw Error(ErrorCode::ExplosionGuardTripped,
                        "more than " + std::to_string(max_paths) + " paths");
        }
        visit(prefix, probability);
        return;
    }
    const Pmf& row = policy(prefix);
    for (std::size_t next = 0; next < row.size(); ++next) {
        if (row[next] <= 0.0) continue;
        prefix.push_back(next);
        walk(policy, prefix, probability * row[next], steps, max_paths, emitted, visit);
        prefix.pop_back();
    }
}

void for_each_path(const SelectionPolicy& policy, std::size_t start, std::size_t steps,
                   std::size_t max_paths,
                   const std::function<void(std::span<const std::size_t>, double)>& visit) {
    std::vector<std::size_t> prefix{start};
    prefix.reserve(steps + 1);
    std::size_t emitted = 0;
    walk(policy, prefix, 1.0, steps, max_paths, emitted, visit);
}

std::vector<std::vector<Pmf>> row_vertices(const TransitionModel& model) {
    std::vector<std::vector<Pmf>> out;
    out.reserve(model.size());
    for (const auto& row : model.rows()) {
        if (auto point = row.as_point()) {
            out.push_back({std::move(*point)});
        } else {
            out.push_back(row.extreme_points());
        }
    }
    return out;
}

std::size_t steps_of(const Query& q) {
    struct Steps {
        std::size_t operator()(const query::Next&) const { return 1; }
        std::size_t operator()(const query::Until& u) const { return u.horizon; }
        std::size_t operator()(const query::CumulativeReward& c) const { return c.horizon; }
        std::size_t operator()(const query::BoundedReward& b) const { return b.horizon; }
    };
    return std::visit(Steps{}, q);
}

bool until_decided(const StateSet& stay, const StateSet& goal, std::span<const std::size_t> prefix) {
    for (std::size_t s : prefix) {
        if (goal.contains(s) || !stay.contains(s)) return true;
    }
    return false;
}

// True once further transitions cannot change the value of the query.
bool decided(const Query& q, std::span<const std::size_t> prefix, std::span<const Reward> rewards) {
    struct Visitor {
        std::span<const std::size_t> prefix;
        std::span<const Reward> rewards;
        bool operator()(const query::Next&) const { return prefix.size() >= 2; }
        bool operator()(const query::Until& u) const { return until_decided(u.stay, u.goal, prefix); }
        bool operator()(const query::CumulativeReward& c) const {
            return std::any_of(prefix.begin(), prefix.end(),
                               [&](std::size_t s) { return c.target.contains(s); });
        }
        bool operator()(const query::BoundedReward& b) const {
            return until_decided(b.stay, b.goal, prefix) ||
                   path_reward(prefix, rewards, prefix.size() - 1) > b.budget;
        }
    };
    return std::visit(Visitor{prefix, rewards}, q);
}

using DecisionKey = std::tuple<std::size_t, std::size_t, Reward>;

DecisionKey key_of(const Query& q, std::span<const std::size_t> prefix,
                   std::span<const Reward> rewards, bool stationary) {
    const std::size_t last = prefix.back();
    if (stationary) return {0, last, 0};
    const std::size_t time = prefix.size() - 1;
    if (std::holds_alternative<query::BoundedReward>(q)) {
        return {time, last, path_reward(prefix, rewards, time)};
    }
    return {time, last, 0};
}

class SelectionSearch {
public:
    SelectionSearch(const TransitionModel& model, const Query& q, std::size_t start,
                    const Options& options)
        : query_(q),
          start_(start),
          steps_(steps_of(q)),
          options_(options),
          vertices_(row_vertices(model)) {
        if (start >= model.size()) throw Error(ErrorCode::UnknownState, "start state out of range");
        if (model.has_rewards()) rewards_ = model.rewards();
        if (std::holds_alternative<query::CumulativeReward>(q) ||
            std::holds_alternative<query::BoundedReward>(q)) {
            (void)model.rewards();
        }
        union_support_.resize(model.size());
        for (std::size_t s = 0; s < model.size(); ++s) {
            for (std::size_t t = 0; t < model.size(); ++t) {
                const bool reachable = std::any_of(vertices_[s].begin(), vertices_[s].end(),
                                                   [&](const Pmf& v) { return v[t] > 0.0; });
                if (reachable) union_support_[s].push_back(t);
            }
        }
        std::vector<std::size_t> prefix{start};
        std::size_t visited = 0;
        discover(prefix, visited);
        for (const auto& [key, slot] : slots_) {
            const std::size_t choices = vertices_[std::get<1>(key)].size();
            if (combinations_ > options_.max_selections / choices) {
                throw Error(ErrorCode::ExplosionGuardTripped,
                            "more than " + std::to_string(options_.max_selections) +
                                " vertex selections");
            }
            combinations_ *= choices;
        }
    }

    std::size_t combinations() const { return combinations_; }

    double evaluate(const std::vector<std::size_t>& choice) const {
        const SelectionPolicy policy = [&](std::span<const std::size_t> prefix) -> const Pmf& {
            const std::size_t last = prefix.back();
            if (vertices_[last].size() == 1 || decided(query_, prefix, rewards_)) {
                return vertices_[last].front();
            }
            const auto it = slots_.find(key_of(query_, prefix, rewards_, options_.stationary_only));
            return vertices_[last][it == slots_.end() ? 0 : choice[it->second]];
        };
        double total = 0.0;
        for_each_path(policy, start_, steps_, options_.max_paths,
                      [&](std::span<const std::size_t> path, double p) {
                          total += p * path_value(query_, path, rewards_);
                      });
        return total;
    }

    Bounds exhaustive() const {
        Bounds bounds{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        std::vector<std::size_t> choice(slots_.size(), 0);
        std::vector<std::size_t> radix(slots_.size());
        for (const auto& [key, slot] : slots_) radix[slot] = vertices_[std::get<1>(key)].size();
        while (true) {
            const double value = evaluate(choice);
            bounds.lower = std::min(bounds.lower, value);
            bounds.upper = std::max(bounds.upper, value);
            std::size_t digit = 0;
            while (digit < choice.size() && ++choice[digit] == radix[digit]) choice[digit++] = 0;
            if (digit == choice.size()) break;
        }
        return bounds;
    }

    Bounds sampled(std::size_t samples, std::uint64_t seed) const {
        std::mt19937_64 rng(seed);
        Bounds bounds{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
        std::vector<std::size_t> choice(slots_.size(), 0);
        std::vector<std::size_t> radix(slots_.size());
        for (const auto& [key, slot] : slots_) radix[slot] = vertices_[std::get<1>(key)].size();
        for (std::size_t i = 0; i < std::max<std::size_t>(samples, 1); ++i) {
            for (std::size_t d = 0; d < choice.size(); ++d) {
                choice[d] = std::uniform_int_distribution<std::size_t>(0, radix[d] - 1)(rng);
            }
            const double value = evaluate(choice);
            bounds.lower = std::min(bounds.lower, value);
            bounds.upper = std::max(bounds.upper, value);
        }
        return bounds;
    }

private:
    void discover(std::vector<std::size_t>& prefix, std::size_t& visited) {
        if (prefix.size() > steps_ || decided(query_, prefix, rewards_)) return;
        if (++visited > options_.max_paths) {
            throw Error(ErrorCode::ExplosionGuardTripped,
                        "more than " + std::to_string(options_.max_paths) + " path prefixes");
        }
        const std::size_t last = prefix.back();
        if (vertices_[last].size() > 1) {
            slots_.emplace(key_of(query_, prefix, rewards_, options_.stationary_only), slots_.size());
        }
        for (std::size_t next : union_support_[last]) {
            prefix.push_back(next);
            discover(prefix, visited);
            prefix.pop_back();
        }
    }

    const Query& query_;
    std::size_t start_;
    std::size_t steps_;
    Options options_;
    std::vector<std::vector<Pmf>> vertices_;
    std::vector<std::vector<std::size_t>> union_support_;
    std::vector<Reward> rewards_;
    std::map<DecisionKey, std::size_t> slots_;
    std::size_t combinations_ = 1;
};

bool until_holds(const StateSet& stay, const StateSet& goal, std::span<const std::size_t> path,
                 std::size_t tau) {
    if (!goal.contains(path[tau])) return false;
    for (std::size_t i = 0; i < tau; ++i) {
        if (!stay.contains(path[i])) return false;
    }
    return true;
}

}  // namespace

std::vector<WeightedPath> enumerate_paths(const SelectionPolicy& policy, std::size_t start,
                                          std::size_t steps, std::size_t max_paths) {
    std::vector<WeightedPath> out;
    for_each_path(policy, start, steps, max_paths, [&](std::span<const std::size_t> path, double p) {
        out.push_back({std::vector<std::size_t>(path.begin(), path.end()), p});
    });
    return out;
}

std::vector<WeightedPath> enumerate_paths(const TransitionModel& model, std::size_t start,
                                          std::size_t steps, std::size_t max_paths) {
    if (!model.is_precise()) {
        throw Error(ErrorCode::ImpreciseModelInPreciseOp, "path enumeration needs a precise model");
    }
    if (start >= model.size()) throw Error(ErrorCode::UnknownState, "start state out of range");
    std::vector<Pmf> rows;
    for (const auto& row : model.rows()) rows.push_back(*row.as_point());
    const SelectionPolicy policy = [&](std::span<const std::size_t> prefix) -> const Pmf& {
        return rows[prefix.back()];
    };
    return enumerate_paths(policy, start, steps, max_paths);
}

std::vector<WeightedPath> enumerate_joint_paths(const TransitionModel& model, std::size_t steps,
                                                std::size_t max_paths) {
    std::optional<Pmf> initial;
    if (!model.initial()) {
        initial = Pmf::point(model.size(), 0);
    } else if (const auto* state = std::get_if<std::size_t>(&*model.initial())) {
        initial = Pmf::point(model.size(), *state);
    } else {
        initial = std::get<CredalSet>(*model.initial()).as_point();
    }
    if (!initial) {
        throw Error(ErrorCode::ImpreciseModelInPreciseOp, "joint factorization needs a precise initial PMF");
    }
    std::vector<WeightedPath> out;
    for (std::size_t s0 = 0; s0 < model.size(); ++s0) {
        if ((*initial)[s0] <= 0.0) continue;
        for (auto& path : enumerate_paths(model, s0, steps, max_paths)) {
            path.probability *= (*initial)[s0];
            out.push_back(std::move(path));
            if (out.size() > max_paths) {
                throw Error(ErrorCode::ExplosionGuardTripped,
                            "more than " + std::to_string(max_paths) + " paths");
            }
        }
    }
    return out;
}

Reward path_reward(std::span<const std::size_t> path, std::span<const Reward> rewards, std::size_t t) {
    if (t >= path.size()) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "time " + std::to_string(t) + " beyond a path of length " + std::to_string(path.size()));
    }
    Reward total = 0;
    for (std::size_t i = 0; i <= t; ++i) total += rewards[path[i]];
    return total;
}

double path_value(const Query& q, std::span<const std::size_t> path, std::span<const Reward> rewards) {
    struct Visitor {
        std::span<const std::size_t> path;
        std::span<const Reward> rewards;

        double operator()(const query::Next& n) const { return n.target.contains(path[1]) ? 1.0 : 0.0; }
        double operator()(const query::Until& u) const {
            for (std::size_t tau = 0; tau <= u.horizon; ++tau) {
                if (until_holds(u.stay, u.goal, path, tau)) return 1.0;
            }
            return 0.0;
        }
        double operator()(const query::CumulativeReward& c) const {
            std::size_t stop = c.horizon;
            for (std::size_t tau = 0; tau <= c.horizon; ++tau) {
                if (c.target.contains(path[tau])) {
                    stop = tau;
                    break;
                }
            }
            return static_cast<double>(path_reward(path, rewards, stop));
        }
        double operator()(const query::BoundedReward& b) const {
            for (std::size_t tau = 0; tau <= b.horizon; ++tau) {
                if (until_holds(b.stay, b.goal, path, tau) && path_reward(path, rewards, tau) <= b.budget) {
                    return 1.0;
                }
            }
            return 0.0;
        }
    };
    return std::visit(Visitor{path, rewards}, q);
}

Bounds brute_force(const TransitionModel& model, const Query& q, std::size_t start,
                   const Options& options) {
    return SelectionSearch(model, q, start, options).exhaustive();
}

std::size_t selection_count(const TransitionModel& model, const Query& q, std::size_t start,
                            const Options& options) {
    return SelectionSearch(model, q, start, options).combinations();
}

Bounds monte_carlo(const TransitionModel& model, const Query& q, std::size_t start,
                   std::size_t samples, std::uint64_t seed) {
    Options options;
    options.max_selections = std::numeric_limits<std::size_t>::max();
    return SelectionSearch(model, q, start, options).sampled(samples, seed);
}

}  // namespace iprctl::oracle
