#pragma once

// Backward recursions over (imprecise) Markov reward models: transition
// operators, hitting probabilities, expected cumulative rewards and
// bounded-reward probabilities. Every query runs in precise, lower or upper
// mode; lower/upper replace the linear operator by per-row optimization over
// the row credal sets.

#include <cstddef>
#include <vector>

#include "iprctl/model.hpp"

namespace iprctl {

/// Left product (T f)(s) = sum_{s'} T(s', s) f(s'). Maps a marginal at time t
/// to the marginal at time t+1. Precise models only.
ValueVector apply_primal(const TransitionModel& model, std::span<const double> f);

/// Right product (T f)(s) = sum_{s'} T(s, s') f(s'), or its upper/lower
/// envelope over each row's credal set.
ValueVector apply_dual(const TransitionModel& model, std::span<const double> f, Mode mode);

/// Copy of `model` whose rows for states in `absorbing` are self-loops.
TransitionModel make_absorbing(const TransitionModel& model, const StateSet& absorbing);

/// h^{<=t}_A for t = horizon.
ValueVector hitting_probabilities(const TransitionModel& model, const StateSet& target,
                                  std::size_t horizon, Mode mode);

/// h^{<=t}_A for every t = 0..horizon.
std::vector<ValueVector> hitting_series(const TransitionModel& model, const StateSet& target,
                                        std::size_t horizon, Mode mode);

/// Hitting probabilities through the absorbing-model route: the operator of
/// the model with `target` made absorbing applied `horizon` times to 1_A.
ValueVector hitting_probabilities_absorbing(const TransitionModel& model, const StateSet& target,
                                            std::size_t horizon, Mode mode);

/// Probability of reaching `goal` within `horizon` steps while staying in
/// `stay` before that.
ValueVector conditional_hitting(const TransitionModel& model, const StateSet& stay,
                                const StateSet& goal, std::size_t horizon, Mode mode);

std::vector<ValueVector> conditional_hitting_series(const TransitionModel& model,
                                                    const StateSet& stay, const StateSet& goal,
                                                    std::size_t horizon, Mode mode);

/// One-step probability of landing in `target`.
ValueVector next_step_probability(const TransitionModel& model, const StateSet& target, Mode mode);

/// Expected reward accumulated until `target` is reached or `horizon` steps
/// elapse, both endpoints included. Throws MissingRewards.
ValueVector expected_cumulative_reward(const TransitionModel& model, const StateSet& target,
                                       std::size_t horizon, Mode mode);

/// Evaluation rule for bounded-reward probabilities.
enum class BoundedRewardRule {
    /// Charges the current state's reward before propagating; a state whose
    /// reward exceeds the remaining budget fails. Agrees with path semantics.
    Definitional,
    /// The recursion charging the successor's reward and returning one
    /// whenever the budget does not exceed that reward.
    Literal,
};

/// Probabilities x^{<=n, rho}(s) for every budget rho = 0..r. Rewards are
/// divided by their GCD internally (definitional rule only), so the table
/// stores one column per multiple of `budget_step()`.
class BoundedRewardTable {
public:
    BoundedRewardTable(std::size_t states, Reward budget, Reward budget_step,
                       std::vector<ValueVector> columns);

    std::size_t states() const noexcept { return states_; }
    Reward budget() const noexcept { return budget_; }
    Reward budget_step() const noexcept { return step_; }
    std::size_t columns() const noexcept { return columns_.size(); }

    /// Probability for `state` under budget `rho` (0 <= rho <= budget()).
    double at(std::size_t state, Reward rho) const;
    /// Column for budget `rho` over all states.
    const ValueVector& column_for(Reward rho) const;
    /// Column for the full budget.
    const ValueVector& final_column() const { return columns_.back(); }
    const std::vector<ValueVector>& raw_columns() const noexcept { return columns_; }

private:
    std::size_t states_;
    Reward budget_;
    Reward step_;
    std::vector<ValueVector> columns_;
};

BoundedRewardTable bounded_reward_probabilities(const TransitionModel& model, const StateSet& stay,
                                                const StateSet& goal, std::size_t horizon,
                                                Reward budget, Mode mode,
                                                BoundedRewardRule rule = BoundedRewardRule::Definitional);

}  // namespace iprctl
