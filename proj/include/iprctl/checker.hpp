#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iprctl/formula.hpp"
#include "iprctl/inference.hpp"

namespace iprctl {

struct CheckOptions {
    /// Horizon n used by unbounded until, bounded reward and expected reward.
    /// Falls back to the model's horizon.
    std::optional<std::size_t> horizon;
    /// Slack for threshold comparisons.
    double tolerance = 1e-9;
    BoundedRewardRule bounded_reward_rule = BoundedRewardRule::Definitional;
};

/// Decides `value cmp threshold` with `tolerance` slack: non-strict
/// comparisons accept values within the tolerance, strict ones require a
/// margin larger than it, and "=" means |value - threshold| <= tolerance.
bool compare(double value, Comparator cmp, double threshold, double tolerance);

/// Operator mode matching a bound kind (P -> precise, LP/LE -> lower, UP/UE -> upper).
Mode mode_for_kind(BoundKind kind);

/// Bottom-up satisfaction checker for state formulae over one model.
class Checker {
public:
    explicit Checker(const TransitionModel& model, CheckOptions options = {});

    /// States satisfying `formula`.
    StateSet sat(const StateFormula& formula);

    /// Probability of the path formula from each state.
    ValueVector evaluate_path(const PathFormula& formula, Mode mode);

    /// Expected cumulative reward until `target` holds, over the horizon.
    ValueVector evaluate_reward(const StateFormula& target, Mode mode);

    /// Values compared against the threshold of a top-level P or E
    /// operator; nullopt for purely Boolean formulae.
    std::optional<ValueVector> quantity(const StateFormula& formula);

    std::size_t horizon() const;
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

private:
    Mode mode_for(BoundKind kind) const;
    void warn(std::string message);

    const TransitionModel& model_;
    CheckOptions options_;
    std::vector<std::string> warnings_;
};

StateSet sat_set(const TransitionModel& model, const StateFormula& formula, CheckOptions options = {});

}  // namespace iprctl
