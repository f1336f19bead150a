#pragma once

// Text and CSV emitters behind the command-line tool. All numbers are
// printed with six decimals; iteration follows state declaration order so the
// output is byte-stable.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iprctl/checker.hpp"
#include "iprctl/model_io.hpp"

namespace iprctl::report {

std::string fixed6(double value);

/// CSV with header "t,<state ids...>" and one row per t = 0..horizon of the
/// hitting probabilities of `target`.
std::string hitting_table_csv(const TransitionModel& model, const StateSet& target,
                              std::size_t horizon, Mode mode);

struct BandPoint {
    double eps;
    std::size_t t;
    double lower;
    double upper;
};

/// Lower/upper hitting probabilities of `target` from `state` for every
/// contamination level in `eps_grid` and every t = 0..horizon.
std::vector<BandPoint> contamination_sweep(const io::ModelDocument& doc,
                                           const std::vector<std::string>& target,
                                           const std::string& state, std::size_t horizon,
                                           const std::vector<double>& eps_grid);

/// CSV "eps,t,lower,upper".
std::string sweep_csv(const std::vector<BandPoint>& band);

struct CostBounds {
    double lower = 0.0;
    std::optional<double> precise;
    double upper = 0.0;
};

/// Cohort cost sum_s count(s) * E[Rew^{<=n}_target](s) under each mode.
/// The precise value is present only for precise models.
CostBounds cohort_cost(const TransitionModel& model, const std::map<std::string, std::uint64_t>& counts,
                       const StateSet& target, std::size_t horizon);

std::string cost_csv(const CostBounds& cost);

struct CheckResult {
    StateSet satisfied;
    std::optional<ValueVector> values;
    std::vector<std::string> warnings;
    /// Whether the initial state (or every state in the initial support) satisfies.
    bool initial_satisfied = false;
};

CheckResult check(const TransitionModel& model, const StateFormula& formula, const CheckOptions& options);

/// One line per state: "<id>: SAT|UNSAT [value]".
std::string format_check(const TransitionModel& model, const CheckResult& result);

}  // namespace iprctl::report
