#include "iprctl/reports.hpp"

#include <cstdio>

#include "iprctl/error.hpp"
#include "iprctl/inference.hpp"

namespace iprctl::report {

std::string fixed6(double value) {
    char buffer[64];
    // Avoid printing "-0.000000".
    if (value == 0.0) value = 0.0;
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

std::string hitting_table_csv(const TransitionModel& model, const StateSet& target,
                              std::size_t horizon, Mode mode) {
    std::string out = "t";
    for (const auto& id : model.space().ids()) out += "," + id;
    out += "\n";
    const auto series = hitting_series(model, target, horizon, mode);
    for (std::size_t t = 0; t < series.size(); ++t) {
        out += std::to_string(t);
        for (double v : series[t]) out += "," + fixed6(v);
        out += "\n";
    }
    return out;
}

std::vector<BandPoint> contamination_sweep(const io::ModelDocument& doc,
                                           const std::vector<std::string>& target,
                                           const std::string& state, std::size_t horizon,
                                           const std::vector<double>& eps_grid) {
    std::vector<BandPoint> band;
    for (double eps : eps_grid) {
        const TransitionModel model = io::build_model(io::with_contamination(doc, eps));
        const StateSet goal = StateSet::from_ids(model.space(), target);
        const std::size_t s = model.space().index(state);
        const auto lower = hitting_series(model, goal, horizon, Mode::Lower);
        const auto upper = hitting_series(model, goal, horizon, Mode::Upper);
        for (std::size_t t = 0; t <= horizon; ++t) band.push_back({eps, t, lower[t][s], upper[t][s]});
    }
    return band;
}

std::string sweep_csv(const std::vector<BandPoint>& band) {
    std::string out = "eps,t,lower,upper\n";
    for (const auto& p : band) {
        out += fixed6(p.eps) + "," + std::to_string(p.t) + "," + fixed6(p.lower) + "," + fixed6(p.upper) + "\n";
    }
    return out;
}

CostBounds cohort_cost(const TransitionModel& model, const std::map<std::string, std::uint64_t>& counts,
                       const StateSet& target, std::size_t horizon) {
    (void)model.rewards();
    std::vector<std::pair<std::size_t, double>> weights;
    for (const auto& [id, k] : counts) weights.emplace_back(model.space().index(id), static_cast<double>(k));
    auto total = [&](Mode mode) {
        const auto values = expected_cumulative_reward(model, target, horizon, mode);
        double sum = 0.0;
        for (const auto& [s, k] : weights) sum += k * values[s];
        return sum;
    };
    CostBounds cost;
    cost.lower = total(Mode::Lower);
    cost.upper = total(Mode::Upper);
    if (model.is_precise()) cost.precise = total(Mode::Precise);
    return cost;
}

std::string cost_csv(const CostBounds& cost) {
    std::string out = "mode,cost\n";
    out += "lower," + fixed6(cost.lower) + "\n";
    if (cost.precise) out += "precise," + fixed6(*cost.precise) + "\n";
    out += "upper," + fixed6(cost.upper) + "\n";
    return out;
}

CheckResult check(const TransitionModel& model, const StateFormula& formula, const CheckOptions& options) {
    Checker checker(model, options);
    CheckResult result;
    result.satisfied = checker.sat(formula);
    result.values = checker.quantity(formula);
    result.warnings = checker.warnings();

    const auto& initial = model.initial();
    if (initial && std::holds_alternative<CredalSet>(*initial)) {
        // Every state that can start the chain must satisfy.
        const auto& cs = std::get<CredalSet>(*initial);
        const auto upper_mass = [&](std::size_t s) {
            return cs.upper_expectation(StateSet(model.size(), {s}).indicator());
        };
        result.initial_satisfied = true;
        for (std::size_t s = 0; s < model.size(); ++s) {
            if (upper_mass(s) > 0.0 && !result.satisfied.contains(s)) result.initial_satisfied = false;
        }
    } else {
        result.initial_satisfied = result.satisfied.contains(model.initial_state());
    }
    return result;
}

std::string format_check(const TransitionModel& model, const CheckResult& result) {
    std::string out;
    for (std::size_t s = 0; s < model.size(); ++s) {
        out += model.space().id(s) + ": " + (result.satisfied.contains(s) ? "SAT" : "UNSAT");
        if (result.values) out += " " + fixed6((*result.values)[s]);
        out += "\n";
    }
    return out;
}

}  // namespace iprctl::report
