#include "iprctl/inference.hpp"

#include <numeric>

#include "iprctl/error.hpp"

namespace iprctl {

namespace {

void require_dimension(const TransitionModel& model, std::size_t size, const char* what) {
    if (size != model.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " has " + std::to_string(size) + " entries, model has " +
                        std::to_string(model.size()) + " states");
    }
}

// Row-wise expectation operator. Precise rows are cached as plain PMFs.
class DualOperator {
public:
    DualOperator(const TransitionModel& model, Mode mode) : model_(model), mode_(mode) {
        if (mode_ != Mode::Precise) return;
        points_.reserve(model.size());
        for (std::size_t s = 0; s < model.size(); ++s) {
            auto point = model.row(s).as_point();
            if (!point) {
                throw Error(ErrorCode::ImpreciseModelInPreciseOp,
                            "row of state '" + model.space().id(s) +
                                "' is imprecise; use lower or upper mode");
            }
            points_.push_back(std::move(*point));
        }
    }

    double row(std::size_t s, std::span<const double> f) const {
        switch (mode_) {
            case Mode::Precise: return points_[s].expectation(f);
            case Mode::Upper: return model_.row(s).upper_expectation(f);
            case Mode::Lower: return model_.row(s).lower_expectation(f);
        }
        return 0.0;
    }

    const Pmf& point(std::size_t s) const { return points_.at(s); }

private:
    const TransitionModel& model_;
    Mode mode_;
    std::vector<Pmf> points_;
};

}  // namespace

ValueVector apply_primal(const TransitionModel& model, std::span<const double> f) {
    require_dimension(model, f.size(), "function");
    if (!model.is_precise()) {
        throw Error(ErrorCode::ImpreciseModelInPreciseOp, "primal operator needs a precise model");
    }
    const DualOperator op(model, Mode::Precise);
    ValueVector out(model.size(), 0.0);
    for (std::size_t from = 0; from < model.size(); ++from) {
        if (f[from] == 0.0) continue;
        const Pmf& row = op.point(from);
        for (std::size_t to = 0; to < model.size(); ++to) out[to] += row[to] * f[from];
    }
    return out;
}

ValueVector apply_dual(const TransitionModel& model, std::span<const double> f, Mode mode) {
    require_dimension(model, f.size(), "function");
    const DualOperator op(model, mode);
    ValueVector out(model.size());
    for (std::size_t s = 0; s < model.size(); ++s) out[s] = op.row(s, f);
    return out;
}

TransitionModel make_absorbing(const TransitionModel& model, const StateSet& absorbing) {
    require_dimension(model, absorbing.dimension(), "state set");
    std::vector<CredalSet> rows = model.rows();
    for (std::size_t s : absorbing.members()) {
        rows[s] = CredalSet::point(Pmf::point(model.size(), s));
    }
    return model.with_rows(std::move(rows));
}

std::vector<ValueVector> conditional_hitting_series(const TransitionModel& model,
                                                    const StateSet& stay, const StateSet& goal,
                                                    std::size_t horizon, Mode mode) {
    require_dimension(model, stay.dimension(), "state set");
    require_dimension(model, goal.dimension(), "state set");
    const DualOperator op(model, mode);
    const StateSet continuing = stay.minus(goal);

    std::vector<ValueVector> series;
    series.reserve(horizon + 1);
    series.push_back(goal.indicator());
    for (std::size_t t = 1; t <= horizon; ++t) {
        const ValueVector& prev = series.back();
        ValueVector next = goal.indicator();
        for (std::size_t s : continuing.members()) next[s] = op.row(s, prev);
        series.push_back(std::move(next));
    }
    return series;
}

ValueVector conditional_hitting(const TransitionModel& model, const StateSet& stay,
                                const StateSet& goal, std::size_t horizon, Mode mode) {
    return conditional_hitting_series(model, stay, goal, horizon, mode).back();
}

std::vector<ValueVector> hitting_series(const TransitionModel& model, const StateSet& target,
                                        std::size_t horizon, Mode mode) {
    return conditional_hitting_series(model, StateSet::all(model.size()), target, horizon, mode);
}

ValueVector hitting_probabilities(const TransitionModel& model, const StateSet& target,
                                  std::size_t horizon, Mode mode) {
    return hitting_series(model, target, horizon, mode).back();
}

ValueVector hitting_probabilities_absorbing(const TransitionModel& model, const StateSet& target,
                                            std::size_t horizon, Mode mode) {
    const TransitionModel absorbing = make_absorbing(model, target);
    ValueVector h = target.indicator();
    for (std::size_t t = 0; t < horizon; ++t) h = apply_dual(absorbing, h, mode);
    for (std::size_t s : target.members()) h[s] = 1.0;
    return h;
}

ValueVector next_step_probability(const TransitionModel& model, const StateSet& target, Mode mode) {
    require_dimension(model, target.dimension(), "state set");
    return apply_dual(model, target.indicator(), mode);
}

ValueVector expected_cumulative_reward(const TransitionModel& model, const StateSet& target,
                                       std::size_t horizon, Mode mode) {
    require_dimension(model, target.dimension(), "state set");
    const auto& rew = model.rewards();
    const DualOperator op(model, mode);
    const StateSet running = target.complement();

    ValueVector base(rew.begin(), rew.end());
    ValueVector value = base;
    for (std::size_t t = 1; t <= horizon; ++t) {
        ValueVector next = base;
        for (std::size_t s : running.members()) next[s] += op.row(s, value);
        value = std::move(next);
    }
    return value;
}

// BoundedRewardTable

BoundedRewardTable::BoundedRewardTable(std::size_t states, Reward budget, Reward budget_step,
                                       std::vector<ValueVector> columns)
    : states_(states), budget_(budget), step_(budget_step), columns_(std::move(columns)) {
    if (step_ == 0) throw Error(ErrorCode::InvalidArgument, "budget step must be positive");
    if (columns_.size() != budget_ / step_ + 1) {
        throw Error(ErrorCode::DimensionMismatch, "bounded-reward table has wrong column count");
    }
}

const ValueVector& BoundedRewardTable::column_for(Reward rho) const {
    if (rho > budget_) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "budget " + std::to_string(rho) + " exceeds table budget " + std::to_string(budget_));
    }
    return columns_[rho / step_];
}

double BoundedRewardTable::at(std::size_t state, Reward rho) const {
    const auto& column = column_for(rho);
    if (state >= states_) throw Error(ErrorCode::IndexOutOfRange, "state index out of range");
    return column[state];
}

BoundedRewardTable bounded_reward_probabilities(const TransitionModel& model, const StateSet& stay,
                                                const StateSet& goal, std::size_t horizon,
                                                Reward budget, Mode mode, BoundedRewardRule rule) {
    require_dimension(model, stay.dimension(), "state set");
    require_dimension(model, goal.dimension(), "state set");
    const auto& raw = model.rewards();
    const DualOperator op(model, mode);
    const std::size_t n = model.size();

    Reward step = 1;
    if (rule == BoundedRewardRule::Definitional) {
        step = std::accumulate(raw.begin(), raw.end(), Reward{0},
                               [](Reward a, Reward b) { return std::gcd(a, b); });
        if (step == 0) step = 1;
    }
    std::vector<Reward> rew(raw.size());
    for (std::size_t s = 0; s < n; ++s) rew[s] = raw[s] / step;
    const std::size_t width = static_cast<std::size_t>(budget / step) + 1;
    const StateSet continuing = stay.minus(goal);

    // columns[rho][s]
    std::vector<ValueVector> columns(width, ValueVector(n, 0.0));
    for (std::size_t rho = 0; rho < width; ++rho) {
        for (std::size_t s : goal.members()) {
            if (rew[s] <= rho) columns[rho][s] = 1.0;
        }
    }

    std::vector<ValueVector> next(width, ValueVector(n, 0.0));
    ValueVector chi(n);
    for (std::size_t t = 1; t <= horizon; ++t) {
        for (std::size_t rho = 0; rho < width; ++rho) {
            ValueVector& out = next[rho];
            std::fill(out.begin(), out.end(), 0.0);
            if (rule == BoundedRewardRule::Literal) {
                for (std::size_t s = 0; s < n; ++s) {
                    chi[s] = rho <= rew[s] ? 1.0 : columns[rho - rew[s]][s];
                }
            }
            for (std::size_t s = 0; s < n; ++s) {
                if (rew[s] > rho) continue;
                if (goal.contains(s)) {
                    out[s] = 1.0;
                } else if (continuing.contains(s)) {
                    out[s] = rule == BoundedRewardRule::Literal ? op.row(s, chi)
                                                                : op.row(s, columns[rho - rew[s]]);
                }
            }
        }
        std::swap(columns, next);
    }
    return BoundedRewardTable(n, budget, step, std::move(columns));
}

}  // namespace iprctl
