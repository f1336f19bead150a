#include "iprctl/checker.hpp"

#include <algorithm>
#include <cmath>

#include "iprctl/error.hpp"

namespace iprctl {

bool compare(double value, Comparator cmp, double threshold, double tolerance) {
    switch (cmp) {
        case Comparator::Less: return value < threshold - tolerance;
        case Comparator::LessEqual: return value <= threshold + tolerance;
        case Comparator::Equal: return std::abs(value - threshold) <= tolerance;
        case Comparator::GreaterEqual: return value >= threshold - tolerance;
        case Comparator::Greater: return value > threshold + tolerance;
    }
    return false;
}

Mode mode_for_kind(BoundKind kind) {
    switch (kind) {
        case BoundKind::Lower: return Mode::Lower;
        case BoundKind::Upper: return Mode::Upper;
        case BoundKind::Precise: break;
    }
    return Mode::Precise;
}

Checker::Checker(const TransitionModel& model, CheckOptions options)
    : model_(model), options_(options) {}

std::size_t Checker::horizon() const {
    if (options_.horizon) return *options_.horizon;
    if (model_.horizon()) return *model_.horizon();
    throw Error(ErrorCode::InvalidArgument, "no horizon given and the model declares none");
}

Mode Checker::mode_for(BoundKind kind) const {
    if (kind != BoundKind::Precise) return mode_for_kind(kind);
    if (!model_.is_precise()) {
        throw Error(ErrorCode::PreciseQueryOnImpreciseModel,
                    "P/E operators need a precise model; use LP/UP or LE/UE");
    }
    return Mode::Precise;
}

void Checker::warn(std::string message) {
    if (std::find(warnings_.begin(), warnings_.end(), message) == warnings_.end()) {
        warnings_.push_back(std::move(message));
    }
}

ValueVector Checker::evaluate_path(const PathFormula& formula, Mode mode) {
    struct Visitor {
        Checker& self;
        Mode mode;

        ValueVector operator()(const path::Next& p) {
            return next_step_probability(self.model_, self.sat(*p.target), mode);
        }
        ValueVector operator()(const path::Until& p) {
            return conditional_hitting(self.model_, self.sat(*p.stay), self.sat(*p.goal),
                                       self.horizon(), mode);
        }
        ValueVector operator()(const path::BoundedUntil& p) {
            if (self.options_.horizon || self.model_.horizon()) {
                if (p.steps > self.horizon()) {
                    throw Error(ErrorCode::HorizonExceeded,
                                "step bound " + std::to_string(p.steps) + " exceeds the horizon " +
                                    std::to_string(self.horizon()));
                }
            }
            return conditional_hitting(self.model_, self.sat(*p.stay), self.sat(*p.goal),
                                       static_cast<std::size_t>(p.steps), mode);
        }
        ValueVector operator()(const path::BoundedReward& p) {
            const auto table = bounded_reward_probabilities(
                self.model_, self.sat(*p.stay), self.sat(*p.goal), self.horizon(), p.budget, mode,
                self.options_.bounded_reward_rule);
            return table.final_column();
        }
    };
    return std::visit(Visitor{*this, mode}, formula);
}

ValueVector Checker::evaluate_reward(const StateFormula& target, Mode mode) {
    return expected_cumulative_reward(model_, sat(target), horizon(), mode);
}

std::optional<ValueVector> Checker::quantity(const StateFormula& formula) {
    if (const auto* p = std::get_if<state::Prob>(&formula.node)) {
        return evaluate_path(p->path, mode_for(p->kind));
    }
    if (const auto* e = std::get_if<state::ExpReward>(&formula.node)) {
        return evaluate_reward(*e->target, mode_for(e->kind));
    }
    return std::nullopt;
}

StateSet Checker::sat(const StateFormula& formula) {
    const std::size_t n = model_.size();
    struct Visitor {
        Checker& self;
        std::size_t n;

        StateSet operator()(const state::True&) { return StateSet::all(n); }
        StateSet operator()(const state::Atom& a) { return self.model_.states_with(a.name); }
        StateSet operator()(const state::Not& f) { return self.sat(*f.operand).complement(); }
        StateSet operator()(const state::And& f) {
            return self.sat(*f.lhs).intersect(self.sat(*f.rhs));
        }
        StateSet operator()(const state::Prob& f) {
            const Mode mode = self.mode_for(f.kind);
            if (f.cmp == Comparator::Equal && mode != Mode::Precise) {
                self.warn("'=' against a lower/upper probability bound compares the bound itself");
            }
            return threshold(self.evaluate_path(f.path, mode), f.cmp, f.threshold);
        }
        StateSet operator()(const state::ExpReward& f) {
            const Mode mode = self.mode_for(f.kind);
            if (f.cmp == Comparator::Equal && mode != Mode::Precise) {
                self.warn("'=' against a lower/upper expected reward compares the bound itself");
            }
            return threshold(self.evaluate_reward(*f.target, mode), f.cmp,
                             static_cast<double>(f.threshold));
        }

        StateSet threshold(const ValueVector& values, Comparator cmp, double bound) const {
            StateSet out(n);
            for (std::size_t s = 0; s < n; ++s) {
                if (compare(values[s], cmp, bound, self.options_.tolerance)) out.insert(s);
            }
            return out;
        }
    };
    return std::visit(Visitor{*this, n}, formula.node);
}

StateSet sat_set(const TransitionModel& model, const StateFormula& formula, CheckOptions options) {
    Checker checker(model, options);
    return checker.sat(formula);
}

}  // namespace iprctl
