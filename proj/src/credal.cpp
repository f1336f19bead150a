#include "iprctl/credal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iprctl/error.hpp"

namespace iprctl {

namespace {

void require_dimension(std::size_t expected, std::size_t actual, const char* what) {
    if (expected != actual) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::string(what) + " has " + std::to_string(actual) + " entries, expected " +
                        std::to_string(expected));
    }
}

double dot(std::span<const double> p, std::span<const double> f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0.0) acc += p[i] * f[i];
    }
    return acc;
}

}  // namespace

// StateSpace

StateSpace::StateSpace(std::vector<std::string> ids) : ids_(std::move(ids)) {
    if (ids_.empty()) throw Error(ErrorCode::InvalidArgument, "state space must be non-empty");
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (!index_.emplace(ids_[i], i).second) {
            throw Error(ErrorCode::InvalidArgument, "duplicate state identifier '" + ids_[i] + "'");
        }
    }
}

const std::string& StateSpace::id(std::size_t index) const {
    if (index >= ids_.size()) {
        throw Error(ErrorCode::UnknownState, "state index " + std::to_string(index) + " out of range");
    }
    return ids_[index];
}

std::optional<std::size_t> StateSpace::find(std::string_view id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t StateSpace::index(std::string_view id) const {
    if (auto found = find(id)) return *found;
    throw Error(ErrorCode::UnknownState, "unknown state '" + std::string(id) + "'");
}

// StateSet

StateSet::StateSet(std::size_t dimension, std::initializer_list<std::size_t> members)
    : mask_(dimension, false) {
    for (auto m : members) insert(m);
}

StateSet StateSet::from_ids(const StateSpace& space, const std::vector<std::string>& ids) {
    StateSet set(space.size());
    for (const auto& id : ids) set.insert(space.index(id));
    return set;
}

std::size_t StateSet::count() const {
    return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true));
}

std::vector<std::size_t> StateSet::members() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i]) out.push_back(i);
    }
    return out;
}

StateSet StateSet::complement() const {
    StateSet out(dimension());
    for (std::size_t i = 0; i < mask_.size(); ++i) out.mask_[i] = !mask_[i];
    return out;
}

StateSet StateSet::intersect(const StateSet& other) const {
    require_dimension(dimension(), other.dimension(), "state set");
    StateSet out(dimension());
    for (std::size_t i = 0; i < mask_.size(); ++i) out.mask_[i] = mask_[i] && other.mask_[i];
    return out;
}

StateSet StateSet::unite(const StateSet& other) const {
    require_dimension(dimension(), other.dimension(), "state set");
    StateSet out(dimension());
    for (std::size_t i = 0; i < mask_.size(); ++i) out.mask_[i] = mask_[i] || other.mask_[i];
    return out;
}

StateSet StateSet::minus(const StateSet& other) const { return intersect(other.complement()); }

ValueVector StateSet::indicator() const {
    ValueVector out(mask_.size(), 0.0);
    for (std::size_t i = 0; i < mask_.size(); ++i) {
        if (mask_[i]) out[i] = 1.0;
    }
    return out;
}

// Pmf

Pmf Pmf::make(std::vector<double> weights, double tolerance) {
    if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "PMF over an empty state space");
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
            throw Error(ErrorCode::NegativeWeight,
                        "weight " + std::to_string(i) + " is " + std::to_string(weights[i]));
        }
        total += weights[i];
    }
    if (std::abs(total - 1.0) > tolerance) {
        throw Error(ErrorCode::NotNormalized, "weights sum to " + std::to_string(total));
    }
    return Pmf(std::move(weights));
}

Pmf Pmf::point(std::size_t dimension, std::size_t state) {
    if (state >= dimension) {
        throw Error(ErrorCode::IndexOutOfRange, "point mass outside the state space");
    }
    std::vector<double> w(dimension, 0.0);
    w[state] = 1.0;
    return Pmf(std::move(w));
}

double Pmf::expectation(std::span<const double> f) const {
    require_dimension(size(), f.size(), "function");
    return dot(weights_, f);
}

// CredalSet

CredalSet CredalSet::from_vertices(Vertices vertices) {
    if (vertices.empty()) {
        throw Error(ErrorCode::IncoherentCredalSet, "vertex list must be non-empty");
    }
    for (const auto& v : vertices) require_dimension(vertices.front().size(), v.size(), "vertex");
    return CredalSet(std::move(vertices));
}

CredalSet CredalSet::from_intervals(Intervals intervals) {
    if (intervals.empty()) {
        throw Error(ErrorCode::IncoherentCredalSet, "interval list must be non-empty");
    }
    double lower_sum = 0.0;
    double upper_sum = 0.0;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto [lo, hi] = intervals[i];
        if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) {
            throw Error(ErrorCode::IncoherentCredalSet,
                        "interval " + std::to_string(i) + " is [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
        }
        lower_sum += lo;
        upper_sum += hi;
    }
    if (lower_sum > 1.0 + kNormalizationTolerance || upper_sum < 1.0 - kNormalizationTolerance) {
        throw Error(ErrorCode::IncoherentCredalSet,
                    "interval bounds sum to [" + std::to_string(lower_sum) + ", " +
                        std::to_string(upper_sum) + "], which does not bracket 1");
    }
    return CredalSet(std::move(intervals));
}

CredalSet CredalSet::point(Pmf pmf) { return CredalSet(Vertices{std::move(pmf)}); }

std::size_t CredalSet::dimension() const noexcept {
    if (has_vertices()) return vertices().front().size();
    return intervals().size();
}

bool CredalSet::is_singleton() const {
    if (has_vertices()) {
        const auto& vs = vertices();
        return std::all_of(vs.begin(), vs.end(), [&](const Pmf& v) { return v == vs.front(); });
    }
    const auto& iv = intervals();
    return std::all_of(iv.begin(), iv.end(),
                       [](const ProbabilityInterval& i) { return i.lower == i.upper; });
}

std::optional<Pmf> CredalSet::as_point() const {
    if (!is_singleton()) return std::nullopt;
    if (has_vertices()) return vertices().front();
    std::vector<double> w;
    w.reserve(intervals().size());
    for (const auto& i : intervals()) w.push_back(i.lower);
    return Pmf::make(std::move(w));
}

double CredalSet::upper_expectation(std::span<const double> f) const {
    require_dimension(dimension(), f.size(), "function");
    if (has_vertices()) {
        const auto& vs = vertices();
        double best = vs.front().expectation(f);
        for (std::size_t i = 1; i < vs.size(); ++i) best = std::max(best, vs[i].expectation(f));
        return best;
    }
    return upper_allocation(intervals(), f).expectation(f);
}

double CredalSet::lower_expectation(std::span<const double> f) const {
    require_dimension(dimension(), f.size(), "function");
    std::vector<double> negated(f.begin(), f.end());
    for (auto& x : negated) x = -x;
    // Subtracting from +0 keeps a zero result from printing as -0.
    return 0.0 - upper_expectation(negated);
}

CredalSet::Vertices CredalSet::extreme_points(std::size_t max_states) const {
    if (has_vertices()) return vertices();
    return vertices_from_intervals(intervals(), max_states);
}

CredalSet linear_vacuous(const Pmf& center, double eps, const StateSet& support) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw Error(ErrorCode::EpsOutOfRange, "eps = " + std::to_string(eps) + " outside [0, 1]");
    }
    require_dimension(center.size(), support.dimension(), "support");
    if (support.empty()) throw Error(ErrorCode::InvalidArgument, "empty contamination support");
    CredalSet::Intervals intervals(center.size());
    for (std::size_t s = 0; s < center.size(); ++s) {
        if (!support.contains(s)) {
            if (center[s] > 0.0) {
                throw Error(ErrorCode::InvalidArgument,
                            "center puts mass on state " + std::to_string(s) + " outside the support");
            }
            continue;
        }
        const double base = (1.0 - eps) * center[s];
        intervals[s] = {base, base + eps};
    }
    return CredalSet::from_intervals(std::move(intervals));
}

Pmf upper_allocation(std::span<const ProbabilityInterval> intervals, std::span<const double> f) {
    require_dimension(intervals.size(), f.size(), "function");
    std::vector<std::size_t> order(intervals.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return f[a] > f[b]; });

    std::vector<double> p(intervals.size());
    double remaining = 1.0;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        p[i] = intervals[i].lower;
        remaining -= intervals[i].lower;
    }
    for (std::size_t s : order) {
        if (remaining <= 0.0) break;
        const double extra = std::min(intervals[s].upper - intervals[s].lower, remaining);
        p[s] += extra;
        remaining -= extra;
    }
    return Pmf::make(std::move(p));
}

std::vector<Pmf> vertices_from_intervals(std::span<const ProbabilityInterval> intervals,
                                         std::size_t max_states) {
    const std::size_t n = intervals.size();
    if (n > max_states) {
        throw Error(ErrorCode::StateSpaceTooLarge,
                    std::to_string(n) + " states exceed the vertex enumeration cap of " +
                        std::to_string(max_states));
    }
    // Validates coherence.
    (void)CredalSet::from_intervals(CredalSet::Intervals(intervals.begin(), intervals.end()));

    constexpr double kFeasibility = 1e-12;
    std::vector<Pmf> out;
    auto is_duplicate = [&](const std::vector<double>& p) {
        return std::any_of(out.begin(), out.end(), [&](const Pmf& v) {
            for (std::size_t i = 0; i < n; ++i) {
                if (std::abs(v[i] - p[i]) > kFeasibility) return false;
            }
            return true;
        });
    };

    std::vector<double> p(n);
    for (std::size_t free = 0; free < n; ++free) {
        const std::size_t patterns = std::size_t{1} << (n - 1);
        for (std::size_t mask = 0; mask < patterns; ++mask) {
            double others = 0.0;
            std::size_t bit = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == free) continue;
                p[i] = (mask >> bit++) & 1U ? intervals[i].upper : intervals[i].lower;
                others += p[i];
            }
            const double residual = 1.0 - others;
            if (residual < intervals[free].lower - kFeasibility ||
                residual > intervals[free].upper + kFeasibility) {
                continue;
            }
            p[free] = std::clamp(residual, intervals[free].lower, intervals[free].upper);
            if (!is_duplicate(p)) out.push_back(Pmf::make(p));
        }
    }
    return out;
}

}  // namespace iprctl
