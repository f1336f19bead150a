#pragma once

// Finite-state probability primitives: state spaces, PMFs and credal sets
// together with their lower/upper expectation operators.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace iprctl {

/// Tolerance used when checking that weights sum to one.
inline constexpr double kNormalizationTolerance = 1e-9;

/// Default cap on the number of states for interval vertex enumeration.
inline constexpr std::size_t kDefaultVertexStateCap = 12;

/// Real-valued map over the states of a model, indexed by state position.
using ValueVector = std::vector<double>;

class StateSpace {
public:
    explicit StateSpace(std::vector<std::string> ids);

    std::size_t size() const noexcept { return ids_.size(); }
    const std::string& id(std::size_t index) const;
    const std::vector<std::string>& ids() const noexcept { return ids_; }

    std::optional<std::size_t> find(std::string_view id) const;
    /// Throws UnknownState when the identifier is not declared.
    std::size_t index(std::string_view id) const;

    bool operator==(const StateSpace& other) const { return ids_ == other.ids_; }

private:
    std::vector<std::string> ids_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Subset of a state space stored as a membership mask.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t dimension, bool filled = false) : mask_(dimension, filled) {}
    StateSet(std::size_t dimension, std::initializer_list<std::size_t> members);

    static StateSet all(std::size_t dimension) { return StateSet(dimension, true); }
    static StateSet none(std::size_t dimension) { return StateSet(dimension, false); }
    static StateSet from_ids(const StateSpace& space, const std::vector<std::string>& ids);

    std::size_t dimension() const noexcept { return mask_.size(); }
    bool contains(std::size_t state) const { return mask_.at(state); }
    void insert(std::size_t state) { mask_.at(state) = true; }
    void erase(std::size_t state) { mask_.at(state) = false; }
    std::size_t count() const;
    bool empty() const { return count() == 0; }
    std::vector<std::size_t> members() const;

    StateSet complement() const;
    StateSet intersect(const StateSet& other) const;
    StateSet unite(const StateSet& other) const;
    StateSet minus(const StateSet& other) const;

    /// 1 on members, 0 elsewhere.
    ValueVector indicator() const;

    bool operator==(const StateSet& other) const = default;

private:
    std::vector<bool> mask_;
};

/// Normalized non-negative weight vector.
class Pmf {
public:
    /// Validates entries are non-negative and sum to one within `tolerance`.
    static Pmf make(std::vector<double> weights, double tolerance = kNormalizationTolerance);
    /// Degenerate distribution putting all mass on `state`.
    static Pmf point(std::size_t dimension, std::size_t state);

    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }
    std::span<const double> weights() const noexcept { return weights_; }

    double expectation(std::span<const double> f) const;

    bool operator==(const Pmf& other) const = default;

private:
    explicit Pmf(std::vector<double> weights) : weights_(std::move(weights)) {}

    std::vector<double> weights_;
};

struct ProbabilityInterval {
    double lower = 0.0;
    double upper = 0.0;

    bool operator==(const ProbabilityInterval&) const = default;
};

/// Closed convex set of PMFs given either by its extreme points or by
/// per-state probability intervals. Immutable once built.
class CredalSet {
public:
    using Vertices = std::vector<Pmf>;
    using Intervals = std::vector<ProbabilityInterval>;

    static CredalSet from_vertices(Vertices vertices);
    /// Throws IncoherentCredalSet unless 0 <= l <= u <= 1 and sum(l) <= 1 <= sum(u).
    static CredalSet from_intervals(Intervals intervals);
    static CredalSet point(Pmf pmf);

    std::size_t dimension() const noexcept;
    bool has_vertices() const noexcept { return std::holds_alternative<Vertices>(rep_); }
    bool has_intervals() const noexcept { return std::holds_alternative<Intervals>(rep_); }
    const Vertices& vertices() const { return std::get<Vertices>(rep_); }
    const Intervals& intervals() const { return std::get<Intervals>(rep_); }

    /// True when the set contains exactly one PMF.
    bool is_singleton() const;
    /// The unique member of a singleton set, nullopt otherwise.
    std::optional<Pmf> as_point() const;

    double upper_expectation(std::span<const double> f) const;
    double lower_expectation(std::span<const double> f) const;

    /// Extreme points, enumerating intervals when needed.
    Vertices extreme_points(std::size_t max_states = kDefaultVertexStateCap) const;

    bool operator==(const CredalSet& other) const = default;

private:
    explicit CredalSet(std::variant<Vertices, Intervals> rep) : rep_(std::move(rep)) {}

    std::variant<Vertices, Intervals> rep_;
};

/// Linear-vacuous mixture (epsilon-contamination) of `center` restricted to
/// `support`: lower (1-eps)c(s), upper (1-eps)c(s)+eps on the support, [0,0] off it.
CredalSet linear_vacuous(const Pmf& center, double eps, const StateSet& support);

/// Greedy maximizer of E_P[f] over a coherent interval set.
Pmf upper_allocation(std::span<const ProbabilityInterval> intervals, std::span<const double> f);

/// All extreme points of a coherent interval credal set. Each vertex sits on a
/// bound in every coordinate but at most one.
std::vector<Pmf> vertices_from_intervals(std::span<const ProbabilityInterval> intervals,
                                         std::size_t max_states = kDefaultVertexStateCap);

}  // namespace iprctl
