#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "iprctl/credal.hpp"

namespace iprctl {

using Reward = std::uint64_t;

/// Which transition operator a query uses.
enum class Mode { Precise, Lower, Upper };

std::string_view to_string(Mode mode);
/// Accepts "precise", "lower" or "upper".
Mode parse_mode(std::string_view text);

/// Initial state or initial distribution / credal set over states.
using InitialSpec = std::variant<std::size_t, CredalSet>;

/// Labelled (imprecise) Markov reward model. A row whose credal set is a
/// singleton is a precise row; a model whose rows are all singletons is a
/// precise Markov chain.
class TransitionModel {
public:
    struct Parts {
        StateSpace space;
        std::vector<CredalSet> rows;
        std::vector<std::string> atoms;
        std::vector<std::set<std::string>> labels;
        std::optional<std::vector<Reward>> rewards;
        std::optional<InitialSpec> initial;
        std::optional<std::size_t> horizon;
    };

    explicit TransitionModel(Parts parts);

    const StateSpace& space() const noexcept { return parts_.space; }
    std::size_t size() const noexcept { return parts_.space.size(); }
    const CredalSet& row(std::size_t state) const { return parts_.rows.at(state); }
    const std::vector<CredalSet>& rows() const noexcept { return parts_.rows; }
    const std::vector<std::string>& atoms() const noexcept { return parts_.atoms; }
    const std::set<std::string>& labels(std::size_t state) const { return parts_.labels.at(state); }
    bool has_atom(std::string_view atom) const;

    bool has_rewards() const noexcept { return parts_.rewards.has_value(); }
    /// Throws MissingRewards when the model has no reward function.
    const std::vector<Reward>& rewards() const;

    const std::optional<InitialSpec>& initial() const noexcept { return parts_.initial; }
    /// Initial state when given as a single state; first state otherwise.
    std::size_t initial_state() const;
    const std::optional<std::size_t>& horizon() const noexcept { return parts_.horizon; }

    /// True when every row is a singleton credal set.
    bool is_precise() const;

    /// States labelled with `atom`. Throws UnknownAtom for undeclared atoms.
    StateSet states_with(std::string_view atom) const;

    TransitionModel with_rewards(std::vector<Reward> rewards) const;
    TransitionModel with_rows(std::vector<CredalSet> rows) const;
    TransitionModel with_horizon(std::size_t horizon) const;

    const Parts& parts() const noexcept { return parts_; }

private:
    Parts parts_;
};

/// Builds an unlabelled precise model with states named s0, s1, ... and one
/// atom per state (same name). Handy for tests and small examples.
TransitionModel make_precise_chain(const std::vector<std::vector<double>>& matrix);

}  // namespace iprctl
