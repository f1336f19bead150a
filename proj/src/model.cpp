#include "iprctl/model.hpp"

#include <algorithm>

#include "iprctl/error.hpp"

namespace iprctl {

std::string_view to_string(Mode mode) {
    switch (mode) {
        case Mode::Precise: return "precise";
        case Mode::Lower: return "lower";
        case Mode::Upper: return "upper";
    }
    return "precise";
}

Mode parse_mode(std::string_view text) {
    if (text == "precise") return Mode::Precise;
    if (text == "lower") return Mode::Lower;
    if (text == "upper") return Mode::Upper;
    throw Error(ErrorCode::InvalidArgument, "unknown mode '" + std::string(text) + "'");
}

TransitionModel::TransitionModel(Parts parts) : parts_(std::move(parts)) {
    const std::size_t n = parts_.space.size();
    if (parts_.rows.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "expected one transition row per state");
    }
    for (std::size_t s = 0; s < n; ++s) {
        if (parts_.rows[s].dimension() != n) {
            throw Error(ErrorCode::DimensionMismatch,
                        "row of state '" + parts_.space.id(s) + "' has wrong dimension");
        }
    }
    if (parts_.labels.empty()) parts_.labels.resize(n);
    if (parts_.labels.size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "expected one label set per state");
    }
    std::set<std::string> declared(parts_.atoms.begin(), parts_.atoms.end());
    if (declared.size() != parts_.atoms.size()) {
        throw Error(ErrorCode::InvalidArgument, "duplicate atomic proposition");
    }
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& label : parts_.labels[s]) {
            if (!declared.contains(label)) {
                throw Error(ErrorCode::UnknownAtom, "state '" + parts_.space.id(s) +
                                                        "' is labelled with undeclared atom '" +
                                                        label + "'");
            }
        }
    }
    if (parts_.rewards && parts_.rewards->size() != n) {
        throw Error(ErrorCode::DimensionMismatch, "expected one reward per state");
    }
    if (parts_.initial) {
        if (const auto* state = std::get_if<std::size_t>(&*parts_.initial); state && *state >= n) {
            throw Error(ErrorCode::UnknownState, "initial state index out of range");
        }
        if (const auto* cs = std::get_if<CredalSet>(&*parts_.initial); cs && cs->dimension() != n) {
            throw Error(ErrorCode::DimensionMismatch, "initial distribution has wrong dimension");
        }
    }
}

bool TransitionModel::has_atom(std::string_view atom) const {
    return std::find(parts_.atoms.begin(), parts_.atoms.end(), atom) != parts_.atoms.end();
}

const std::vector<Reward>& TransitionModel::rewards() const {
    if (!parts_.rewards) throw Error(ErrorCode::MissingRewards, "model has no reward function");
    return *parts_.rewards;
}

std::size_t TransitionModel::initial_state() const {
    if (parts_.initial) {
        if (const auto* state = std::get_if<std::size_t>(&*parts_.initial)) return *state;
    }
    return 0;
}

bool TransitionModel::is_precise() const {
    return std::all_of(parts_.rows.begin(), parts_.rows.end(),
                       [](const CredalSet& row) { return row.is_singleton(); });
}

StateSet TransitionModel::states_with(std::string_view atom) const {
    if (!has_atom(atom)) {
        throw Error(ErrorCode::UnknownAtom, "undeclared atom '" + std::string(atom) + "'");
    }
    StateSet out(size());
    for (std::size_t s = 0; s < size(); ++s) {
        if (parts_.labels[s].contains(std::string(atom))) out.insert(s);
    }
    return out;
}

TransitionModel TransitionModel::with_rewards(std::vector<Reward> rewards) const {
    Parts copy = parts_;
    copy.rewards = std::move(rewards);
    return TransitionModel(std::move(copy));
}

TransitionModel TransitionModel::with_rows(std::vector<CredalSet> rows) const {
    Parts copy = parts_;
    copy.rows = std::move(rows);
    return TransitionModel(std::move(copy));
}

TransitionModel TransitionModel::with_horizon(std::size_t horizon) const {
    Parts copy = parts_;
    copy.horizon = horizon;
    return TransitionModel(std::move(copy));
}

TransitionModel make_precise_chain(const std::vector<std::vector<double>>& matrix) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < matrix.size(); ++i) ids.push_back("s" + std::to_string(i));
    std::vector<CredalSet> rows;
    std::vector<std::set<std::string>> labels;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        rows.push_back(CredalSet::point(Pmf::make(matrix[i])));
        labels.push_back({ids[i]});
    }
    return TransitionModel({StateSpace(ids), std::move(rows), ids, std::move(labels), std::nullopt,
                            std::nullopt, std::nullopt});
}

}  // namespace iprctl
