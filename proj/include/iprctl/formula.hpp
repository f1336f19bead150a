#pragma once

// Abstract syntax of (imprecise) probabilistic reward CTL and its textual form.
//
//   state  := "true" | '"' name '"' | "!" state | state "&" state | "(" state ")"
//           | probop cmp number "[" path "]" | expop cmp number "[" state "]"
//   probop := "P" | "LP" | "UP"        expop := "E" | "LE" | "UE"
//   cmp    := "<" | "<=" | "=" | ">=" | ">"
//   path   := "X" state | state "U" state | state "U<=" int state | state "UR<=" int state
//
// "&" is left-associative and "!" binds tightest.

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace iprctl {

enum class BoundKind { Precise, Lower, Upper };
enum class Comparator { Less, LessEqual, Equal, GreaterEqual, Greater };

std::string_view to_string(Comparator cmp);

struct StateFormula;
using StatePtr = std::shared_ptr<const StateFormula>;

namespace path {

struct Next {
    StatePtr target;
};
struct Until {
    StatePtr stay;
    StatePtr goal;
};
struct BoundedUntil {
    StatePtr stay;
    StatePtr goal;
    std::uint64_t steps;
};
struct BoundedReward {
    StatePtr stay;
    StatePtr goal;
    std::uint64_t budget;
};

}  // namespace path

using PathFormula = std::variant<path::Next, path::Until, path::BoundedUntil, path::BoundedReward>;

namespace state {

struct True {};
struct Atom {
    std::string name;
};
struct Not {
    StatePtr operand;
};
struct And {
    StatePtr lhs;
    StatePtr rhs;
};
struct Prob {
    BoundKind kind;
    Comparator cmp;
    double threshold;
    PathFormula path;
};
struct ExpReward {
    BoundKind kind;
    Comparator cmp;
    std::uint64_t threshold;
    StatePtr target;
};

}  // namespace state

struct StateFormula {
    std::variant<state::True, state::Atom, state::Not, state::And, state::Prob, state::ExpReward> node;
};

// Builders.
StatePtr make_true();
StatePtr make_atom(std::string name);
StatePtr make_not(StatePtr operand);
StatePtr make_and(StatePtr lhs, StatePtr rhs);
StatePtr make_prob(BoundKind kind, Comparator cmp, double threshold, PathFormula path);
StatePtr make_exp_reward(BoundKind kind, Comparator cmp, std::uint64_t threshold, StatePtr target);

/// Structural equality.
bool equal(const StateFormula& a, const StateFormula& b);
bool equal(const PathFormula& a, const PathFormula& b);

/// Parses a state formula. Throws SyntaxError with the failing offset.
StatePtr parse_formula(std::string_view text);

/// Canonical text form; parse_formula(to_text(f)) is structurally equal to f.
std::string to_text(const StateFormula& formula);
std::string to_text(const PathFormula& formula);

}  // namespace iprctl
