#include "iprctl/formula.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

#include "iprctl/error.hpp"

namespace iprctl {

std::string_view to_string(Comparator cmp) {
    switch (cmp) {
        case Comparator::Less: return "<";
        case Comparator::LessEqual: return "<=";
        case Comparator::Equal: return "=";
        case Comparator::GreaterEqual: return ">=";
        case Comparator::Greater: return ">";
    }
    return "=";
}

StatePtr make_true() { return std::make_shared<const StateFormula>(StateFormula{state::True{}}); }

StatePtr make_atom(std::string name) {
    return std::make_shared<const StateFormula>(StateFormula{state::Atom{std::move(name)}});
}

StatePtr make_not(StatePtr operand) {
    return std::make_shared<const StateFormula>(StateFormula{state::Not{std::move(operand)}});
}

StatePtr make_and(StatePtr lhs, StatePtr rhs) {
    return std::make_shared<const StateFormula>(StateFormula{state::And{std::move(lhs), std::move(rhs)}});
}

StatePtr make_prob(BoundKind kind, Comparator cmp, double threshold, PathFormula path) {
    return std::make_shared<const StateFormula>(
        StateFormula{state::Prob{kind, cmp, threshold, std::move(path)}});
}

StatePtr make_exp_reward(BoundKind kind, Comparator cmp, std::uint64_t threshold, StatePtr target) {
    return std::make_shared<const StateFormula>(
        StateFormula{state::ExpReward{kind, cmp, threshold, std::move(target)}});
}

// Equality

namespace {

bool same(const StatePtr& a, const StatePtr& b) {
    if (!a || !b) return a == b;
    return equal(*a, *b);
}

struct PathEqual {
    bool operator()(const path::Next& a, const path::Next& b) const { return same(a.target, b.target); }
    bool operator()(const path::Until& a, const path::Until& b) const {
        return same(a.stay, b.stay) && same(a.goal, b.goal);
    }
    bool operator()(const path::BoundedUntil& a, const path::BoundedUntil& b) const {
        return a.steps == b.steps && same(a.stay, b.stay) && same(a.goal, b.goal);
    }
    bool operator()(const path::BoundedReward& a, const path::BoundedReward& b) const {
        return a.budget == b.budget && same(a.stay, b.stay) && same(a.goal, b.goal);
    }
    template <typename A, typename B>
    bool operator()(const A&, const B&) const {
        return false;
    }
};

struct StateEqual {
    bool operator()(const state::True&, const state::True&) const { return true; }
    bool operator()(const state::Atom& a, const state::Atom& b) const { return a.name == b.name; }
    bool operator()(const state::Not& a, const state::Not& b) const { return same(a.operand, b.operand); }
    bool operator()(const state::And& a, const state::And& b) const {
        return same(a.lhs, b.lhs) && same(a.rhs, b.rhs);
    }
    bool operator()(const state::Prob& a, const state::Prob& b) const {
        return a.kind == b.kind && a.cmp == b.cmp && a.threshold == b.threshold && equal(a.path, b.path);
    }
    bool operator()(const state::ExpReward& a, const state::ExpReward& b) const {
        return a.kind == b.kind && a.cmp == b.cmp && a.threshold == b.threshold &&
               same(a.target, b.target);
    }
    template <typename A, typename B>
    bool operator()(const A&, const B&) const {
        return false;
    }
};

}  // namespace

bool equal(const StateFormula& a, const StateFormula& b) { return std::visit(StateEqual{}, a.node, b.node); }

bool equal(const PathFormula& a, const PathFormula& b) { return std::visit(PathEqual{}, a, b); }

// Parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    StatePtr parse() {
        auto result = state_formula();
        skip_space();
        if (pos_ != text_.size()) fail({"'&'", "end of input"});
        return result;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw SyntaxError(pos_, std::move(expected), current_lexeme());
    }

    std::string current_lexeme() const {
        if (pos_ >= text_.size()) return {};
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) return std::string(peek_word());
        return std::string(1, c);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at(char c) {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(std::string_view symbol) {
        skip_space();
        if (text_.substr(pos_, symbol.size()) == symbol) {
            pos_ += symbol.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view symbol) {
        if (!accept(symbol)) fail({"'" + std::string(symbol) + "'"});
    }

    std::string_view peek_word() const {
        std::size_t end = pos_;
        while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
        return text_.substr(pos_, end - pos_);
    }

    std::string_view take_word() {
        skip_space();
        auto word = peek_word();
        pos_ += word.size();
        return word;
    }

    StatePtr state_formula() {
        auto lhs = unary();
        while (accept("&")) lhs = make_and(std::move(lhs), unary());
        return lhs;
    }

    StatePtr unary() {
        if (accept("!")) return make_not(unary());
        return primary();
    }

    StatePtr primary() {
        static const std::vector<std::string> kStateStart = {
            "'true'", "'\"'", "'!'", "'('", "'P'", "'LP'", "'UP'", "'E'", "'LE'", "'UE'"};
        skip_space();
        if (accept("(")) {
            auto inner = state_formula();
            expect(")");
            return inner;
        }
        if (at('"')) return atom();

        const std::size_t start = pos_;
        const auto word = take_word();
        if (word == "true") return make_true();
        if (word == "P" || word == "LP" || word == "UP") {
            const BoundKind kind = bound_kind(word);
            const Comparator cmp = comparator();
            const double threshold = probability();
            expect("[");
            auto p = path_formula();
            expect("]");
            return make_prob(kind, cmp, threshold, std::move(p));
        }
        if (word == "E" || word == "LE" || word == "UE") {
            const BoundKind kind = bound_kind(word);
            const Comparator cmp = comparator();
            const std::uint64_t threshold = natural("natural number");
            expect("[");
            auto target = state_formula();
            expect("]");
            return make_exp_reward(kind, cmp, threshold, std::move(target));
        }
        pos_ = start;
        fail(kStateStart);
    }

    static BoundKind bound_kind(std::string_view word) {
        if (word.front() == 'L') return BoundKind::Lower;
        if (word.front() == 'U') return BoundKind::Upper;
        return BoundKind::Precise;
    }

    StatePtr atom() {
        expect("\"");
        const std::size_t close = text_.find('"', pos_);
        if (close == std::string_view::npos) {
            pos_ = text_.size();
            fail({"closing '\"'"});
        }
        if (close == pos_) fail({"atom name"});
        auto name = std::string(text_.substr(pos_, close - pos_));
        pos_ = close + 1;
        return make_atom(std::move(name));
    }

    Comparator comparator() {
        if (accept("<=")) return Comparator::LessEqual;
        if (accept(">=")) return Comparator::GreaterEqual;
        if (accept("<")) return Comparator::Less;
        if (accept(">")) return Comparator::Greater;
        if (accept("=")) return Comparator::Equal;
        fail({"'<'", "'<='", "'='", "'>='", "'>'"});
    }

    double probability() {
        skip_space();
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
                text_[end] == 'e' || text_[end] == 'E' ||
                ((text_[end] == '-' || text_[end] == '+') && end > start &&
                 (text_[end - 1] == 'e' || text_[end - 1] == 'E')))) {
            ++end;
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, value);
        if (ec != std::errc{} || ptr != text_.data() + end || end == start) fail({"number"});
        if (!(value >= 0.0 && value <= 1.0)) fail({"probability threshold in [0, 1]"});
        pos_ = end;
        return value;
    }

    std::uint64_t natural(const char* what) {
        skip_space();
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + end, value);
        if (ec != std::errc{} || end == start) fail({what});
        pos_ = end;
        return value;
    }

    PathFormula path_formula() {
        skip_space();
        if (peek_word() == "X") {
            take_word();
            return path::Next{state_formula()};
        }
        auto stay = state_formula();
        skip_space();
        const std::size_t start = pos_;
        const auto word = take_word();
        if (word == "U") {
            if (accept("<=")) {
                const auto steps = natural("step bound");
                return path::BoundedUntil{std::move(stay), state_formula(), steps};
            }
            return path::Until{std::move(stay), state_formula()};
        }
        if (word == "UR") {
            expect("<=");
            const auto budget = natural("reward bound");
            return path::BoundedReward{std::move(stay), state_formula(), budget};
        }
        pos_ = start;
        fail({"'U'", "'U<='", "'UR<='"});
    }
};

std::string format_number(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

std::string prefix(BoundKind kind, char op) {
    switch (kind) {
        case BoundKind::Lower: return std::string("L") + op;
        case BoundKind::Upper: return std::string("U") + op;
        case BoundKind::Precise: break;
    }
    return std::string(1, op);
}

}  // namespace

StatePtr parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string to_text(const PathFormula& formula) {
    struct Printer {
        std::string operator()(const path::Next& p) const { return "X " + to_text(*p.target); }
        std::string operator()(const path::Until& p) const {
            return to_text(*p.stay) + " U " + to_text(*p.goal);
        }
        std::string operator()(const path::BoundedUntil& p) const {
            return to_text(*p.stay) + " U<=" + std::to_string(p.steps) + " " + to_text(*p.goal);
        }
        std::string operator()(const path::BoundedReward& p) const {
            return to_text(*p.stay) + " UR<=" + std::to_string(p.budget) + " " + to_text(*p.goal);
        }
    };
    return std::visit(Printer{}, formula);
}

std::string to_text(const StateFormula& formula) {
    struct Printer {
        std::string operator()(const state::True&) const { return "true"; }
        std::string operator()(const state::Atom& a) const { return "\"" + a.name + "\""; }
        std::string operator()(const state::Not& n) const { return "!" + to_text(*n.operand); }
        std::string operator()(const state::And& a) const {
            return "(" + to_text(*a.lhs) + " & " + to_text(*a.rhs) + ")";
        }
        std::string operator()(const state::Prob& p) const {
            return prefix(p.kind, 'P') + std::string(to_string(p.cmp)) + format_number(p.threshold) +
                   " [ " + to_text(p.path) + " ]";
        }
        std::string operator()(const state::ExpReward& e) const {
            return prefix(e.kind, 'E') + std::string(to_string(e.cmp)) + std::to_string(e.threshold) +
                   " [ " + to_text(*e.target) + " ]";
        }
    };
    return std::visit(Printer{}, formula.node);
}

}  // namespace iprctl
