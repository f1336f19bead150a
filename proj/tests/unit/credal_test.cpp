#include <algorithm>
#include <random>

#include <doctest.h>

#include "iprctl/credal.hpp"
#include "iprctl/error.hpp"
#include "support/fixtures.hpp"
#include "support/matchers.hpp"

using namespace iprctl;
using iprctl::testing::check_error;

namespace {

// Independent enumeration: every coordinate but one sits on a bound, the
// free one takes the residual mass when it fits inside its own interval.
std::vector<std::vector<double>> reference_vertices(const CredalSet::Intervals& iv) {
    const std::size_t n = iv.size();
    std::vector<std::vector<double>> out;
    auto push_unique = [&](const std::vector<double>& v) {
        for (const auto& w : out) {
            bool same = true;
            for (std::size_t i = 0; i < n; ++i) same = same && std::fabs(v[i] - w[i]) <= 1e-12;
            if (same) return;
        }
        out.push_back(v);
    };
    for (std::size_t free = 0; free < n; ++free) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            if (mask & (std::size_t{1} << free)) continue;
            std::vector<double> v(n);
            double used = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == free) continue;
                v[i] = (mask & (std::size_t{1} << i)) ? iv[i].upper : iv[i].lower;
                used += v[i];
            }
            v[free] = 1.0 - used;
            if (v[free] >= iv[free].lower - 1e-12 && v[free] <= iv[free].upper + 1e-12) push_unique(v);
        }
    }
    return out;
}

CredalSet::Intervals random_intervals(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    // Intervals around a random PMF are coherent by construction.
    const auto p = iprctl::testing::random_pmf(rng, n);
    CredalSet::Intervals iv(n);
    for (std::size_t i = 0; i < n; ++i) {
        iv[i].lower = p[i] * unit(rng);
        iv[i].upper = std::min(1.0, p[i] + (1.0 - p[i]) * unit(rng) * 0.5);
    }
    return iv;
}

ValueVector random_f(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    ValueVector f(n);
    for (auto& x : f) x = dist(rng);
    return f;
}

}  // namespace

TEST_CASE("pmf construction") {
    CHECK(Pmf::make({1, 0, 0, 0})[0] == 1.0);
    const auto p = Pmf::make({0.9, 0.1});
    CHECK(p[1] == doctest::Approx(0.1));
    check_error(ErrorCode::NotNormalized, [] { Pmf::make({0.5, 0.6}); });
    check_error(ErrorCode::NegativeWeight, [] { Pmf::make({1.5, -0.5}); });
    CHECK_NOTHROW(Pmf::make({0.5, 0.5 + 5e-10}));
    CHECK(Pmf::point(3, 2).weights()[2] == 1.0);
}

TEST_CASE("state space and sets") {
    StateSpace space({"start", "delivered", "try", "lost"});
    CHECK(space.index("try") == 2);
    CHECK_FALSE(space.find("nope").has_value());
    check_error(ErrorCode::UnknownState, [&] { space.index("nope"); });
    const auto a = StateSet::from_ids(space, {"start", "lost"});
    CHECK(a.members() == std::vector<std::size_t>{0, 3});
    CHECK(a.complement().members() == std::vector<std::size_t>{1, 2});
    CHECK(a.intersect(StateSet(4, {3})).members() == std::vector<std::size_t>{3});
    CHECK(a.unite(StateSet(4, {1})).count() == 3);
    CHECK(a.minus(StateSet(4, {0})).members() == std::vector<std::size_t>{3});
    CHECK(a.indicator() == ValueVector{1, 0, 0, 1});
}

TEST_CASE("linear-vacuous contamination") {
    const auto center = Pmf::make({0.9, 0.1});
    const StateSet support = StateSet::all(2);

    SUBCASE("eps 0.01 gives [0.099, 0.109] on the minority state") {
        const auto cs = linear_vacuous(center, 0.01, support);
        REQUIRE(cs.has_intervals());
        CHECK(cs.intervals()[1].lower == doctest::Approx(0.099).epsilon(1e-12));
        CHECK(cs.intervals()[1].upper == doctest::Approx(0.109).epsilon(1e-12));
    }
    SUBCASE("eps 0.03 gives [0.097, 0.127]") {
        const auto cs = linear_vacuous(center, 0.03, support);
        CHECK(cs.intervals()[1].lower == doctest::Approx(0.097).epsilon(1e-12));
        CHECK(cs.intervals()[1].upper == doctest::Approx(0.127).epsilon(1e-12));
    }
    SUBCASE("eps 0 is the center alone") {
        const auto cs = linear_vacuous(center, 0.0, support);
        REQUIRE(cs.is_singleton());
        CHECK((*cs.as_point())[0] == doctest::Approx(0.9));
    }
    SUBCASE("states outside the support stay impossible") {
        const auto wide = Pmf::make({0.0, 0.9, 0.1});
        const auto cs = linear_vacuous(wide, 0.2, StateSet(3, {1, 2}));
        CHECK(cs.intervals()[0] == ProbabilityInterval{0.0, 0.0});
        CHECK(cs.upper_expectation(ValueVector{1, 0, 0}) == 0.0);
    }
    SUBCASE("eps outside [0,1] is rejected") {
        check_error(ErrorCode::EpsOutOfRange, [&] { linear_vacuous(center, -0.1, support); });
        check_error(ErrorCode::EpsOutOfRange, [&] { linear_vacuous(center, 1.5, support); });
    }
}

TEST_CASE("upper and lower expectations") {
    SUBCASE("contaminated row on the lost indicator") {
        const auto cs = CredalSet::from_intervals({{0.891, 0.901}, {0.099, 0.109}});
        const ValueVector f{0, 1};
        CHECK(cs.upper_expectation(f) == doctest::Approx(0.109).epsilon(1e-12));
        CHECK(cs.lower_expectation(f) == doctest::Approx(0.099).epsilon(1e-12));
    }
    SUBCASE("singleton reduces to the plain expectation") {
        const auto p = Pmf::make({0.2, 0.3, 0.5});
        const auto cs = CredalSet::point(p);
        const ValueVector f{3, -1, 2};
        CHECK(cs.upper_expectation(f) == doctest::Approx(p.expectation(f)));
        CHECK(cs.lower_expectation(f) == doctest::Approx(p.expectation(f)));
    }
    SUBCASE("two-state intervals with f = (1, 0)") {
        const auto cs = CredalSet::from_intervals({{0.3, 0.5}, {0.5, 0.7}});
        CHECK(cs.upper_expectation(ValueVector{1, 0}) == doctest::Approx(0.5));
        CHECK(cs.lower_expectation(ValueVector{1, 0}) == doctest::Approx(0.3));
    }
    SUBCASE("vertex sets take the best vertex") {
        const auto cs = CredalSet::from_vertices({Pmf::make({1, 0}), Pmf::make({0.25, 0.75})});
        CHECK(cs.upper_expectation(ValueVector{0, 4}) == doctest::Approx(3.0));
        CHECK(cs.lower_expectation(ValueVector{0, 4}) == doctest::Approx(0.0));
    }
    SUBCASE("incoherent intervals are rejected") {
        check_error(ErrorCode::IncoherentCredalSet, [] { CredalSet::from_intervals({{0.6, 0.7}, {0.6, 0.7}}); });
        check_error(ErrorCode::IncoherentCredalSet, [] { CredalSet::from_intervals({{0.1, 0.2}, {0.1, 0.2}}); });
        check_error(ErrorCode::IncoherentCredalSet, [] { CredalSet::from_intervals({{0.5, 0.4}, {0.5, 0.6}}); });
    }
    SUBCASE("dimension mismatch") {
        const auto cs = CredalSet::from_intervals({{0.3, 0.5}, {0.5, 0.7}});
        check_error(ErrorCode::DimensionMismatch, [&] { cs.upper_expectation(ValueVector{1, 0, 0}); });
    }
}

TEST_CASE("vertex enumeration of intervals") {
    SUBCASE("two states give the two boundary points") {
        const auto vs = vertices_from_intervals(std::vector<ProbabilityInterval>{{0.099, 0.109}, {0.891, 0.901}});
        REQUIRE(vs.size() == 2);
        std::vector<double> firsts{vs[0][0], vs[1][0]};
        std::sort(firsts.begin(), firsts.end());
        CHECK(firsts[0] == doctest::Approx(0.099));
        CHECK(firsts[1] == doctest::Approx(0.109));
    }
    SUBCASE("point intervals have one vertex") {
        const auto vs = vertices_from_intervals(std::vector<ProbabilityInterval>{{0.25, 0.25}, {0.75, 0.75}});
        CHECK(vs.size() == 1);
    }
    SUBCASE("[0.2, 0.5] cubed has the six permutations of (0.5, 0.3, 0.2)") {
        const auto vs = vertices_from_intervals(std::vector<ProbabilityInterval>(3, {0.2, 0.5}));
        REQUIRE(vs.size() == 6);
        for (const auto& v : vs) {
            std::vector<double> w(v.weights().begin(), v.weights().end());
            std::sort(w.begin(), w.end());
            CHECK(w[0] == doctest::Approx(0.2));
            CHECK(w[1] == doctest::Approx(0.3));
            CHECK(w[2] == doctest::Approx(0.5));
        }
    }
    SUBCASE("state cap") {
        const std::vector<ProbabilityInterval> wide(13, {0.0, 1.0});
        check_error(ErrorCode::StateSpaceTooLarge, [&] { vertices_from_intervals(wide); });
        CHECK(vertices_from_intervals(wide, 13).size() == 13);
    }
}

TEST_CASE("expectation properties on random interval and vertex sets") {
    std::mt19937_64 rng(20261015);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const auto iv = random_intervals(rng, n);
        const auto cs = CredalSet::from_intervals(iv);
        const auto f = random_f(rng, n);
        const double upper = cs.upper_expectation(f);
        const double lower = cs.lower_expectation(f);
        CHECK(lower <= upper + 1e-12);

        // Greedy allocation agrees with the best enumerated vertex.
        double best = -1e300;
        for (const auto& v : reference_vertices(iv)) {
            double e = 0.0;
            for (std::size_t i = 0; i < n; ++i) e += v[i] * f[i];
            best = std::max(best, e);
        }
        CHECK(upper == doctest::Approx(best).epsilon(1e-10));
        CHECK(reference_vertices(iv).size() == vertices_from_intervals(iv).size());

        ValueVector shifted = f;
        for (auto& x : shifted) x += 2.5;
        CHECK(cs.upper_expectation(shifted) == doctest::Approx(upper + 2.5).epsilon(1e-12));
        ValueVector scaled = f;
        for (auto& x : scaled) x *= 3.0;
        CHECK(cs.upper_expectation(scaled) == doctest::Approx(3.0 * upper).epsilon(1e-12));

        const auto center = Pmf::make(iprctl::testing::random_pmf(rng, n));
        const auto vacuous = linear_vacuous(center, 1.0, StateSet::all(n));
        CHECK(vacuous.upper_expectation(f) == doctest::Approx(*std::max_element(f.begin(), f.end())));
        CHECK(vacuous.lower_expectation(f) == doctest::Approx(*std::min_element(f.begin(), f.end())));
    }
}
