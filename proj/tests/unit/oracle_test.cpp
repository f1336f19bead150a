#include <algorithm>
#include <numeric>
#include <random>

#include <doctest.h>

#include "iprctl/inference.hpp"
#include "iprctl/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/matchers.hpp"

using namespace iprctl;
using namespace iprctl::testing;

TEST_CASE("path enumeration") {
    const auto m = channel_model();
    SUBCASE("two steps from start") {
        const auto paths = oracle::enumerate_paths(m, kStart, 2);
        REQUIRE(paths.size() == 2);
        for (const auto& p : paths) {
            if (p.states.back() == kDelivered) {
                CHECK(p.states == std::vector<std::size_t>{kStart, kTry, kDelivered});
                CHECK(p.probability == doctest::Approx(0.9));
            } else {
                CHECK(p.states == std::vector<std::size_t>{kStart, kTry, kLost});
                CHECK(p.probability == doctest::Approx(0.1));
            }
        }
    }
    SUBCASE("zero steps") {
        const auto paths = oracle::enumerate_paths(m, kTry, 0);
        REQUIRE(paths.size() == 1);
        CHECK(paths[0].states == std::vector<std::size_t>{kTry});
        CHECK(paths[0].probability == 1.0);
    }
    SUBCASE("probabilities sum to one") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 20; ++i) {
            const auto chain = random_selection(rng, random_model(rng));
            const auto paths = oracle::enumerate_paths(chain, 0, 4);
            const double total = std::accumulate(paths.begin(), paths.end(), 0.0,
                                                 [](double acc, const auto& p) { return acc + p.probability; });
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("joint paths use the initial distribution") {
        const auto paths = oracle::enumerate_joint_paths(m, 1);
        REQUIRE(paths.size() == 1);
        CHECK(paths[0].states == std::vector<std::size_t>{kStart, kTry});
    }
    SUBCASE("guard") {
        const auto full = make_precise_chain(std::vector<std::vector<double>>(4, std::vector<double>(4, 0.25)));
        check_error(ErrorCode::ExplosionGuardTripped, [&] { oracle::enumerate_paths(full, 0, 10, 1000); });
    }
}

TEST_CASE("path rewards") {
    const std::vector<Reward> rewards{100, 50, 0};
    const std::vector<std::size_t> path{0, 0, 1};
    CHECK(oracle::path_reward(path, rewards, 2) == 250);
    CHECK(oracle::path_reward(path, rewards, 0) == 100);
    CHECK(oracle::path_reward(path, std::vector<Reward>{0, 0, 0}, 2) == 0);
    check_error(ErrorCode::IndexOutOfRange, [&] { oracle::path_reward(path, rewards, 3); });
}

TEST_CASE("brute force") {
    SUBCASE("channel hitting at six steps") {
        const auto b = oracle::brute_force(channel_model(), oracle::query::Until{StateSet::all(4), StateSet(4, {kLost}), 6}, kStart);
        CHECK(b.lower == doctest::Approx(0.19));
        CHECK(b.upper == doctest::Approx(0.19));
    }
    SUBCASE("identity chain never leaves") {
        const auto id = make_precise_chain({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        for (std::size_t n = 0; n <= 4; ++n) {
            CHECK(oracle::brute_force(id, oracle::query::Until{StateSet::all(3), StateSet(3, {1, 2}), n}, 0).upper == 0.0);
        }
    }
    SUBCASE("two-vertex toy: exhaustive selections match the recursion") {
        const auto toy = two_vertex_toy();
        const oracle::query::Until q{StateSet::all(3), StateSet(3, {2}), 3};
        const auto b = oracle::brute_force(toy, q, 0);
        CHECK(b.upper == doctest::Approx(0.657).epsilon(1e-12));
        CHECK(b.lower == doctest::Approx(0.0));
        CHECK(hitting_probabilities(toy, StateSet(3, {2}), 3, Mode::Upper)[0] == doctest::Approx(b.upper).epsilon(1e-12));
        CHECK(hitting_probabilities(toy, StateSet(3, {2}), 3, Mode::Lower)[0] == doctest::Approx(b.lower).epsilon(1e-12));
    }
    SUBCASE("stationary selections fall short on the witness") {
        const auto w = stationarity_witness();
        const StateSet goal(6, {4});
        const oracle::query::Until q{StateSet::all(6), goal, 3};
        oracle::Options stationary;
        stationary.stationary_only = true;
        const double recursion = hitting_probabilities(w, goal, 3, Mode::Upper)[0];
        CHECK(recursion == doctest::Approx(0.75));
        CHECK(oracle::brute_force(w, q, 0).upper == doctest::Approx(0.75));
        CHECK(oracle::brute_force(w, q, 0, stationary).upper == doctest::Approx(0.5));
    }
    SUBCASE("selection guard") {
        const auto toy = two_vertex_toy();
        oracle::Options tight;
        tight.max_selections = 4;
        check_error(ErrorCode::ExplosionGuardTripped, [&] {
            oracle::brute_force(toy, oracle::query::Until{StateSet::all(3), StateSet(3, {2}), 3}, 0, tight);
        });
    }
    SUBCASE("monte carlo stays inside the exact bounds") {
        const auto toy = two_vertex_toy();
        const oracle::query::Until q{StateSet::all(3), StateSet(3, {2}), 3};
        const auto exact = oracle::brute_force(toy, q, 0);
        const auto sampled = oracle::monte_carlo(toy, q, 0, 50, 1);
        CHECK(sampled.lower >= exact.lower - 1e-12);
        CHECK(sampled.upper <= exact.upper + 1e-12);
    }
}
