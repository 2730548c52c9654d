#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "comaut/dfa.hpp"
#include "comaut/grid.hpp"
#include "comaut/sampling.hpp"

using namespace comaut;

namespace {

GridAutomaton example1() {
    return grid_from_products(2, {{unary_progression(0, 2), unary_progression(0, 2)},
                                  {unary_progression(0, 4), unary_progression(0, 1)}});
}

GridAutomaton example2() {
    return grid_from_products(2, {{unary_singleton(0), unary_progression(2, 2)},
                                  {unary_progression(1, 2), unary_singleton(1)}});
}

// {a^n, b^n} over a binary alphabet
GridAutomaton two_spikes(std::uint32_t n) {
    return grid_union(grid_word({n, 0}), grid_word({0, n}));
}

}  // namespace

TEST_CASE("dfa_from_grid") {
    SECTION("the 3x4 example grid expands to 12 states") {
        Dfa d = dfa_from_grid(example2());
        CHECK(d.num_states == 12);
        CHECK(d.alphabet_size == 2);
        CHECK(d.labels[d.start] == "(0,0)");
        // walking b twice from the start reaches the accepting (0,2)
        std::uint32_t s = d.start;
        s = d.step(s, 1);
        s = d.step(s, 1);
        CHECK(d.is_final[s]);
        CHECK(d.labels[s] == "(0,2)");
        // the a-lasso wraps its cycle: state (2,0) steps back to (1,0)
        std::uint32_t t = d.step(d.step(d.start, 0), 0);
        CHECK(d.labels[t] == "(2,0)");
        CHECK(d.labels[d.step(t, 0)] == "(1,0)");
    }
    SECTION("a 1x1 accepting grid is the one-state automaton of sigma*") {
        Dfa d = dfa_from_grid(grid_sigma_star(2));
        CHECK(d.num_states == 1);
        CHECK(d.is_final[0]);
        CHECK(d.step(0, 0) == 0);
        CHECK(d.step(0, 1) == 0);
    }
    SECTION("example 1 expands to the full 4x2 product") {
        CHECK(dfa_from_grid(example1()).num_states == 8);
    }
}

TEST_CASE("dfa_minimize") {
    SECTION("the two accepting spikes of {aa, bb} merge") {
        Dfa m = dfa_minimize(dfa_from_grid(two_spikes(2)));
        CHECK(m.num_states == 5);  // eps, a, b, accept, trap
    }
    SECTION("minimization is idempotent") {
        std::mt19937_64 rng(31);
        for (int t = 0; t < 20; ++t) {
            GridAutomaton g = sampling::random_canonical_grid(rng, 1 + rng() % 3, 3, 3);
            Dfa m = dfa_minimize(dfa_from_grid(g));
            Dfa mm = dfa_minimize(m);
            CHECK(mm.num_states == m.num_states);
            CHECK(dfa_equivalent(m, mm));
            CHECK(m.num_states <= dfa_from_grid(g).num_states);
        }
    }
    SECTION("example 1 is already tight: 4*2 states survive") {
        CHECK(dfa_minimize(dfa_from_grid(example1())).num_states == 8);
    }
    SECTION("minimal automaton of the empty language is the single trap") {
        CHECK(dfa_minimize(dfa_from_grid(grid_empty(2))).num_states == 1);
    }
}

TEST_CASE("dfa_equivalent") {
    SECTION("a dfa is equivalent to its minimization") {
        std::mt19937_64 rng(37);
        for (int t = 0; t < 20; ++t) {
            GridAutomaton g = sampling::random_canonical_grid(rng, 1 + rng() % 3, 3, 3);
            Dfa d = dfa_from_grid(g);
            CHECK(dfa_equivalent(d, dfa_minimize(d)));
        }
    }
    SECTION("the figure's middle automaton equals the upward closure") {
        GridAutomaton expected =
            grid_from_products(2, {{unary_singleton(0), unary_progression(2, 1)},
                                   {unary_progression(1, 1), unary_progression(1, 1)}});
        CHECK(dfa_equivalent(dfa_from_grid(grid_upward_closure(example2())),
                             dfa_from_grid(expected)));
    }
    SECTION("empty language vs the empty word") {
        CHECK_FALSE(dfa_equivalent(dfa_from_grid(grid_empty(1)),
                                   dfa_from_grid(grid_word({0}))));
    }
    SECTION("alphabet mismatch is rejected") {
        CHECK_THROWS_AS(dfa_equivalent(dfa_from_grid(grid_empty(1)),
                                       dfa_from_grid(grid_empty(2))),
                        std::invalid_argument);
    }
}

TEST_CASE("state_complexity") {
    SECTION("coprime shuffle witness n=2, m=3 measures 6") {
        GridAutomaton u = grid_from_products(
            2, {{unary_progression(1, 2), unary_progression(0, 1)}});
        GridAutomaton v = grid_from_products(
            2, {{unary_progression(2, 3), unary_progression(0, 1)}});
        CHECK(state_complexity(grid_shuffle(u, v)) == 6);
    }
    SECTION("sigma* has one state") {
        CHECK(state_complexity(grid_sigma_star(2)) == 1);
    }
    SECTION("sharp group shuffle p=2, q=3, k=2 measures 36") {
        GridAutomaton v = grid_from_products(
            2, {{unary_progression(1, 2), unary_progression(1, 2)}});
        GridAutomaton w = grid_from_products(
            2, {{unary_progression(2, 3), unary_progression(2, 3)}});
        CHECK(state_complexity(v) == 4);
        CHECK(state_complexity(w) == 9);
        CHECK(state_complexity(grid_shuffle(v, w)) == 36);
    }
}

TEST_CASE("permutation and aperiodicity checks") {
    SECTION("example 1 is recognized by a permutation automaton") {
        Dfa m = dfa_minimize(dfa_from_grid(example1()));
        CHECK(is_permutation_dfa(m));
        CHECK_FALSE(is_aperiodic_dfa(m));
    }
    SECTION("a single word is aperiodic but no permutation automaton") {
        Dfa m = dfa_minimize(dfa_from_grid(grid_word({3})));
        CHECK(is_aperiodic_dfa(m));
        CHECK_FALSE(is_permutation_dfa(m));
    }
    SECTION("the shuffle of two finite witnesses stays aperiodic") {
        GridAutomaton s = grid_shuffle(two_spikes(2), two_spikes(3));
        Dfa m = dfa_minimize(dfa_from_grid(s));
        CHECK(is_aperiodic_dfa(m));
        CHECK(grid_is_aperiodic(s));
    }
    SECTION("monoid budget is enforced") {
        Dfa m = dfa_minimize(dfa_from_grid(example1()));
        CHECK_THROWS_AS(is_aperiodic_dfa(m, 2), std::runtime_error);
    }
}

TEST_CASE("classification and bounds agree across representations") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 30; ++t) {
        std::size_t k = 1 + rng() % 3;
        GridAutomaton g = sampling::random_canonical_grid(rng, k, 3, 3);
        IndexPeriodVectors v = grid_index_period(g);
        std::uint64_t sc = state_complexity(g);

        // index/period sandwich
        std::uint64_t prod = 1, maxax = 0;
        for (std::size_t j = 0; j < k; ++j) {
            prod *= v.index[j] + v.period[j];
            maxax = std::max<std::uint64_t>(maxax, v.index[j] + v.period[j]);
        }
        CHECK(maxax <= sc);
        CHECK(sc <= prod);

        // grid classifiers match the automaton-level checks
        Dfa m = dfa_minimize(dfa_from_grid(g));
        CHECK(grid_is_group(g) == is_permutation_dfa(m));
        CHECK(grid_is_aperiodic(g) == is_aperiodic_dfa(m));

        // closures and interiors stay within sc(L)^k
        std::uint64_t cap = 1;
        for (std::size_t j = 0; j < k; ++j) cap *= sc;
        CHECK(state_complexity(grid_upward_closure(g)) <= cap);
        CHECK(state_complexity(grid_downward_closure(g)) <= cap);
        CHECK(state_complexity(grid_upward_interior(g)) <= cap);
        CHECK(state_complexity(grid_downward_interior(g)) <= cap);
    }
}

TEST_CASE("dot export") {
    Dfa d = dfa_from_grid(grid_word({1}));
    std::string dot = dfa_to_dot(d, "a");
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("doublecircle") != std::string::npos);
    CHECK(dot.find("label=\"(1)\"") != std::string::npos);
    CHECK(dot == dfa_to_dot(d, "a"));  // deterministic
}
