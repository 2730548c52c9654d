#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "comaut/parikh.hpp"

using namespace comaut;

namespace {

// Independent reference: evaluate an operation bit-by-bit on long prefixes of
// both operands and compare against the folded representation.
std::vector<bool> prefix_bits(const UnarySet& s, std::size_t len) {
    std::vector<bool> bits(len);
    for (std::size_t m = 0; m < len; ++m) bits[m] = s.contains(m);
    return bits;
}

std::vector<bool> naive_sum_bits(const UnarySet& a, const UnarySet& b, std::size_t len) {
    std::vector<bool> bits(len, false);
    for (std::size_t x = 0; x < len; ++x)
        for (std::size_t y = 0; x + y < len; ++y)
            if (a.contains(x) && b.contains(y)) bits[x + y] = true;
    return bits;
}

bool is_canonical(const UnarySet& s) {
    if (s.period == 0) return false;
    if (s.membership.size() != static_cast<std::size_t>(s.index) + s.period) return false;
    if (s.index > 0 && s.membership[s.index - 1] == s.membership[s.index + s.period - 1])
        return false;
    for (std::uint32_t q = 1; q < s.period; ++q) {
        if (s.period % q != 0) continue;
        bool q_periodic = true;
        for (std::uint32_t r = 0; r + q < s.period && q_periodic; ++r)
            q_periodic = s.membership[s.index + r] == s.membership[s.index + r + q];
        if (q_periodic) return false;
    }
    return true;
}

UnarySet random_set(std::mt19937_64& rng) {
    std::uint32_t index = static_cast<std::uint32_t>(rng() % 5);
    std::uint32_t period = 1 + static_cast<std::uint32_t>(rng() % 5);
    std::vector<bool> bits(index + 2u * period);
    for (std::size_t m = 0; m < bits.size(); ++m) {
        bool b = (rng() & 1) != 0;
        bits[m] = m < index ? b : (m < index + period ? b : bits[m - period]);
    }
    return unary_canonicalize(bits, index, period);
}

}  // namespace

TEST_CASE("unary_canonicalize folds to the minimal representation") {
    SECTION("purely periodic set") {
        UnarySet s = unary_canonicalize({1, 0, 1, 0, 1, 0}, 2, 2);
        CHECK(s.index == 0);
        CHECK(s.period == 2);
        CHECK(s.membership == std::vector<bool>{1, 0});
    }
    SECTION("single residue class a^2(a^3)*") {
        UnarySet s = unary_canonicalize({0, 0, 1, 0, 0, 1, 0, 0, 1}, 3, 3);
        CHECK(s.index == 0);
        CHECK(s.period == 3);
        CHECK(s.membership == std::vector<bool>{0, 0, 1});
    }
    SECTION("{2} union {m >= 5}") {
        std::vector<bool> bits{0, 0, 1, 0, 0, 1, 1, 1};
        UnarySet s = unary_canonicalize(bits, 6, 1);
        CHECK(s.index == 5);
        CHECK(s.period == 1);
        CHECK(s.membership == std::vector<bool>{0, 0, 1, 0, 0, 1});
    }
    SECTION("rejects when no period fits") {
        // Bits of {0,3} are 1-periodic only from index 4; with max_index 1 and
        // max_period 1 the caller guarantee is violated.
        CHECK_THROWS_AS(unary_canonicalize({1, 0, 0, 1, 0, 0, 0, 0}, 1, 1),
                        std::invalid_argument);
    }
    SECTION("rejects short prefixes") {
        CHECK_THROWS_AS(unary_canonicalize({1, 0}, 2, 2), std::invalid_argument);
    }
    SECTION("idempotent on canonical sets") {
        std::mt19937_64 rng(7);
        for (int t = 0; t < 200; ++t) {
            UnarySet s = random_set(rng);
            CHECK(is_canonical(s));
            auto bits = prefix_bits(s, s.index + 2u * s.period);
            UnarySet again = unary_canonicalize(bits, s.index, s.period);
            CHECK(again == s);
        }
    }
}

TEST_CASE("unary boolean operations") {
    UnarySet evens = unary_progression(0, 2);
    UnarySet odds = unary_progression(1, 2);

    SECTION("(aa)* union a(aa)* is everything") {
        CHECK(unary_union(evens, odds) == unary_full());
    }
    SECTION("{2} union {m >= 5}") {
        UnarySet s = unary_union(unary_singleton(2), unary_progression(5, 1));
        CHECK(s.index == 5);
        CHECK(s.period == 1);
        CHECK(s.membership == std::vector<bool>{0, 0, 1, 0, 0, 1});
    }
    SECTION("union with the empty set is the identity") {
        CHECK(unary_union(odds, unary_empty()) == odds);
    }
    SECTION("(aa)* intersect (aaa)* is (a^6)*") {
        UnarySet s = unary_intersection(evens, unary_progression(0, 3));
        CHECK(s == unary_progression(0, 6));
        CHECK(s.index == 0);
        CHECK(s.period == 6);
    }
    SECTION("complement is an involution") {
        std::mt19937_64 rng(11);
        for (int t = 0; t < 100; ++t) {
            UnarySet s = random_set(rng);
            CHECK(unary_complement(unary_complement(s)) == s);
        }
    }
    SECTION("union shape contract: index below max, period divides lcm") {
        std::mt19937_64 rng(12);
        for (int t = 0; t < 80; ++t) {
            UnarySet a = random_set(rng), b = random_set(rng);
            UnarySet u = unary_union(a, b);
            CHECK(u.index <= std::max(a.index, b.index));
            CHECK(std::lcm(a.period, b.period) % u.period == 0);
        }
    }
    SECTION("X intersect complement(X) is empty") {
        std::mt19937_64 rng(13);
        for (int t = 0; t < 50; ++t) {
            UnarySet s = random_set(rng);
            CHECK(unary_intersection(s, unary_complement(s)) == unary_empty());
        }
    }
}

TEST_CASE("unary operations agree with the prefix enumeration oracle") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 120; ++t) {
        UnarySet a = random_set(rng);
        UnarySet b = random_set(rng);
        std::size_t check_len = std::max<std::size_t>(a.index + 3u * a.period,
                                                      b.index + 3u * b.period) + 1;
        std::size_t oracle_len =
            4u * std::max<std::size_t>(a.index + a.period, b.index + b.period) + check_len;

        UnarySet u = unary_union(a, b);
        UnarySet i = unary_intersection(a, b);
        UnarySet c = unary_complement(a);
        UnarySet s = unary_minkowski_sum(a, b);
        for (std::size_t m = 0; m < check_len; ++m) {
            CHECK(u.contains(m) == (a.contains(m) || b.contains(m)));
            CHECK(i.contains(m) == (a.contains(m) && b.contains(m)));
            CHECK(c.contains(m) == !a.contains(m));
        }
        // check the sum well into its own periodic tail
        std::size_t sum_len = std::max<std::size_t>(oracle_len, s.index + 3u * s.period + 4);
        auto sum_bits = naive_sum_bits(a, b, sum_len);
        for (std::size_t m = 0; m < sum_len; ++m) CHECK(s.contains(m) == sum_bits[m]);
    }
}

TEST_CASE("unary_minkowski_sum") {
    SECTION("a(aa)* + aa(aaa)*") {
        UnarySet s = unary_minkowski_sum(unary_progression(1, 2), unary_progression(2, 3));
        auto oracle = naive_sum_bits(unary_progression(1, 2), unary_progression(2, 3), 24);
        for (std::size_t m = 0; m < 20; ++m) CHECK(s.contains(m) == oracle[m]);
        CHECK(s.index <= 5);  // lcm(2,3) - 1
        CHECK(s.period == 1);
    }
    SECTION("sum with {0} is the identity") {
        std::mt19937_64 rng(19);
        for (int t = 0; t < 50; ++t) {
            UnarySet a = random_set(rng);
            CHECK(unary_minkowski_sum(a, unary_singleton(0)) == a);
        }
    }
    SECTION("sum with the empty set is empty") {
        CHECK(unary_minkowski_sum(unary_progression(3, 2), unary_empty()) == unary_empty());
    }
    SECTION("a^{p-1}(a^p)* + a^{q-1}(a^q)* for p=2, q=3") {
        UnarySet s = unary_minkowski_sum(unary_progression(1, 2), unary_progression(2, 3));
        CHECK_FALSE(s.contains(4));  // pq - 2
        for (std::uint64_t m = 5; m < 30; ++m) CHECK(s.contains(m));
    }
    SECTION("commutative and associative on canonical forms") {
        std::mt19937_64 rng(23);
        for (int t = 0; t < 40; ++t) {
            UnarySet a = random_set(rng), b = random_set(rng), c = random_set(rng);
            CHECK(unary_minkowski_sum(a, b) == unary_minkowski_sum(b, a));
            CHECK(unary_minkowski_sum(unary_minkowski_sum(a, b), c) ==
                  unary_minkowski_sum(a, unary_minkowski_sum(b, c)));
        }
    }
    SECTION("index/period contract for index-zero operands, periods up to 8") {
        std::mt19937_64 rng(29);
        for (std::uint32_t p = 1; p <= 8; ++p) {
            for (std::uint32_t q = 1; q <= 8; ++q) {
                for (int t = 0; t < 4; ++t) {
                    std::vector<bool> abits(2u * p), bbits(2u * q);
                    bool a_any = false, b_any = false;
                    for (std::uint32_t r = 0; r < p; ++r) {
                        abits[r] = abits[r + p] = (rng() & 1) != 0;
                        a_any |= bool(abits[r]);
                    }
                    for (std::uint32_t r = 0; r < q; ++r) {
                        bbits[r] = bbits[r + q] = (rng() & 1) != 0;
                        b_any |= bool(bbits[r]);
                    }
                    if (!a_any || !b_any) continue;
                    UnarySet a = unary_canonicalize(abits, 0, p);
                    UnarySet b = unary_canonicalize(bbits, 0, q);
                    UnarySet s = unary_minkowski_sum(a, b);
                    std::uint32_t l = static_cast<std::uint32_t>(std::lcm(a.period, b.period));
                    std::uint32_t g = std::gcd(a.period, b.period);
                    CHECK(s.index <= l - 1 + 0u);
                    CHECK(g % s.period == 0);
                }
            }
        }
    }
}

TEST_CASE("degenerate unary representations") {
    CHECK(unary_empty().none());
    CHECK(unary_empty() == UnarySet{0, 1, {false}});
    CHECK(unary_full() == UnarySet{0, 1, {true}});
    CHECK(unary_singleton(0).index == 1);
    CHECK(unary_singleton(0).contains(0));
    CHECK_FALSE(unary_singleton(0).contains(1));
    CHECK(unary_progression(0, 1) == unary_full());
}
