#pragma once

#include <cstdint>
#include <random>

#include "comaut/grid.hpp"

namespace comaut {

/// Deterministic, seed-driven grid generators. All randomness goes through
/// the raw engine output so the produced sequences are stable everywhere.
namespace sampling {

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline GridAutomaton random_grid(std::mt19937_64& rng, std::size_t k,
                                 std::uint32_t max_index, std::uint32_t max_period) {
    GridAutomaton g;
    g.alphabet_size = k;
    g.axes.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        g.axes[j].index = static_cast<std::uint32_t>(below(rng, max_index + 1));
        g.axes[j].period = 1 + static_cast<std::uint32_t>(below(rng, max_period));
    }
    detail::Box box = detail::Box::of_grid(g);
    ParikhVector t(k, 0);
    while (true) {
        if (rng() & 1) g.finals.push_back(t);
        if (!box.next(t)) break;
    }
    return g;
}

inline GridAutomaton random_canonical_grid(std::mt19937_64& rng, std::size_t k,
                                           std::uint32_t max_index, std::uint32_t max_period) {
    return grid_canonicalize(random_grid(rng, k, max_index, max_period));
}

/// Random nonempty language with index vector zero (a commutative group
/// language by the period-vector criterion).
inline GridAutomaton random_group_grid(std::mt19937_64& rng, std::size_t k,
                                       std::uint32_t max_period) {
    GridAutomaton g = random_grid(rng, k, 0, max_period);
    if (g.finals.empty()) g.finals.push_back(ParikhVector(k, 0));
    return grid_canonicalize(g);
}

/// Random language with period vector all ones (aperiodic).
inline GridAutomaton random_aperiodic_grid(std::mt19937_64& rng, std::size_t k,
                                           std::uint32_t max_index) {
    GridAutomaton g = random_grid(rng, k, max_index, 1);
    return grid_canonicalize(g);
}

inline std::vector<bool> random_letter_subset(std::mt19937_64& rng, std::size_t k) {
    std::vector<bool> keep(k);
    for (std::size_t j = 0; j < k; ++j) keep[j] = (rng() & 1) != 0;
    return keep;
}

}  // namespace sampling
}  // namespace comaut
