#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "comaut/parikh.hpp"

namespace comaut {

/// One per-letter lasso: a tail of `index` states feeding a cycle of `period` states.
struct AxisShape {
    std::uint32_t index = 0;
    std::uint32_t period = 1;

    std::uint32_t state_count() const { return index + period; }
    bool operator==(const AxisShape&) const = default;
};

struct IndexPeriodVectors {
    std::vector<std::uint32_t> index;
    std::vector<std::uint32_t> period;

    bool operator==(const IndexPeriodVectors&) const = default;
};

/// Canonical representation of a commutative regular language: a product of
/// per-letter lassos plus the set of accepting coordinate tuples. Membership
/// of a word depends only on its Parikh vector. Values are immutable once
/// built; all operations below are pure functions returning new grids.
struct GridAutomaton {
    std::size_t alphabet_size = 0;
    std::vector<AxisShape> axes;          // one per letter
    std::vector<ParikhVector> finals;     // sorted lexicographically, deduplicated
    bool canonical = false;

    std::uint32_t clamp(std::size_t j, std::uint64_t m) const {
        const AxisShape& ax = axes[j];
        if (m < ax.state_count()) return static_cast<std::uint32_t>(m);
        return ax.index + static_cast<std::uint32_t>((m - ax.index) % ax.period);
    }

    bool accepts_tuple(const ParikhVector& state_tuple) const {
        return std::binary_search(finals.begin(), finals.end(), state_tuple);
    }

    std::uint64_t state_count() const {
        std::uint64_t n = 1;
        for (const AxisShape& ax : axes) n *= ax.state_count();
        return n;
    }
};

namespace detail {

constexpr std::uint64_t kMaxGridCells = 10'000'000;

/// Row-major indexing over a product of axis state sets. Rank order equals
/// lexicographic order of tuples.
struct Box {
    std::vector<std::uint32_t> dims;
    std::vector<std::uint64_t> strides;
    std::uint64_t size = 1;

    explicit Box(const std::vector<std::uint32_t>& d) : dims(d), strides(d.size()) {
        for (std::size_t j = d.size(); j-- > 0;) {
            strides[j] = size;
            size *= dims[j];
            if (size > kMaxGridCells) throw std::overflow_error("grid box too large");
        }
    }

    static Box of_grid(const GridAutomaton& g) {
        std::vector<std::uint32_t> d(g.alphabet_size);
        for (std::size_t j = 0; j < g.alphabet_size; ++j) d[j] = g.axes[j].state_count();
        return Box(d);
    }

    std::uint64_t rank(const ParikhVector& t) const {
        std::uint64_t r = 0;
        for (std::size_t j = 0; j < dims.size(); ++j) r += t[j] * strides[j];
        return r;
    }

    ParikhVector unrank(std::uint64_t r) const {
        ParikhVector t(dims.size());
        for (std::size_t j = 0; j < dims.size(); ++j) {
            t[j] = static_cast<std::uint32_t>(r / strides[j]);
            r %= strides[j];
        }
        return t;
    }

    bool next(ParikhVector& t) const {
        for (std::size_t j = dims.size(); j-- > 0;) {
            if (++t[j] < dims[j]) return true;
            t[j] = 0;
        }
        return false;
    }
};

inline std::vector<char> final_bitmap(const GridAutomaton& g, const Box& box) {
    std::vector<char> bits(box.size, 0);
    for (const ParikhVector& f : g.finals) bits[box.rank(f)] = 1;
    return bits;
}

inline std::vector<ParikhVector> bitmap_to_finals(const std::vector<char>& bits, const Box& box) {
    std::vector<ParikhVector> finals;
    for (std::uint64_t r = 0; r < box.size; ++r)
        if (bits[r]) finals.push_back(box.unrank(r));
    return finals;  // rank order is lexicographic
}

inline void sort_finals(GridAutomaton& g) {
    std::sort(g.finals.begin(), g.finals.end());
    g.finals.erase(std::unique(g.finals.begin(), g.finals.end()), g.finals.end());
}

inline void check_same_alphabet(const GridAutomaton& a, const GridAutomaton& b) {
    if (a.alphabet_size != b.alphabet_size)
        throw std::invalid_argument("grid operation: alphabet size mismatch");
}

/// Mark every tuple >= some already-marked tuple (sweep once per axis).
inline void saturate_upward(std::vector<char>& bits, const Box& box) {
    for (std::size_t j = 0; j < box.dims.size(); ++j) {
        for (std::uint64_t r = 0; r < box.size; ++r) {
            if (!bits[r]) continue;
            std::uint32_t c = static_cast<std::uint32_t>((r / box.strides[j]) % box.dims[j]);
            if (c + 1 < box.dims[j]) bits[r + box.strides[j]] |= 1;
        }
    }
}

/// Mark every tuple <= some already-marked tuple.
inline void saturate_downward(std::vector<char>& bits, const Box& box) {
    for (std::size_t j = 0; j < box.dims.size(); ++j) {
        for (std::uint64_t r = box.size; r-- > 0;) {
            if (!bits[r]) continue;
            std::uint32_t c = static_cast<std::uint32_t>((r / box.strides[j]) % box.dims[j]);
            if (c > 0) bits[r - box.strides[j]] |= 1;
        }
    }
}

}  // namespace detail

inline bool grid_membership(const GridAutomaton& g, const ParikhVector& v) {
    if (v.size() != g.alphabet_size)
        throw std::invalid_argument("grid_membership: arity mismatch");
    ParikhVector t(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) t[j] = g.clamp(j, v[j]);
    return g.accepts_tuple(t);
}

/// The language containing nothing.
inline GridAutomaton grid_empty(std::size_t k) {
    GridAutomaton g;
    g.alphabet_size = k;
    g.axes.assign(k, AxisShape{0, 1});
    g.canonical = true;
    return g;
}

/// All words over the alphabet.
inline GridAutomaton grid_sigma_star(std::size_t k) {
    GridAutomaton g = grid_empty(k);
    g.finals.push_back(ParikhVector(k, 0));
    return g;
}

GridAutomaton grid_canonicalize(const GridAutomaton& g);

/// Recognizer of a union of per-letter shuffle products: each summand is a
/// k-tuple of unary exponent sets, one per letter.
inline GridAutomaton grid_from_products(std::size_t k,
                                        const std::vector<std::vector<UnarySet>>& summands) {
    GridAutomaton g;
    g.alphabet_size = k;
    g.axes.assign(k, AxisShape{0, 1});
    for (const auto& s : summands) {
        if (s.size() != k)
            throw std::invalid_argument("grid_from_products: summand arity mismatch");
        for (std::size_t j = 0; j < k; ++j) {
            g.axes[j].index = std::max(g.axes[j].index, s[j].index);
            g.axes[j].period =
                static_cast<std::uint32_t>(checked_lcm(g.axes[j].period, s[j].period));
        }
    }

    detail::Box box = detail::Box::of_grid(g);
    std::vector<char> bits(box.size, 0);
    std::vector<std::vector<std::uint32_t>> accept(k);
    for (const auto& s : summands) {
        bool feasible = true;
        for (std::size_t j = 0; j < k && feasible; ++j) {
            accept[j].clear();
            for (std::uint32_t m = 0; m < box.dims[j]; ++m)
                if (s[j].contains(m)) accept[j].push_back(m);
            feasible = !accept[j].empty();
        }
        if (!feasible) continue;
        // odometer over the product of accepted states
        std::vector<std::size_t> pos(k, 0);
        bool done = false;
        while (!done) {
            std::uint64_t r = 0;
            for (std::size_t j = 0; j < k; ++j) r += accept[j][pos[j]] * box.strides[j];
            bits[r] = 1;
            done = true;
            for (std::size_t j = k; j-- > 0;) {
                if (++pos[j] < accept[j].size()) {
                    done = false;
                    break;
                }
                pos[j] = 0;
            }
        }
    }
    g.finals = detail::bitmap_to_finals(bits, box);
    return grid_canonicalize(g);
}

/// Reduce every axis to the Nerode classes of its letter powers and remap the
/// finals, yielding the unique canonical grid of the recognized language.
inline GridAutomaton grid_canonicalize(const GridAutomaton& g) {
    if (g.canonical) return g;
    const std::size_t k = g.alphabet_size;
    if (k == 0) {
        GridAutomaton r = g;
        detail::sort_finals(r);
        r.canonical = true;
        return r;
    }

    detail::Box box = detail::Box::of_grid(g);
    std::vector<char> bits = detail::final_bitmap(g, box);

    std::vector<AxisShape> new_axes(k);
    std::vector<std::vector<std::uint32_t>> remap(k);  // old axis state -> new coordinate
    for (std::size_t j = 0; j < k; ++j) {
        const std::uint32_t n = box.dims[j];
        // Output of axis state s: the slice of finals over all other coordinates.
        std::vector<std::vector<char>> slice(n);
        for (std::uint32_t s = 0; s < n; ++s) slice[s].reserve(box.size / n);
        for (std::uint64_t r = 0; r < box.size; ++r) {
            std::uint32_t s = static_cast<std::uint32_t>((r / box.strides[j]) % n);
            slice[s].push_back(bits[r]);
        }
        std::vector<std::uint32_t> cls(n);
        {
            std::map<std::vector<char>, std::uint32_t> ids;
            for (std::uint32_t s = 0; s < n; ++s)
                cls[s] = ids.emplace(slice[s], static_cast<std::uint32_t>(ids.size()))
                             .first->second;
        }
        auto succ = [&](std::uint32_t s) {
            return s + 1 < n ? s + 1 : g.axes[j].index;
        };
        // Moore refinement on the single-letter lasso.
        while (true) {
            std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> ids;
            std::vector<std::uint32_t> next(n);
            for (std::uint32_t s = 0; s < n; ++s)
                next[s] = ids.emplace(std::pair{cls[s], cls[succ(s)]},
                                      static_cast<std::uint32_t>(ids.size()))
                              .first->second;
            if (next == cls) break;
            cls = next;
        }
        // Walk the lasso; the class sequence is a rho whose tail/cycle give
        // the minimal index and period.
        std::vector<std::uint32_t> first_pos(n, UINT32_MAX);
        std::uint32_t state = 0, pos = 0;
        while (first_pos[cls[state]] == UINT32_MAX) {
            first_pos[cls[state]] = pos;
            state = succ(state);
            ++pos;
        }
        new_axes[j].index = first_pos[cls[state]];
        new_axes[j].period = pos - new_axes[j].index;
        remap[j].resize(n);
        for (std::uint32_t s = 0; s < n; ++s) remap[j][s] = first_pos[cls[s]];
    }

    GridAutomaton r;
    r.alphabet_size = k;
    r.axes = new_axes;
    r.finals.reserve(g.finals.size());
    for (const ParikhVector& f : g.finals) {
        ParikhVector t(k);
        for (std::size_t j = 0; j < k; ++j) t[j] = remap[j][f[j]];
        r.finals.push_back(std::move(t));
    }
    detail::sort_finals(r);
    r.canonical = true;
    return r;
}

inline IndexPeriodVectors grid_index_period(const GridAutomaton& g0) {
    GridAutomaton g = grid_canonicalize(g0);
    IndexPeriodVectors v;
    v.index.reserve(g.alphabet_size);
    v.period.reserve(g.alphabet_size);
    for (const AxisShape& ax : g.axes) {
        v.index.push_back(ax.index);
        v.period.push_back(ax.period);
    }
    return v;
}

namespace detail {

/// Both operands embedded losslessly into a common axis shape
/// (max index, lcm period), then finals combined pointwise.
template <typename F>
GridAutomaton grid_boolean(const GridAutomaton& a, const GridAutomaton& b, F&& keep) {
    check_same_alphabet(a, b);
    GridAutomaton g;
    g.alphabet_size = a.alphabet_size;
    g.axes.resize(a.alphabet_size);
    for (std::size_t j = 0; j < a.alphabet_size; ++j) {
        g.axes[j].index = std::max(a.axes[j].index, b.axes[j].index);
        g.axes[j].period =
            static_cast<std::uint32_t>(checked_lcm(a.axes[j].period, b.axes[j].period));
    }
    Box box = Box::of_grid(g);
    ParikhVector t(g.alphabet_size, 0);
    while (true) {
        if (keep(grid_membership(a, t), grid_membership(b, t))) g.finals.push_back(t);
        if (!box.next(t)) break;
    }
    return grid_canonicalize(g);
}

}  // namespace detail

inline GridAutomaton grid_union(const GridAutomaton& a, const GridAutomaton& b) {
    return detail::grid_boolean(a, b, [](bool x, bool y) { return x || y; });
}

inline GridAutomaton grid_intersection(const GridAutomaton& a, const GridAutomaton& b) {
    return detail::grid_boolean(a, b, [](bool x, bool y) { return x && y; });
}

inline GridAutomaton grid_complement(const GridAutomaton& a) {
    GridAutomaton g;
    g.alphabet_size = a.alphabet_size;
    g.axes = a.axes;
    detail::Box box = detail::Box::of_grid(a);
    std::vector<char> bits = detail::final_bitmap(a, box);
    for (std::uint64_t r = 0; r < box.size; ++r) bits[r] = !bits[r];
    g.finals = detail::bitmap_to_finals(bits, box);
    return grid_canonicalize(g);
}

namespace detail {

/// Exponent set of axis-j states that clamp onto coordinate c.
inline UnarySet axis_component(const GridAutomaton& g, std::size_t j, std::uint32_t c) {
    const AxisShape& ax = g.axes[j];
    if (c < ax.index) return unary_singleton(c);
    return unary_progression(c, ax.period);
}

}  // namespace detail

/// One summand per final tuple; reassembling with grid_from_products yields
/// the same language.
inline std::vector<std::vector<UnarySet>> grid_decompose(const GridAutomaton& g0) {
    GridAutomaton g = grid_canonicalize(g0);
    std::vector<std::vector<UnarySet>> summands;
    summands.reserve(g.finals.size());
    for (const ParikhVector& f : g.finals) {
        std::vector<UnarySet> comp(g.alphabet_size);
        for (std::size_t j = 0; j < g.alphabet_size; ++j)
            comp[j] = detail::axis_component(g, j, f[j]);
        summands.push_back(std::move(comp));
    }
    return summands;
}

/// Shuffle via decomposition: pairwise per-letter Minkowski sums of the
/// operands' summands, then a union of the resulting products.
inline GridAutomaton grid_shuffle(const GridAutomaton& a0, const GridAutomaton& b0) {
    detail::check_same_alphabet(a0, b0);
    const std::size_t k = a0.alphabet_size;
    GridAutomaton a = grid_canonicalize(a0);
    GridAutomaton b = grid_canonicalize(b0);
    if (a.finals.empty() || b.finals.empty()) return grid_empty(k);
    if (k == 0) return a;  // both recognize {epsilon}

    // Distinct per-axis coordinate pairs are few; sum each once.
    std::vector<std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t>> sum_id(k);
    std::vector<std::vector<UnarySet>> sums(k);
    std::set<std::vector<std::uint32_t>> seen;
    std::vector<std::vector<UnarySet>> summands;
    for (const ParikhVector& f : a.finals) {
        for (const ParikhVector& e : b.finals) {
            std::vector<std::uint32_t> key(k);
            for (std::size_t j = 0; j < k; ++j) {
                auto [it, inserted] = sum_id[j].try_emplace(
                    std::pair{f[j], e[j]}, static_cast<std::uint32_t>(sums[j].size()));
                if (inserted)
                    sums[j].push_back(unary_minkowski_sum(detail::axis_component(a, j, f[j]),
                                                          detail::axis_component(b, j, e[j])));
                key[j] = it->second;
            }
            if (!seen.insert(key).second) continue;
            std::vector<UnarySet> comp(k);
            for (std::size_t j = 0; j < k; ++j) comp[j] = sums[j][key[j]];
            summands.push_back(std::move(comp));
        }
    }
    return grid_from_products(k, summands);
}

/// Keep only the axes of the letters in `keep` and project the finals.
inline GridAutomaton grid_projection(const GridAutomaton& g, const std::vector<bool>& keep) {
    if (keep.size() != g.alphabet_size)
        throw std::invalid_argument("grid_projection: letter set arity mismatch");
    GridAutomaton r;
    for (std::size_t j = 0; j < keep.size(); ++j)
        if (keep[j]) {
            r.axes.push_back(g.axes[j]);
            ++r.alphabet_size;
        }
    for (const ParikhVector& f : g.finals) {
        ParikhVector t;
        t.reserve(r.alphabet_size);
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (keep[j]) t.push_back(f[j]);
        r.finals.push_back(std::move(t));
    }
    detail::sort_finals(r);
    return grid_canonicalize(r);
}

/// The normal-form automaton for the upward closure: transitions saturate at
/// the top of every axis and the finals are the upward cone of the input
/// finals inside the box. Same state count as the input grid.
inline GridAutomaton grid_upward_closure_construction(const GridAutomaton& g0) {
    GridAutomaton g = grid_canonicalize(g0);
    GridAutomaton r;
    r.alphabet_size = g.alphabet_size;
    r.axes.resize(g.alphabet_size);
    for (std::size_t j = 0; j < g.alphabet_size; ++j)
        r.axes[j] = AxisShape{g.axes[j].state_count() - 1, 1};
    detail::Box box = detail::Box::of_grid(g);  // same dimensions as r
    std::vector<char> bits = detail::final_bitmap(g, box);
    detail::saturate_upward(bits, box);
    r.finals = detail::bitmap_to_finals(bits, box);
    return r;
}

inline GridAutomaton grid_upward_closure(const GridAutomaton& g) {
    return grid_canonicalize(grid_upward_closure_construction(g));
}

/// The normal-form automaton for the downward closure: transitions are kept
/// and the finals become the downward cone of E', the tuples that per axis
/// either equal a final's coordinate or share its cycle.
inline GridAutomaton grid_downward_closure_construction(const GridAutomaton& g0) {
    GridAutomaton g = grid_canonicalize(g0);
    const std::size_t k = g.alphabet_size;
    GridAutomaton r;
    r.alphabet_size = k;
    r.axes = g.axes;
    detail::Box box = detail::Box::of_grid(g);
    std::vector<char> bits(box.size, 0);
    ParikhVector t(k, 0);
    while (true) {
        bool in_e = false;
        for (const ParikhVector& f : g.finals) {
            bool all = true;
            for (std::size_t j = 0; j < k && all; ++j) {
                bool on_cycle = t[j] >= g.axes[j].index && f[j] >= g.axes[j].index;
                all = on_cycle || f[j] == t[j];
            }
            if (all) {
                in_e = true;
                break;
            }
        }
        if (in_e) bits[box.rank(t)] = 1;
        if (!box.next(t)) break;
    }
    detail::saturate_downward(bits, box);
    r.finals = detail::bitmap_to_finals(bits, box);
    return r;
}

inline GridAutomaton grid_downward_closure(const GridAutomaton& g) {
    return grid_canonicalize(grid_downward_closure_construction(g));
}

/// Largest upward-closed subset of the language.
inline GridAutomaton grid_upward_interior(const GridAutomaton& g) {
    return grid_complement(grid_downward_closure(grid_complement(g)));
}

/// Largest downward-closed subset of the language.
inline GridAutomaton grid_downward_interior(const GridAutomaton& g) {
    return grid_complement(grid_upward_closure(grid_complement(g)));
}

/// Letters that occur in at least one member.
inline std::vector<bool> grid_alphabet(const GridAutomaton& g0) {
    GridAutomaton g = grid_canonicalize(g0);
    std::vector<bool> occurs(g.alphabet_size, false);
    for (const ParikhVector& f : g.finals)
        for (std::size_t j = 0; j < g.alphabet_size; ++j)
            if (f[j] > 0 || g.axes[j].index == 0) occurs[j] = true;
    return occurs;
}

inline bool grid_is_group(const GridAutomaton& g0) {
    GridAutomaton g = grid_canonicalize(g0);
    for (const AxisShape& ax : g.axes)
        if (ax.index != 0) return false;
    return true;
}

inline bool grid_is_aperiodic(const GridAutomaton& g0) {
    GridAutomaton g = grid_canonicalize(g0);
    for (const AxisShape& ax : g.axes)
        if (ax.period != 1) return false;
    return true;
}

/// Canonical grids are unique per language, so language equality is
/// structural equality after canonicalization.
inline bool grid_same_language(const GridAutomaton& a, const GridAutomaton& b) {
    detail::check_same_alphabet(a, b);
    GridAutomaton ca = grid_canonicalize(a);
    GridAutomaton cb = grid_canonicalize(b);
    return ca.axes == cb.axes && ca.finals == cb.finals;
}

/// The language consisting of exactly the words with the given letter counts.
inline GridAutomaton grid_word(const ParikhVector& v) {
    std::vector<UnarySet> comp;
    comp.reserve(v.size());
    for (std::uint32_t c : v) comp.push_back(unary_singleton(c));
    return grid_from_products(v.size(), {comp});
}

}  // namespace comaut
