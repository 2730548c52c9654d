#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "comaut/grid.hpp"

namespace comaut {

/// Deliberately naive reference semantics over a finite Parikh box. Every
/// grid operation is validated against these set-level computations.
struct BoxLanguage {
    std::size_t k = 0;
    ParikhVector bound;         // inclusive corner; vectors v with v <= bound
    std::vector<char> bits;     // row-major over dims bound[j]+1

    std::vector<std::uint64_t> strides;

    BoxLanguage() = default;
    explicit BoxLanguage(ParikhVector corner)
        : k(corner.size()), bound(std::move(corner)), strides(k) {
        std::uint64_t size = 1;
        for (std::size_t j = k; j-- > 0;) {
            strides[j] = size;
            size *= std::uint64_t{bound[j]} + 1;
            if (size > detail::kMaxGridCells) throw std::overflow_error("oracle box too large");
        }
        bits.assign(size, 0);
    }

    std::uint64_t rank(const ParikhVector& v) const {
        std::uint64_t r = 0;
        for (std::size_t j = 0; j < k; ++j) r += v[j] * strides[j];
        return r;
    }

    std::uint32_t coord(std::uint64_t r, std::size_t j) const {
        return static_cast<std::uint32_t>((r / strides[j]) % (std::uint64_t{bound[j]} + 1));
    }

    bool contains(const ParikhVector& v) const {
        if (v.size() != k) throw std::invalid_argument("BoxLanguage: arity mismatch");
        for (std::size_t j = 0; j < k; ++j)
            if (v[j] > bound[j]) return false;
        return bits[rank(v)] != 0;
    }

    void insert(const ParikhVector& v) { bits[rank(v)] = 1; }

    bool next(ParikhVector& v) const {
        for (std::size_t j = k; j-- > 0;) {
            if (++v[j] <= bound[j]) return true;
            v[j] = 0;
        }
        return false;
    }

    std::uint64_t size() const { return bits.size(); }
};

inline BoxLanguage box_from_grid(const GridAutomaton& g, const ParikhVector& corner) {
    if (corner.size() != g.alphabet_size)
        throw std::invalid_argument("box_from_grid: arity mismatch");
    BoxLanguage b(corner);
    ParikhVector v(b.k, 0);
    for (std::uint64_t r = 0;; ++r) {
        b.bits[r] = grid_membership(g, v);
        if (!b.next(v)) break;
    }
    return b;
}

namespace detail {

inline void check_same_box(const BoxLanguage& a, const BoxLanguage& b) {
    if (a.bound != b.bound)
        throw std::invalid_argument("box operation: bound mismatch");
}

/// Restrict to a smaller corner.
inline BoxLanguage box_restrict(const BoxLanguage& a, const ParikhVector& corner) {
    if (!componentwise_le(corner, a.bound))
        throw std::invalid_argument("box_restrict: corner exceeds operand bound");
    BoxLanguage r(corner);
    ParikhVector v(r.k, 0);
    for (std::uint64_t i = 0;; ++i) {
        r.bits[i] = a.bits[a.rank(v)];
        if (!r.next(v)) break;
    }
    return r;
}

}  // namespace detail

inline BoxLanguage box_union(const BoxLanguage& a, const BoxLanguage& b) {
    detail::check_same_box(a, b);
    BoxLanguage r = a;
    for (std::uint64_t i = 0; i < r.bits.size(); ++i) r.bits[i] |= b.bits[i];
    return r;
}

inline BoxLanguage box_intersection(const BoxLanguage& a, const BoxLanguage& b) {
    detail::check_same_box(a, b);
    BoxLanguage r = a;
    for (std::uint64_t i = 0; i < r.bits.size(); ++i) r.bits[i] &= b.bits[i];
    return r;
}

inline BoxLanguage box_complement(const BoxLanguage& a) {
    BoxLanguage r = a;
    for (std::uint64_t i = 0; i < r.bits.size(); ++i) r.bits[i] = !r.bits[i];
    return r;
}

inline BoxLanguage box_projection(const BoxLanguage& a, const std::vector<bool>& keep) {
    if (keep.size() != a.k) throw std::invalid_argument("box_projection: arity mismatch");
    ParikhVector corner;
    for (std::size_t j = 0; j < a.k; ++j)
        if (keep[j]) corner.push_back(a.bound[j]);
    BoxLanguage r(std::move(corner));
    ParikhVector v(a.k, 0), p(r.k);
    for (std::uint64_t i = 0;; ++i) {
        if (a.bits[i]) {
            std::size_t out = 0;
            for (std::size_t j = 0; j < a.k; ++j)
                if (keep[j]) p[out++] = v[j];
            r.insert(p);
        }
        if (!a.next(v)) break;
    }
    return r;
}

/// { u+v : u in a, v in b, u+v <= corner }. For commutative languages the
/// Parikh image of the shuffle is exactly this vector sum.
inline BoxLanguage box_minkowski(const BoxLanguage& a, const BoxLanguage& b,
                                 const ParikhVector& corner) {
    if (a.k != b.k || corner.size() != a.k)
        throw std::invalid_argument("box_minkowski: arity mismatch");
    BoxLanguage r(corner);
    ParikhVector u(a.k, 0);
    for (std::uint64_t i = 0;; ++i) {
        if (a.bits[i] && componentwise_le(u, corner)) {
            ParikhVector v(b.k, 0), s(a.k);
            for (std::uint64_t l = 0;; ++l) {
                if (b.bits[l]) {
                    bool in = true;
                    for (std::size_t j = 0; j < a.k && in; ++j) {
                        s[j] = u[j] + v[j];
                        in = s[j] <= corner[j];
                    }
                    if (in) r.insert(s);
                }
                if (!b.next(v)) break;
            }
        }
        if (!a.next(u)) break;
    }
    return r;
}

/// Vectors of the result box that dominate some member of a.
inline BoxLanguage box_up_closure(const BoxLanguage& a, const ParikhVector& corner) {
    BoxLanguage r = detail::box_restrict(a, corner);
    // one ascending sweep per axis: mark v+e_j from every marked v
    for (std::size_t j = 0; j < r.k; ++j)
        for (std::uint64_t i = 0; i < r.bits.size(); ++i)
            if (r.bits[i] && r.coord(i, j) < r.bound[j]) r.bits[i + r.strides[j]] = 1;
    return r;
}

/// Vectors of the result box dominated by some member of a; a's own bound
/// must dominate the corner (and, for exactness of the infinite semantics,
/// the saturation corner of the grid it came from).
inline BoxLanguage box_down_closure(const BoxLanguage& a, const ParikhVector& corner) {
    BoxLanguage full = a;
    // one descending sweep per axis: mark v-e_j from every marked v
    for (std::size_t j = 0; j < full.k; ++j)
        for (std::uint64_t i = full.bits.size(); i-- > 0;)
            if (full.bits[i] && full.coord(i, j) > 0) full.bits[i - full.strides[j]] = 1;
    return detail::box_restrict(full, corner);
}

/// Largest up-closed subset of a, restricted to the corner. Computed through
/// the complement duality; a must be given over a bound that dominates both
/// the corner and the saturation corner of the underlying grid.
inline BoxLanguage box_upward_interior(const BoxLanguage& a, const ParikhVector& corner) {
    return box_complement(box_down_closure(box_complement(a), corner));
}

/// Largest down-closed subset of a, restricted to the corner.
inline BoxLanguage box_downward_interior(const BoxLanguage& a, const ParikhVector& corner) {
    return box_complement(box_up_closure(box_complement(a), corner));
}

/// Membership agreement between a grid and an expected box language on every
/// vector of the box; also requires the box corner to dominate the grid's
/// saturation corner, so the periodic tail beyond the box is pinned down.
inline bool oracle_equiv(const GridAutomaton& g, const BoxLanguage& expected) {
    if (g.alphabet_size != expected.k) return false;
    for (std::size_t j = 0; j < g.alphabet_size; ++j)
        if (expected.bound[j] + 1 < g.axes[j].state_count()) return false;
    ParikhVector v(expected.k, 0);
    for (std::uint64_t i = 0;; ++i) {
        if (bool(expected.bits[i]) != grid_membership(g, v)) return false;
        if (!expected.next(v)) break;
    }
    return true;
}

/// All interleavings of two words (the word-level shuffle definition); test
/// support for cross-checking box_minkowski.
inline std::set<std::string> word_shuffle(const std::string& u, const std::string& v) {
    if (u.empty()) return {v};
    if (v.empty()) return {u};
    std::set<std::string> out;
    for (const std::string& w : word_shuffle(u.substr(1), v)) out.insert(u[0] + w);
    for (const std::string& w : word_shuffle(u, v.substr(1))) out.insert(v[0] + w);
    return out;
}

}  // namespace comaut
