#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace comaut {

/// Per-letter occurrence counts of a word, one entry per alphabet letter.
using ParikhVector = std::vector<std::uint32_t>;

inline bool componentwise_le(const ParikhVector& a, const ParikhVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("componentwise_le: arity mismatch");
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

inline ParikhVector componentwise_add(const ParikhVector& a, const ParikhVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("componentwise_add: arity mismatch");
    ParikhVector r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
    return r;
}

inline std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
    std::uint64_t g = std::gcd(a, b);
    std::uint64_t l = (a / g) * b;
    if (l > (std::uint64_t{1} << 32))
        throw std::overflow_error("lcm overflow: periods too large");
    return l;
}

/// An ultimately periodic subset of the naturals: after `index`, membership
/// repeats with `period`. `membership` stores exactly the first index+period
/// bits. Canonical means both index and period are minimal.
struct UnarySet {
    std::uint32_t index = 0;
    std::uint32_t period = 1;
    std::vector<bool> membership{false};

    bool contains(std::uint64_t m) const {
        if (m < membership.size()) return membership[static_cast<std::size_t>(m)];
        return membership[index + static_cast<std::size_t>((m - index) % period)];
    }

    bool none() const {
        for (bool b : membership)
            if (b) return false;
        return true;
    }

    bool operator==(const UnarySet&) const = default;
};

inline UnarySet unary_empty() { return UnarySet{0, 1, {false}}; }
inline UnarySet unary_full() { return UnarySet{0, 1, {true}}; }

/// Fold a prefix of an infinite eventually periodic characteristic sequence
/// into the unique minimal (index, period) representation. The caller
/// guarantees the infinite set has index <= max_index and some period
/// <= max_period; under that guarantee the prefix determines the set.
inline UnarySet unary_canonicalize(const std::vector<bool>& bits,
                                   std::uint32_t max_index, std::uint32_t max_period) {
    if (max_period == 0)
        throw std::invalid_argument("unary_canonicalize: max_period must be positive");
    if (bits.size() < static_cast<std::size_t>(max_index) + 2u * max_period)
        throw std::invalid_argument("unary_canonicalize: need at least max_index + 2*max_period bits");

    // Any p passing this window test is a true eventual period: the window
    // [max_index, size-p) is at least max_period + p long, which pins down
    // all residues of the guaranteed period.
    std::uint32_t period = 0;
    for (std::uint32_t p = 1; p <= max_period; ++p) {
        bool ok = true;
        for (std::size_t m = max_index; ok && m + p < bits.size(); ++m)
            ok = bits[m] == bits[m + p];
        if (ok) {
            period = p;
            break;
        }
    }
    if (period == 0)
        throw std::invalid_argument(
            "unary_canonicalize: no period <= max_period is consistent with the bits");

    std::uint32_t index = max_index;
    while (index > 0 && bits[index - 1] == bits[index - 1 + period]) --index;

    UnarySet s;
    s.index = index;
    s.period = period;
    s.membership.assign(bits.begin(), bits.begin() + (index + period));
    return s;
}

/// The singleton {n}.
inline UnarySet unary_singleton(std::uint32_t n) {
    std::vector<bool> bits(static_cast<std::size_t>(n) + 3, false);
    bits[n] = true;
    return unary_canonicalize(bits, n + 1, 1);
}

/// The arithmetic progression {first + step*t : t >= 0}; models a^first (a^step)*.
inline UnarySet unary_progression(std::uint32_t first, std::uint32_t step) {
    if (step == 0) throw std::invalid_argument("unary_progression: step must be positive");
    std::vector<bool> bits(static_cast<std::size_t>(first) + 2u * step, false);
    for (std::size_t m = first; m < bits.size(); m += step) bits[m] = true;
    return unary_canonicalize(bits, first, step);
}

namespace detail {
template <typename F>
UnarySet unary_pointwise(const UnarySet& a, const UnarySet& b, F&& f) {
    std::uint32_t max_index = std::max(a.index, b.index);
    std::uint32_t max_period = static_cast<std::uint32_t>(checked_lcm(a.period, b.period));
    std::vector<bool> bits(static_cast<std::size_t>(max_index) + 2u * max_period);
    for (std::size_t m = 0; m < bits.size(); ++m) bits[m] = f(a.contains(m), b.contains(m));
    return unary_canonicalize(bits, max_index, max_period);
}
}  // namespace detail

inline UnarySet unary_union(const UnarySet& a, const UnarySet& b) {
    return detail::unary_pointwise(a, b, [](bool x, bool y) { return x || y; });
}

inline UnarySet unary_intersection(const UnarySet& a, const UnarySet& b) {
    return detail::unary_pointwise(a, b, [](bool x, bool y) { return x && y; });
}

inline UnarySet unary_complement(const UnarySet& a) {
    std::vector<bool> bits(static_cast<std::size_t>(a.index) + 2u * a.period);
    for (std::size_t m = 0; m < bits.size(); ++m) bits[m] = !a.contains(m);
    return unary_canonicalize(bits, a.index, a.period);
}

/// { m+n : m in a, n in b }. The sum of two eventually periodic sets is
/// eventually lcm(p_a,p_b)-periodic; every pair of periodic-tail progressions
/// stabilises within a Frobenius bound of p_a*p_b past the indices, so the
/// enumeration horizon below is sufficient for exact canonicalization.
inline UnarySet unary_minkowski_sum(const UnarySet& a, const UnarySet& b) {
    if (a.none() || b.none()) return unary_empty();
    std::uint64_t max_period = checked_lcm(a.period, b.period);
    std::uint64_t max_index = std::uint64_t{a.index} + b.index + a.period + b.period +
                              std::uint64_t{a.period} * b.period;
    std::uint64_t len = max_index + 2 * max_period;
    if (len > (std::uint64_t{1} << 24))
        throw std::overflow_error("unary_minkowski_sum: operands too large");

    std::vector<bool> abits(len), bbits(len);
    for (std::size_t m = 0; m < len; ++m) {
        abits[m] = a.contains(m);
        bbits[m] = b.contains(m);
    }
    std::vector<bool> bits(len, false);
    for (std::size_t x = 0; x < len; ++x) {
        if (!abits[x]) continue;
        for (std::size_t y = 0; x + y < len; ++y)
            if (bbits[y]) bits[x + y] = true;
    }
    return unary_canonicalize(bits, static_cast<std::uint32_t>(max_index),
                              static_cast<std::uint32_t>(max_period));
}

}  // namespace comaut
