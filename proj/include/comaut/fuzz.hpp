#pragma once

#include <cstdint>
#include <sstream>
#include <string>

#include "comaut/grid.hpp"
#include "comaut/json_io.hpp"
#include "comaut/oracle.hpp"
#include "comaut/sampling.hpp"

namespace comaut {

enum class GridOp {
    Union,
    Intersection,
    Complement,
    Shuffle,
    Projection,
    UpClosure,
    DownClosure,
    UpInterior,
    DownInterior,
};

constexpr GridOp kAllGridOps[] = {
    GridOp::Union,      GridOp::Intersection, GridOp::Complement,
    GridOp::Shuffle,    GridOp::Projection,   GridOp::UpClosure,
    GridOp::DownClosure, GridOp::UpInterior,  GridOp::DownInterior,
};

inline const char* to_string(GridOp op) {
    switch (op) {
        case GridOp::Union: return "union";
        case GridOp::Intersection: return "intersection";
        case GridOp::Complement: return "complement";
        case GridOp::Shuffle: return "shuffle";
        case GridOp::Projection: return "projection";
        case GridOp::UpClosure: return "up-closure";
        case GridOp::DownClosure: return "down-closure";
        case GridOp::UpInterior: return "up-interior";
        case GridOp::DownInterior: return "down-interior";
    }
    return "?";
}

inline bool is_binary(GridOp op) {
    return op == GridOp::Union || op == GridOp::Intersection || op == GridOp::Shuffle;
}

inline GridAutomaton apply_grid_op(GridOp op, const GridAutomaton& a, const GridAutomaton& b,
                                   const std::vector<bool>& keep) {
    switch (op) {
        case GridOp::Union: return grid_union(a, b);
        case GridOp::Intersection: return grid_intersection(a, b);
        case GridOp::Complement: return grid_complement(a);
        case GridOp::Shuffle: return grid_shuffle(a, b);
        case GridOp::Projection: return grid_projection(a, keep);
        case GridOp::UpClosure: return grid_upward_closure(a);
        case GridOp::DownClosure: return grid_downward_closure(a);
        case GridOp::UpInterior: return grid_upward_interior(a);
        case GridOp::DownInterior: return grid_downward_interior(a);
    }
    throw std::logic_error("apply_grid_op: unknown op");
}

namespace detail {

/// Corner comfortably past the saturation point of every axis: one full extra
/// period beyond index + period, plus slack.
inline ParikhVector oracle_corner(const GridAutomaton& g) {
    ParikhVector c(g.alphabet_size);
    for (std::size_t j = 0; j < g.alphabet_size; ++j)
        c[j] = g.axes[j].index + 2 * g.axes[j].period + 4;
    return c;
}

/// Corner for downward witness search: any member above v reduces, one period
/// step at a time, to a member u with u_j <= max(v_j, index_j) + period_j - 1,
/// so searching one period past max(corner, saturation) is complete.
inline ParikhVector corner_max(ParikhVector a, const GridAutomaton& g) {
    for (std::size_t j = 0; j < a.size(); ++j)
        a[j] = std::max(a[j], g.axes[j].index + g.axes[j].period - 1) + g.axes[j].period;
    return a;
}

}  // namespace detail

/// The box-oracle prediction for an operation, evaluated on the result box
/// with corner `corner` (the operands are read over sufficiently larger
/// boxes where the operation needs witnesses beyond the corner).
inline BoxLanguage oracle_expected(GridOp op, const GridAutomaton& a, const GridAutomaton& b,
                                   const std::vector<bool>& keep, const ParikhVector& corner) {
    switch (op) {
        case GridOp::Union:
            return box_union(box_from_grid(a, corner), box_from_grid(b, corner));
        case GridOp::Intersection:
            return box_intersection(box_from_grid(a, corner), box_from_grid(b, corner));
        case GridOp::Complement:
            return box_complement(box_from_grid(a, corner));
        case GridOp::Shuffle:
            return box_minkowski(box_from_grid(a, corner), box_from_grid(b, corner), corner);
        case GridOp::Projection: {
            ParikhVector full(a.alphabet_size);
            std::size_t out = 0;
            for (std::size_t j = 0; j < a.alphabet_size; ++j)
                full[j] = keep[j] ? corner[out++]
                                  : a.axes[j].index + a.axes[j].period;  // witness saturation
            return box_projection(box_from_grid(a, full), keep);
        }
        case GridOp::UpClosure:
            return box_up_closure(box_from_grid(a, corner), corner);
        case GridOp::DownClosure:
            return box_down_closure(box_from_grid(a, detail::corner_max(corner, a)), corner);
        case GridOp::UpInterior:
            return box_upward_interior(box_from_grid(a, detail::corner_max(corner, a)), corner);
        case GridOp::DownInterior:
            return box_downward_interior(box_from_grid(a, corner), corner);
    }
    throw std::logic_error("oracle_expected: unknown op");
}

struct OpCheck {
    GridAutomaton result;
    bool ok = false;
    std::string detail;  // first mismatching vector, when not ok
};

/// Run one grid operation and compare against the box oracle over the result
/// box (zero tolerance).
inline OpCheck check_op_against_oracle(GridOp op, const GridAutomaton& a, const GridAutomaton& b,
                                       const std::vector<bool>& keep) {
    OpCheck c;
    c.result = apply_grid_op(op, a, b, keep);
    ParikhVector corner = detail::oracle_corner(c.result);
    BoxLanguage expected = oracle_expected(op, a, b, keep, corner);
    c.ok = oracle_equiv(c.result, expected);
    if (!c.ok) {
        ParikhVector v(expected.k, 0);
        while (true) {
            if (bool(expected.contains(v)) != grid_membership(c.result, v)) {
                std::ostringstream os;
                os << "vector (";
                for (std::size_t j = 0; j < v.size(); ++j) os << (j ? "," : "") << v[j];
                os << "): grid=" << (grid_membership(c.result, v) ? "yes" : "no")
                   << " oracle=" << (expected.contains(v) ? "yes" : "no");
                c.detail = os.str();
                break;
            }
            if (!expected.next(v)) break;
        }
        if (c.detail.empty()) c.detail = "box corner does not dominate the result grid";
    }
    return c;
}

struct FuzzOptions {
    std::uint64_t seed = 0;
    std::size_t cases = 100;
    std::size_t max_k = 3;
    std::uint32_t max_index = 3;
    std::uint32_t max_period = 3;
};

struct FuzzResult {
    bool ok = true;
    std::size_t cases_run = 0;
    std::string report;  // deterministic full text, counterexample included on failure
};

/// Oracle-equivalence fuzzing over random canonical grids: every operation of
/// every case must agree with the box oracle on the whole result box.
inline FuzzResult run_oracle_fuzz(const FuzzOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    FuzzResult res;
    std::ostringstream out;
    out << "fuzz seed=" << opt.seed << " cases=" << opt.cases << " k<=" << opt.max_k
        << " max-index=" << opt.max_index << " max-period=" << opt.max_period << "\n";
    for (std::size_t i = 0; i < opt.cases && res.ok; ++i) {
        std::size_t k = 1 + sampling::below(rng, opt.max_k);
        GridAutomaton a = sampling::random_canonical_grid(rng, k, opt.max_index, opt.max_period);
        GridAutomaton b = sampling::random_canonical_grid(rng, k, opt.max_index, opt.max_period);
        std::vector<bool> keep = sampling::random_letter_subset(rng, k);
        for (GridOp op : kAllGridOps) {
            OpCheck c = check_op_against_oracle(op, a, b, keep);
            if (!c.ok) {
                res.ok = false;
                out << "counterexample: case " << i << " op=" << to_string(op) << " " << c.detail
                    << "\n";
                out << "operand A = " << grid_to_json(a).dump() << "\n";
                if (is_binary(op)) out << "operand B = " << grid_to_json(b).dump() << "\n";
                if (op == GridOp::Projection) {
                    out << "projection letters = {";
                    for (std::size_t j = 0; j < k; ++j)
                        if (keep[j]) out << static_cast<char>('a' + j);
                    out << "}\n";
                }
                break;
            }
        }
        ++res.cases_run;
    }
    if (res.ok)
        out << "ok: " << res.cases_run << " cases, " << sizeof(kAllGridOps) / sizeof(GridOp)
            << " operations each, zero mismatches\n";
    else
        out << "failed after " << res.cases_run << " cases\n";
    res.report = out.str();
    return res;
}

}  // namespace comaut
