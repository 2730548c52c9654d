#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "comaut/grid.hpp"

namespace comaut {

/// Explicit complete deterministic automaton, used for exact measurement.
struct Dfa {
    std::size_t alphabet_size = 0;
    std::uint32_t num_states = 0;
    std::uint32_t start = 0;
    std::vector<std::uint32_t> delta;   // num_states x alphabet_size, row-major
    std::vector<char> is_final;         // size num_states
    std::vector<std::string> labels;    // optional; empty or size num_states
    bool minimized = false;

    std::uint32_t step(std::uint32_t s, std::size_t letter) const {
        return delta[s * alphabet_size + letter];
    }
};

/// Product-of-lassos expansion of a grid over its box, states labeled with
/// the grid tuples.
inline Dfa dfa_from_grid(const GridAutomaton& g) {
    detail::Box box = detail::Box::of_grid(g);
    Dfa d;
    d.alphabet_size = g.alphabet_size;
    d.num_states = static_cast<std::uint32_t>(box.size);
    d.start = 0;  // rank of the origin
    d.delta.resize(box.size * g.alphabet_size);
    d.is_final.assign(box.size, 0);
    d.labels.reserve(box.size);
    ParikhVector t(g.alphabet_size, 0);
    for (std::uint64_t r = 0;; ++r) {
        for (std::size_t j = 0; j < g.alphabet_size; ++j) {
            std::uint32_t c = t[j] + 1 < box.dims[j] ? t[j] + 1 : g.axes[j].index;
            std::uint64_t nr = r - std::uint64_t{t[j]} * box.strides[j] +
                               std::uint64_t{c} * box.strides[j];
            d.delta[r * g.alphabet_size + j] = static_cast<std::uint32_t>(nr);
        }
        std::ostringstream label;
        label << '(';
        for (std::size_t j = 0; j < g.alphabet_size; ++j)
            label << (j ? "," : "") << t[j];
        label << ')';
        d.labels.push_back(label.str());
        if (!box.next(t)) break;
    }
    for (const ParikhVector& f : g.finals) d.is_final[box.rank(f)] = 1;
    return d;
}

namespace detail {

inline std::vector<std::uint32_t> reachable_order(const Dfa& d) {
    std::vector<std::uint32_t> order;
    std::vector<char> seen(d.num_states, 0);
    std::queue<std::uint32_t> q;
    q.push(d.start);
    seen[d.start] = 1;
    while (!q.empty()) {
        std::uint32_t s = q.front();
        q.pop();
        order.push_back(s);
        for (std::size_t j = 0; j < d.alphabet_size; ++j) {
            std::uint32_t n = d.step(s, j);
            if (!seen[n]) {
                seen[n] = 1;
                q.push(n);
            }
        }
    }
    return order;
}

}  // namespace detail

/// Moore partition refinement (desk scale; simpler to verify than Hopcroft at
/// the cost of a worst-case factor of n).
inline Dfa dfa_minimize(const Dfa& d) {
    // Restrict to the reachable part first.
    std::vector<std::uint32_t> order = detail::reachable_order(d);
    std::vector<std::uint32_t> id(d.num_states, UINT32_MAX);
    for (std::uint32_t i = 0; i < order.size(); ++i) id[order[i]] = i;
    const std::uint32_t n = static_cast<std::uint32_t>(order.size());

    std::vector<std::uint32_t> cls(n);
    for (std::uint32_t s = 0; s < n; ++s) cls[s] = d.is_final[order[s]] ? 1 : 0;
    std::size_t classes = 2;
    while (true) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
        std::vector<std::uint32_t> next(n);
        std::vector<std::uint32_t> sig(d.alphabet_size + 1);
        for (std::uint32_t s = 0; s < n; ++s) {
            sig[0] = cls[s];
            for (std::size_t j = 0; j < d.alphabet_size; ++j)
                sig[j + 1] = cls[id[d.step(order[s], j)]];
            next[s] = ids.emplace(sig, static_cast<std::uint32_t>(ids.size())).first->second;
        }
        if (ids.size() == classes || next == cls) {
            cls = next;
            break;
        }
        classes = ids.size();
        cls = next;
    }

    // Renumber classes in BFS order from the start class for stable output.
    std::uint32_t num_classes = 0;
    for (std::uint32_t c : cls) num_classes = std::max(num_classes, c + 1);
    std::vector<std::uint32_t> rep(num_classes, UINT32_MAX);
    for (std::uint32_t s = 0; s < n; ++s)
        if (rep[cls[s]] == UINT32_MAX) rep[cls[s]] = s;

    std::vector<std::uint32_t> renum(num_classes, UINT32_MAX);
    std::vector<std::uint32_t> bfs;
    std::queue<std::uint32_t> q;
    renum[cls[0]] = 0;
    bfs.push_back(cls[0]);
    q.push(cls[0]);
    while (!q.empty()) {
        std::uint32_t c = q.front();
        q.pop();
        for (std::size_t j = 0; j < d.alphabet_size; ++j) {
            std::uint32_t t = cls[id[d.step(order[rep[c]], j)]];
            if (renum[t] == UINT32_MAX) {
                renum[t] = static_cast<std::uint32_t>(bfs.size());
                bfs.push_back(t);
                q.push(t);
            }
        }
    }

    Dfa m;
    m.alphabet_size = d.alphabet_size;
    m.num_states = static_cast<std::uint32_t>(bfs.size());
    m.start = 0;
    m.delta.resize(m.num_states * m.alphabet_size);
    m.is_final.assign(m.num_states, 0);
    if (!d.labels.empty()) m.labels.resize(m.num_states);
    for (std::uint32_t i = 0; i < m.num_states; ++i) {
        std::uint32_t s = rep[bfs[i]];
        for (std::size_t j = 0; j < m.alphabet_size; ++j)
            m.delta[i * m.alphabet_size + j] = renum[cls[id[d.step(order[s], j)]]];
        m.is_final[i] = d.is_final[order[s]];
        if (!d.labels.empty()) m.labels[i] = d.labels[order[s]];
    }
    m.minimized = true;
    return m;
}

/// Language equality by reachability over the pair graph.
inline bool dfa_equivalent(const Dfa& a, const Dfa& b) {
    if (a.alphabet_size != b.alphabet_size)
        throw std::invalid_argument("dfa_equivalent: alphabet size mismatch");
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::queue<std::pair<std::uint32_t, std::uint32_t>> q;
    q.emplace(a.start, b.start);
    seen.insert({a.start, b.start});
    while (!q.empty()) {
        auto [s, t] = q.front();
        q.pop();
        if (bool(a.is_final[s]) != bool(b.is_final[t])) return false;
        for (std::size_t j = 0; j < a.alphabet_size; ++j)
            if (seen.insert({a.step(s, j), b.step(t, j)}).second)
                q.emplace(a.step(s, j), b.step(t, j));
    }
    return true;
}

/// Number of states of the minimal complete automaton of the grid's language.
inline std::uint64_t state_complexity(const GridAutomaton& g) {
    return dfa_minimize(dfa_from_grid(g)).num_states;
}

/// Every letter acts as a bijection on the states.
inline bool is_permutation_dfa(const Dfa& d) {
    for (std::size_t j = 0; j < d.alphabet_size; ++j) {
        std::vector<char> hit(d.num_states, 0);
        for (std::uint32_t s = 0; s < d.num_states; ++s) {
            std::uint32_t t = d.step(s, j);
            if (hit[t]) return false;
            hit[t] = 1;
        }
    }
    return true;
}

/// Enumerate the transition monoid and test that every element's power
/// sequence stabilises (cycle length one). Expects a minimized automaton so
/// the monoid is the syntactic monoid of the language.
inline bool is_aperiodic_dfa(const Dfa& d, std::size_t monoid_budget = 100000) {
    const std::uint32_t n = d.num_states;
    using Map = std::vector<std::uint32_t>;
    std::vector<Map> gens(d.alphabet_size, Map(n));
    for (std::size_t j = 0; j < d.alphabet_size; ++j)
        for (std::uint32_t s = 0; s < n; ++s) gens[j][s] = d.step(s, j);

    std::set<Map> monoid;
    std::queue<Map> work;
    for (const Map& g : gens)
        if (monoid.insert(g).second) work.push(g);
    while (!work.empty()) {
        Map w = std::move(work.front());
        work.pop();
        for (const Map& g : gens) {
            Map wa(n);
            for (std::uint32_t s = 0; s < n; ++s) wa[s] = g[w[s]];
            if (monoid.insert(wa).second) {
                if (monoid.size() > monoid_budget)
                    throw std::runtime_error("is_aperiodic_dfa: transition monoid budget exceeded");
                work.push(wa);
            }
        }
    }

    for (const Map& m : monoid) {
        std::map<Map, std::size_t> seen;
        Map p = m;
        std::size_t step = 0;
        while (true) {
            auto [it, inserted] = seen.emplace(p, step);
            if (!inserted) {
                if (step - it->second != 1) return false;  // nontrivial power cycle
                break;
            }
            ++step;
            Map np(n);
            for (std::uint32_t s = 0; s < n; ++s) np[s] = m[p[s]];
            p = std::move(np);
        }
    }
    return true;
}

/// Deterministic DOT rendering; states keep their grid-tuple labels when the
/// automaton came from a grid.
inline std::string dfa_to_dot(const Dfa& d, const std::string& letters = "") {
    std::ostringstream out;
    out << "digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n";
    for (std::uint32_t s = 0; s < d.num_states; ++s) {
        out << "  q" << s << " [shape=" << (d.is_final[s] ? "doublecircle" : "circle");
        if (!d.labels.empty()) out << ", label=\"" << d.labels[s] << '"';
        out << "];\n";
    }
    out << "  __start -> q" << d.start << ";\n";
    for (std::uint32_t s = 0; s < d.num_states; ++s) {
        // merge letters sharing a target into one edge
        std::map<std::uint32_t, std::string> edges;
        for (std::size_t j = 0; j < d.alphabet_size; ++j) {
            char name = j < letters.size() ? letters[j] : static_cast<char>('a' + j);
            std::string& lbl = edges[d.step(s, j)];
            if (!lbl.empty()) lbl += ',';
            lbl += name;
        }
        for (const auto& [t, lbl] : edges)
            out << "  q" << s << " -> q" << t << " [label=\"" << lbl << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace comaut
