#pragma once

#include <string>

#include <json.hpp>

#include "comaut/grid.hpp"

namespace comaut {

/// Grid JSON schema: {"alphabet": ["a","b"], "axes": [{"index":i,"period":p},...],
/// "finals": [[...],...]} with finals in lexicographic order.
inline nlohmann::json grid_to_json(const GridAutomaton& g, const std::string& letters = "") {
    nlohmann::json j;
    j["alphabet"] = nlohmann::json::array();
    for (std::size_t i = 0; i < g.alphabet_size; ++i) {
        char c = i < letters.size() ? letters[i] : static_cast<char>('a' + i);
        j["alphabet"].push_back(std::string(1, c));
    }
    j["axes"] = nlohmann::json::array();
    for (const AxisShape& ax : g.axes)
        j["axes"].push_back({{"index", ax.index}, {"period", ax.period}});
    j["finals"] = nlohmann::json::array();
    GridAutomaton sorted = g;
    detail::sort_finals(sorted);
    for (const ParikhVector& f : sorted.finals) {
        nlohmann::json t = nlohmann::json::array();
        for (std::uint32_t c : f) t.push_back(c);
        j["finals"].push_back(t);
    }
    return j;
}

struct GridWithLetters {
    GridAutomaton grid;
    std::string letters;
};

inline GridWithLetters grid_from_json(const nlohmann::json& j) {
    GridWithLetters out;
    const auto& alphabet = j.at("alphabet");
    const auto& axes = j.at("axes");
    const auto& finals = j.at("finals");
    if (!alphabet.is_array() || !axes.is_array() || !finals.is_array())
        throw std::invalid_argument("grid json: alphabet, axes and finals must be arrays");
    if (alphabet.size() != axes.size())
        throw std::invalid_argument("grid json: alphabet and axes must have the same length");
    out.grid.alphabet_size = alphabet.size();
    for (const auto& l : alphabet) {
        std::string s = l.get<std::string>();
        if (s.size() != 1)
            throw std::invalid_argument("grid json: alphabet entries must be single characters");
        out.letters += s;
    }
    for (const auto& ax : axes) {
        AxisShape shape;
        shape.index = ax.at("index").get<std::uint32_t>();
        shape.period = ax.at("period").get<std::uint32_t>();
        if (shape.period == 0) throw std::invalid_argument("grid json: period must be positive");
        out.grid.axes.push_back(shape);
    }
    for (const auto& f : finals) {
        if (!f.is_array() || f.size() != out.grid.alphabet_size)
            throw std::invalid_argument("grid json: final tuple arity mismatch");
        ParikhVector t;
        for (const auto& c : f) {
            t.push_back(c.get<std::uint32_t>());
            if (t.back() >= out.grid.axes[t.size() - 1].state_count())
                throw std::invalid_argument("grid json: final tuple outside the grid box");
        }
        out.grid.finals.push_back(std::move(t));
    }
    detail::sort_finals(out.grid);
    return out;
}

}  // namespace comaut
