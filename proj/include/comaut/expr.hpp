#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "comaut/grid.hpp"

namespace comaut {

/// Position-annotated syntax error; positions are 0-based offsets into the
/// expression text.
struct LangParseError : std::runtime_error {
    std::size_t pos;
    LangParseError(std::size_t p, const std::string& msg)
        : std::runtime_error(msg), pos(p) {}
};

/// A grid operation failed while evaluating the node at `pos`.
struct LangEvalError : std::runtime_error {
    std::size_t pos;
    LangEvalError(std::size_t p, const std::string& msg)
        : std::runtime_error(msg), pos(p) {}
};

/// AST of the expression language over the grid operations.
struct LangExpr {
    enum class Kind {
        UnaryAtom,     // letter with exponent set {offset} or offset + period*t
        WordAtom,      // fixed Parikh vector (eps is the zero vector)
        SigmaStar,
        Empty,
        Shuffle,
        Union,
        Intersection,
        Complement,
        UpClose,
        DownClose,
        UpInterior,
        DownInterior,
        Projection,
    };

    Kind kind;
    std::size_t pos = 0;                 // source offset, for error context
    std::size_t letter = 0;              // UnaryAtom
    bool finite = false;                 // UnaryAtom: exactly `offset` letters
    std::uint32_t offset = 0, period = 1;
    ParikhVector word;                   // WordAtom
    std::vector<bool> keep;              // Projection
    std::vector<LangExpr> children;
};

namespace detail {

class ExprParser {
public:
    ExprParser(std::string_view text, std::string_view alphabet)
        : text_(text), alphabet_(alphabet) {}

    LangExpr parse() {
        skip_ws();
        if (pos_ >= text_.size()) throw LangParseError(0, "empty input");
        LangExpr e = parse_union();
        skip_ws();
        if (pos_ < text_.size())
            throw LangParseError(pos_, "unexpected trailing input");
        return e;
    }

private:
    std::string_view text_;
    std::string_view alphabet_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool try_consume(std::string_view tok) {
        skip_ws();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(char c, const std::string& what) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw LangParseError(pos_, "expected '" + std::string(1, c) + "' " + what);
        ++pos_;
    }

    std::uint32_t parse_nat() {
        skip_ws();
        if (pos_ >= text_.size() || !isdigit(static_cast<unsigned char>(text_[pos_])))
            throw LangParseError(pos_, "expected a number");
        std::uint64_t n = 0;
        while (pos_ < text_.size() && isdigit(static_cast<unsigned char>(text_[pos_]))) {
            n = n * 10 + (text_[pos_] - '0');
            if (n > 1'000'000) throw LangParseError(pos_, "number too large");
            ++pos_;
        }
        return static_cast<std::uint32_t>(n);
    }

    // expr := term { "|" term }
    LangExpr parse_union() {
        LangExpr e = parse_term();
        while (try_consume("|")) {
            LangExpr r;
            r.kind = LangExpr::Kind::Union;
            r.pos = e.pos;
            r.children.push_back(std::move(e));
            r.children.push_back(parse_term());
            e = std::move(r);
        }
        return e;
    }

    // term := shuf { "&" shuf }
    LangExpr parse_term() {
        LangExpr e = parse_shuffle();
        while (try_consume("&")) {
            LangExpr r;
            r.kind = LangExpr::Kind::Intersection;
            r.pos = e.pos;
            r.children.push_back(std::move(e));
            r.children.push_back(parse_shuffle());
            e = std::move(r);
        }
        return e;
    }

    // shuffle binds tighter than & and |, left-associative
    LangExpr parse_shuffle() {
        LangExpr e = parse_factor();
        while (try_consume("<>")) {
            LangExpr r;
            r.kind = LangExpr::Kind::Shuffle;
            r.pos = e.pos;
            r.children.push_back(std::move(e));
            r.children.push_back(parse_factor());
            e = std::move(r);
        }
        return e;
    }

    LangExpr wrap(LangExpr::Kind kind, std::size_t at) {
        expect('(', "after operator name");
        LangExpr r;
        r.kind = kind;
        r.pos = at;
        r.children.push_back(parse_union());
        expect(')', "to close the operator argument");
        return r;
    }

    LangExpr parse_factor() {
        skip_ws();
        std::size_t at = pos_;
        if (pos_ >= text_.size()) throw LangParseError(at, "expected an expression");

        if (try_consume("!")) {
            LangExpr r;
            r.kind = LangExpr::Kind::Complement;
            r.pos = at;
            r.children.push_back(parse_factor());
            return r;
        }
        // Letter atoms are LETTER '{' ...; check before keywords so a declared
        // letter like 'u' still parses as an atom.
        if (pos_ + 1 < text_.size() && alphabet_.find(text_[pos_]) != std::string_view::npos &&
            text_[pos_ + 1] == '{')
            return parse_atom();
        if (try_consume("upint")) return wrap(LangExpr::Kind::UpInterior, at);
        if (try_consume("downint")) return wrap(LangExpr::Kind::DownInterior, at);
        if (try_consume("up")) return wrap(LangExpr::Kind::UpClose, at);
        if (try_consume("down")) return wrap(LangExpr::Kind::DownClose, at);
        if (try_consume("proj")) {
            expect('{', "after proj");
            LangExpr r;
            r.kind = LangExpr::Kind::Projection;
            r.pos = at;
            r.keep.assign(alphabet_.size(), false);
            skip_ws();
            while (pos_ < text_.size() && text_[pos_] != '}') {
                std::size_t l = alphabet_.find(text_[pos_]);
                if (l == std::string_view::npos)
                    throw LangParseError(pos_, std::string("unknown letter '") + text_[pos_] +
                                                   "' in projection set");
                r.keep[l] = true;
                ++pos_;
                skip_ws();
            }
            expect('}', "to close the projection letter set");
            expect('(', "after the projection letter set");
            r.children.push_back(parse_union());
            expect(')', "to close the projection argument");
            return r;
        }
        if (try_consume("sigma*")) {
            LangExpr r;
            r.kind = LangExpr::Kind::SigmaStar;
            r.pos = at;
            return r;
        }
        if (try_consume("empty")) {
            LangExpr r;
            r.kind = LangExpr::Kind::Empty;
            r.pos = at;
            return r;
        }
        if (try_consume("eps")) {
            LangExpr r;
            r.kind = LangExpr::Kind::WordAtom;
            r.pos = at;
            r.word.assign(alphabet_.size(), 0);
            return r;
        }
        if (try_consume("(")) {
            LangExpr e = parse_union();
            expect(')', "to close the group");
            return e;
        }
        return parse_atom();
    }

    // atom := LETTER "{" NAT "}" | LETTER "{" NAT "+" NAT "}"
    LangExpr parse_atom() {
        skip_ws();
        std::size_t at = pos_;
        if (pos_ >= text_.size())
            throw LangParseError(at, "expected an atom");
        char c = text_[pos_];
        std::size_t l = alphabet_.find(c);
        if (l == std::string_view::npos)
            throw LangParseError(at, std::string("unknown letter '") + c + "'");
        ++pos_;
        expect('{', "after the letter");
        LangExpr r;
        r.kind = LangExpr::Kind::UnaryAtom;
        r.pos = at;
        r.letter = l;
        r.offset = parse_nat();
        skip_ws();
        if (try_consume("+")) {
            r.finite = false;
            r.period = parse_nat();
            if (r.period == 0) throw LangParseError(pos_, "period must be positive");
        } else {
            r.finite = true;
            r.period = 1;
        }
        expect('}', "to close the atom");
        return r;
    }
};

}  // namespace detail

inline LangExpr parse(std::string_view text, std::string_view alphabet) {
    return detail::ExprParser(text, alphabet).parse();
}

namespace detail {
inline GridAutomaton eval_node(const LangExpr& e, std::size_t k);
}

/// Evaluate an expression to a canonical grid over a k-letter alphabet.
/// Grid errors are rethrown with the position of the innermost failing node.
inline GridAutomaton eval(const LangExpr& e, std::size_t k) {
    try {
        return detail::eval_node(e, k);
    } catch (const LangEvalError&) {
        throw;
    } catch (const std::exception& err) {
        throw LangEvalError(e.pos, err.what());
    }
}

namespace detail {

inline GridAutomaton eval_node(const LangExpr& e, std::size_t k) {
    switch (e.kind) {
        case LangExpr::Kind::UnaryAtom: {
            if (e.letter >= k) throw std::invalid_argument("eval: letter outside the alphabet");
            std::vector<UnarySet> comp(k, unary_singleton(0));
            comp[e.letter] = e.finite ? unary_singleton(e.offset)
                                      : unary_progression(e.offset, e.period);
            return grid_from_products(k, {comp});
        }
        case LangExpr::Kind::WordAtom:
            return grid_word(e.word);
        case LangExpr::Kind::SigmaStar:
            return grid_sigma_star(k);
        case LangExpr::Kind::Empty:
            return grid_empty(k);
        case LangExpr::Kind::Shuffle:
            return grid_shuffle(eval(e.children[0], k), eval(e.children[1], k));
        case LangExpr::Kind::Union:
            return grid_union(eval(e.children[0], k), eval(e.children[1], k));
        case LangExpr::Kind::Intersection:
            return grid_intersection(eval(e.children[0], k), eval(e.children[1], k));
        case LangExpr::Kind::Complement:
            return grid_complement(eval(e.children[0], k));
        case LangExpr::Kind::UpClose:
            return grid_upward_closure(eval(e.children[0], k));
        case LangExpr::Kind::DownClose:
            return grid_downward_closure(eval(e.children[0], k));
        case LangExpr::Kind::UpInterior:
            return grid_upward_interior(eval(e.children[0], k));
        case LangExpr::Kind::DownInterior:
            return grid_downward_interior(eval(e.children[0], k));
        case LangExpr::Kind::Projection:
            return grid_projection(eval(e.children[0], k), e.keep);
    }
    throw std::logic_error("eval: unknown node kind");
}

inline std::string render_unary(const UnarySet& s, char letter) {
    std::ostringstream os;
    bool first = true;
    for (std::uint32_t m = 0; m < s.index; ++m)
        if (s.membership[m]) {
            os << (first ? "" : " | ") << letter << '{' << m << '}';
            first = false;
        }
    for (std::uint32_t r = s.index; r < s.index + s.period; ++r)
        if (s.membership[r]) {
            os << (first ? "" : " | ") << letter << '{' << r << '+' << s.period << '}';
            first = false;
        }
    return os.str();
}

}  // namespace detail

/// Render a grid as an expression that evaluates back to the same language
/// (through the decomposition into per-letter products).
inline std::string render(const GridAutomaton& g, std::string_view alphabet) {
    if (alphabet.size() != g.alphabet_size)
        throw std::invalid_argument("render: alphabet size mismatch");
    auto summands = grid_decompose(g);
    if (summands.empty()) return "empty";
    std::ostringstream os;
    for (std::size_t i = 0; i < summands.size(); ++i) {
        if (i) os << " | ";
        if (g.alphabet_size == 0) {
            os << "eps";
            continue;
        }
        for (std::size_t j = 0; j < g.alphabet_size; ++j) {
            if (j) os << " <> ";
            os << '(' << detail::render_unary(summands[i][j], alphabet[j]) << ')';
        }
    }
    return os.str();
}

}  // namespace comaut
