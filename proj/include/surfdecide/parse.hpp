#pragma once

/**
 * @file parse.hpp
 * @brief Recursive-descent parsers for the text DSL (ordinals, marked
 * end-space expressions, surface descriptors, finite presentations).
 *
 * Every parser consumes the whole input; trailing garbage is an error.
 * Errors carry the byte offset and the set of tokens that would have been
 * accepted there. docs/grammar.md has the EBNF.
 */

#include <surfdecide/homology.hpp>
#include <surfdecide/ordinal.hpp>
#include <surfdecide/surface.hpp>

#include <cctype>
#include <charconv>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace surfdecide {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::set<std::string> expected, const std::string& message)
        : std::runtime_error(message), offset(offset), expected(std::move(expected)) {}

    std::size_t offset;
    std::set<std::string> expected;

    std::string describe() const {
        std::string s = "parse error at offset " + std::to_string(offset) + ": " + what();
        if (!expected.empty()) {
            s += " (expected";
            const char* sep = " ";
            for (const auto& e : expected) {
                s += sep + e;
                sep = " | ";
            }
            s += ")";
        }
        return s;
    }
};

namespace detail {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    std::size_t pos() const { return pos_; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail({std::string("'") + c + "'"}, std::string("expected '") + c + "'");
    }

    /// Identifier made of letters, digits and '_'; empty if none.
    std::string_view word() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    bool accept_word(std::string_view w) {
        const auto save = pos_;
        if (word() == w) return true;
        pos_ = save;
        return false;
    }

    void expect_word(std::string_view w) {
        skip_ws();
        if (!accept_word(w)) fail({std::string(w)}, "expected '" + std::string(w) + "'");
    }

    bool at_digit() { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

    std::uint64_t nat() {
        skip_ws();
        const auto start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail({"nat"}, "expected a natural number");
        std::uint64_t v = 0;
        const auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
        if (ec != std::errc()) fail_at(start, {}, "number out of range");
        return v;
    }

    void finish() {
        if (!at_end()) fail({"end of input"}, "unexpected trailing input");
    }

    [[noreturn]] void fail(std::set<std::string> expected, const std::string& msg) {
        skip_ws();
        fail_at(pos_, std::move(expected), msg);
    }

    [[noreturn]] static void fail_at(std::size_t at, std::set<std::string> expected, const std::string& msg) {
        throw ParseError(at, std::move(expected), msg);
    }

    void reset(std::size_t p) { pos_ = p; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline Ordinal ordinal_expr(Cursor& c);

// atom := nat | 'w'
inline Ordinal ordinal_atom(Cursor& c) {
    if (c.at_digit()) return Ordinal::finite(c.nat());
    if (c.accept('w')) return Ordinal::omega();
    c.fail({"nat", "'w'", "'('"}, "expected an exponent");
}

inline Ordinal ordinal_term(Cursor& c) {
    if (c.at_digit()) return Ordinal::finite(c.nat());
    if (!c.accept('w')) c.fail({"nat", "'w'"}, "expected a term");
    Ordinal exponent = Ordinal::finite(1);
    if (c.accept('^')) {
        if (c.accept('(')) {
            exponent = ordinal_expr(c);
            c.expect(')');
        } else {
            exponent = ordinal_atom(c);
        }
    }
    std::uint64_t coef = 1;
    if (c.accept('*')) coef = c.nat();
    if (coef == 0) return {};
    return Ordinal::omega_pow(exponent, coef);
}

// ordinal := term ('+' term)*
inline Ordinal ordinal_expr(Cursor& c) {
    Ordinal acc = ordinal_term(c);
    while (c.accept('+')) acc = acc + ordinal_term(c);
    return acc;
}

inline Mark mark_name(Cursor& c) {
    const auto at = (c.skip_ws(), c.pos());
    const auto w = c.word();
    if (w == "p") return Mark::Planar;
    if (w == "np") return Mark::Nonplanar;
    Cursor::fail_at(at, {"p", "np"}, "expected a mark");
}

inline Mark leaf_mark(Cursor& c) { return c.accept('!') ? mark_name(c) : Mark::Planar; }

inline Mark point_mark(Cursor& c) { return c.accept(';') ? mark_name(c) : Mark::Planar; }

inline MarkedEndSpace endspace_expr(Cursor& c) {
    c.skip_ws();
    const auto at = c.pos();
    const auto w = c.word();
    if (w == "empty") return MarkedEndSpace::empty();
    if (w == "pt") return MarkedEndSpace::point(leaf_mark(c));
    if (w == "cantor") return MarkedEndSpace::cantor(leaf_mark(c));
    if (w == "I") {
        c.expect('(');
        auto b = ordinal_expr(c);
        c.expect(')');
        return MarkedEndSpace::interval(std::move(b), leaf_mark(c));
    }
    if (w == "U") {
        c.expect('(');
        std::vector<MarkedEndSpace> parts{endspace_expr(c)};
        while (c.accept(',')) parts.push_back(endspace_expr(c));
        c.expect(')');
        return MarkedEndSpace::union_of(std::move(parts));
    }
    if (w == "seq1pc") {
        c.expect('(');
        auto child = endspace_expr(c);
        const auto m = point_mark(c);
        c.expect(')');
        if (child.kind() == MarkedEndSpace::Kind::Empty)
            Cursor::fail_at(at, {}, "seq1pc of an empty space");
        return MarkedEndSpace::seq_compactify(std::move(child), m);
    }
    if (w == "lim1pc") {
        c.expect('(');
        const auto arg_at = (c.skip_ws(), c.pos());
        auto lambda = ordinal_expr(c);
        const auto m = point_mark(c);
        c.expect(')');
        if (lambda.kind() != OrdinalKind::Limit)
            Cursor::fail_at(arg_at, {}, "lim1pc needs a limit ordinal, got " + lambda.to_string());
        return MarkedEndSpace::limit_compactify(std::move(lambda), m);
    }
    Cursor::fail_at(at, {"empty", "pt", "cantor", "I", "U", "seq1pc", "lim1pc"}, "expected an end-space expression");
}

} // namespace detail

inline Ordinal parse_ordinal(std::string_view text) {
    detail::Cursor c(text);
    auto o = detail::ordinal_expr(c);
    c.finish();
    return o;
}

/// Marked expression; unmarked leaves and compactification points are planar.
inline MarkedEndSpace parse_endspace(std::string_view text) {
    detail::Cursor c(text);
    auto e = detail::endspace_expr(c);
    c.finish();
    return e;
}

/// `surface(genus=inf|<n>, boundary=<n>, ends=<expr>)`
inline SurfaceDescriptor parse_surface(std::string_view text) {
    detail::Cursor c(text);
    SurfaceDescriptor d;
    c.expect_word("surface");
    c.expect('(');
    c.expect_word("genus");
    c.expect('=');
    if (c.accept_word("inf"))
        d.genus = Genus::infinite();
    else if (c.at_digit())
        d.genus = Genus(c.nat());
    else
        c.fail({"inf", "nat"}, "expected a genus");
    c.expect(',');
    c.expect_word("boundary");
    c.expect('=');
    d.boundary = c.nat();
    c.expect(',');
    c.expect_word("ends");
    c.expect('=');
    d.ends = detail::endspace_expr(c);
    c.expect(')');
    c.finish();
    return d;
}

/// `gens=<n>; rel=<signed ints>; rel=...` (an empty relator is written `rel=`).
inline FinitePresentation parse_presentation(std::string_view text) {
    detail::Cursor c(text);
    FinitePresentation p;
    c.expect_word("gens");
    c.expect('=');
    p.generators = c.nat();
    while (c.accept(';')) {
        if (c.at_end()) break;
        c.expect_word("rel");
        c.expect('=');
        std::vector<int> w;
        for (;;) {
            const char ch = c.peek();
            if (ch != '-' && !std::isdigit(static_cast<unsigned char>(ch))) break;
            const auto at = c.pos();
            const bool neg = c.accept('-');
            const auto v = c.nat();
            if (v == 0 || v > p.generators)
                detail::Cursor::fail_at(at, {}, "generator index out of range 1.." + std::to_string(p.generators));
            w.push_back(neg ? -static_cast<int>(v) : static_cast<int>(v));
        }
        p.relators.push_back(std::move(w));
    }
    c.finish();
    return p;
}

} // namespace surfdecide
