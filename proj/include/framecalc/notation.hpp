#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "hodge.hpp"

namespace framecalc {

// ---------------------------------------------------------------- rendering

namespace detail {

inline std::string rat_str(const Rational& r) { return r.str(); }

inline std::string coeff_str(const CRat& c) {
    if (c.is_real()) return c.re.str();
    if (c.re.is_zero()) {
        if (c.im.is_one()) return "i";
        if (c.im == Rational(-1)) return "-i";
        return c.im.str() + "i";
    }
    return c.str(); // (a+bi), parseable as a parenthesized sum
}

inline std::string factor_str(const DerivFactor& f, bool latex) {
    std::string s = f.sym.name();
    if (!f.idx.empty()) {
        s += "_{";
        for (auto i : f.idx) s += "|" + std::to_string(int(i));
        s += "}";
    }
    (void)latex;
    return s;
}

inline std::string exp_str(const ExpArg& ex) {
    std::string s = "e^{";
    bool first = true;
    for (const auto& [sym, a] : ex) {
        Rational r = a;
        if (r.sign() < 0) {
            s += "-";
            r = -r;
        } else if (!first) {
            s += "+";
        }
        if (!r.is_one()) s += r.str();
        s += sym.name();
        first = false;
    }
    s += "}";
    return s;
}

inline std::string mono_str(const Monomial& m, bool latex) {
    std::vector<std::string> parts;
    for (const auto& f : m.factors) parts.push_back(factor_str(f, latex));
    if (!m.ex.empty()) parts.push_back(exp_str(m.ex));
    std::string lead;
    if (parts.empty()) {
        lead = coeff_str(m.c);
    } else if (m.c.is_one()) {
        lead = "";
    } else if (m.c == CRat(-1)) {
        lead = "-";
    } else {
        lead = coeff_str(m.c);
        lead += latex ? "\\," : "*";
    }
    std::string s = lead;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += latex ? "\\," : "*";
        s += parts[i];
    }
    return s;
}

} // namespace detail

inline std::string render(const ScalarExpr& e, bool latex = false) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& m : e.monomials()) {
        std::string t = detail::mono_str(m, latex);
        if (first) {
            out = t;
        } else if (!t.empty() && t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
        first = false;
    }
    return out;
}

inline std::string render_latex(const ScalarExpr& e) { return render(e, true); }

inline std::string basis_str(Basis b, WedgeMask m, bool latex = false) {
    if (m == 0) return "1";
    std::string leg = b == Basis::Coordinate ? (latex ? "dx^" : "dx") : (latex ? "\\Phi^" : "Phi");
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (!(m & (1u << i))) continue;
        if (!s.empty()) s += latex ? "\\wedge " : "^";
        s += leg + std::to_string(i);
    }
    return s;
}

inline std::string render(const Form& f, bool latex = false) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : f.terms()) {
        if (!out.empty()) out += " + ";
        if (latex)
            out += "\\left(" + render(c, true) + "\\right)" +
                   (m ? "\\," + basis_str(f.basis(), m, true) : "");
        else
            out += "[" + render(c) + "] " + basis_str(f.basis(), m);
    }
    return out;
}

inline std::string render_latex(const Form& f) { return render(f, true); }

// ------------------------------------------------------------------ parsing

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Symbols available while parsing; fixtures declare them up front.
class SymbolTable {
public:
    SymbolTable& add(const Symbol& s) {
        map_[s.name()] = s;
        return *this;
    }
    Symbol lookup(const std::string& name) const {
        auto it = map_.find(name);
        if (it == map_.end()) throw ParseError("unknown symbol: " + name);
        return it->second;
    }
    bool contains(const std::string& name) const { return map_.count(name) > 0; }

private:
    std::map<std::string, Symbol> map_;
};

namespace detail {

class Parser {
public:
    Parser(std::string_view text, const SymbolTable& syms) : text_(text), syms_(syms) {}

    ScalarExpr parse_scalar() {
        ScalarExpr e = expr();
        skip();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

    Form parse_form(Basis default_basis) {
        skip();
        if (peek() == '0' && !std::isdigit(look(1))) {
            ++pos_;
            skip();
            if (pos_ != text_.size()) fail("trailing input after 0");
            return Form::zero(default_basis, 0);
        }
        Form out = form_term(default_basis);
        skip();
        while (peek() == '+') {
            ++pos_;
            Form t = form_term(default_basis);
            out = out + t;
            skip();
        }
        if (pos_ != text_.size()) fail("trailing input");
        return out;
    }

private:
    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    char look(std::size_t ahead) {
        return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
    }
    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at offset " + std::to_string(pos_));
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool starts_primary() {
        char c = peek();
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
    }

    ScalarExpr expr() {
        bool neg = false;
        if (peek() == '-') { neg = true; ++pos_; }
        else if (peek() == '+') ++pos_;
        ScalarExpr e = term();
        if (neg) e = -e;
        while (true) {
            char c = peek();
            if (c == '+') { ++pos_; e += term(); }
            else if (c == '-') { ++pos_; e -= term(); }
            else break;
        }
        return e;
    }

    ScalarExpr term() {
        ScalarExpr e = primary();
        while (true) {
            if (peek() == '*') { ++pos_; e *= primary(); }
            else if (starts_primary()) e *= primary();
            else break;
        }
        return e;
    }

    ScalarExpr primary() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            ScalarExpr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational r = rational();
            if (peek() == 'i' && !std::isalnum(static_cast<unsigned char>(look(1)))) {
                ++pos_;
                return ScalarExpr::constant(CRat(Rational(0), r));
            }
            return ScalarExpr::constant(CRat(r));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return factor();
        fail("expected a factor, number or parenthesis");
    }

    Rational rational() {
        std::int64_t num = integer();
        if (peek() == '/') {
            ++pos_;
            std::int64_t den = integer();
            return Rational(num, den);
        }
        return Rational(num);
    }

    std::int64_t integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::stoll(std::string(text_.substr(start, pos_ - start)));
    }

    std::string ident() {
        skip();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_]))))
            ++pos_;
        if (start == pos_) fail("expected identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    ScalarExpr factor() {
        std::string name = ident();
        if (name == "i") return ScalarExpr::constant(CRat::i());
        if (name == "e" && peek() == '^') {
            ++pos_;
            expect('{');
            ScalarExpr e = exp_argument();
            expect('}');
            return e;
        }
        Symbol s = syms_.lookup(name);
        if (peek() == '_') {
            ++pos_;
            expect('{');
            std::vector<int> dirs;
            while (peek() == '|') {
                ++pos_;
                dirs.push_back(int(integer()));
            }
            expect('}');
            ScalarExpr e = ScalarExpr::one();
            // build a single derivative factor of the collected directions
            std::vector<std::uint8_t> idx;
            for (int d0 : dirs) {
                if (d0 < 0 || d0 > 3) fail("bar index outside 0..3");
                if (!s.depends_on(d0)) return ScalarExpr::zero();
                idx.push_back(std::uint8_t(d0));
            }
            std::sort(idx.begin(), idx.end());
            Monomial m{CRat(1), {DerivFactor{s, std::move(idx)}}, {}};
            return ScalarExpr::from_monomials({m});
        }
        return ScalarExpr::symbol(s);
    }

    ScalarExpr exp_argument() {
        ScalarExpr out = ScalarExpr::one();
        bool neg = false;
        if (peek() == '-') { neg = true; ++pos_; }
        while (true) {
            Rational a(1);
            if (std::isdigit(static_cast<unsigned char>(peek()))) a = rational();
            if (neg) a = -a;
            Symbol s = syms_.lookup(ident());
            out *= ScalarExpr::exponential(s, a);
            char c = peek();
            if (c == '+') { neg = false; ++pos_; }
            else if (c == '-') { neg = true; ++pos_; }
            else break;
        }
        return out;
    }

    Form form_term(Basis default_basis) {
        expect('[');
        ScalarExpr c = expr();
        expect(']');
        skip();
        if (peek() == '1' && !std::isdigit(look(1))) {
            ++pos_;
            return Form::scalar(default_basis, c);
        }
        Basis basis = default_basis;
        std::vector<int> indices;
        bool first = true;
        while (true) {
            std::string leg = ident();
            Basis b;
            int index;
            if (leg.size() == 3 && leg.compare(0, 2, "dx") == 0) {
                b = Basis::Coordinate;
                index = leg[2] - '0';
            } else if (leg.size() == 4 && leg.compare(0, 3, "Phi") == 0) {
                b = Basis::Frame;
                index = leg[3] - '0';
            } else {
                fail("expected basis leg dxN or PhiN");
            }
            if (index < 0 || index > 3) fail("basis leg index outside 0..3");
            if (first) basis = b;
            else if (b != basis) fail("mixed bases in one wedge monomial");
            indices.push_back(index);
            first = false;
            if (peek() == '^') ++pos_;
            else break;
        }
        Form f = Form::zero(basis, int(indices.size()));
        switch (indices.size()) {
            case 1: f = Form::monomial(basis, {indices[0]}, c); break;
            case 2: f = Form::monomial(basis, {indices[0], indices[1]}, c); break;
            case 3: f = Form::monomial(basis, {indices[0], indices[1], indices[2]}, c); break;
            case 4:
                f = Form::monomial(basis, {indices[0], indices[1], indices[2], indices[3]}, c);
                break;
            default: fail("wedge monomial length outside 1..4");
        }
        return f;
    }

    std::string_view text_;
    const SymbolTable& syms_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline ScalarExpr parse_scalar(std::string_view text, const SymbolTable& syms) {
    return detail::Parser(text, syms).parse_scalar();
}

inline Form parse_form(std::string_view text, const SymbolTable& syms,
                       Basis default_basis = Basis::Frame) {
    return detail::Parser(text, syms).parse_form(default_basis);
}

} // namespace framecalc
