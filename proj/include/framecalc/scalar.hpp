#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "rational.hpp"
#include "symbol.hpp"

namespace framecalc {

/// One derivative factor f_{|i|j...} of a small symbol. An empty index list is
/// the bare (underived) symbol itself. Mixed partials commute, so the index
/// list is kept sorted.
struct DerivFactor {
    Symbol sym;
    std::vector<std::uint8_t> idx;

    int order() const { return int(idx.size()); }

    friend bool operator==(const DerivFactor& a, const DerivFactor& b) {
        return a.sym == b.sym && a.idx == b.idx;
    }
    friend bool operator<(const DerivFactor& a, const DerivFactor& b) {
        if (a.sym != b.sym) return a.sym < b.sym;
        return a.idx < b.idx;
    }
};

/// Argument of an exponential factor: a rational combination of symbols.
/// Zero coefficients are removed; an empty map is the trivial factor 1.
using ExpArg = std::map<Symbol, Rational>;

inline int compare_exparg(const ExpArg& a, const ExpArg& b) {
    auto ia = a.begin(), ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
    }
    if (ia != a.end()) return 1;
    if (ib != b.end()) return -1;
    return 0;
}

/// constant x product of derivative factors x exponential factor.
struct Monomial {
    CRat c;
    std::vector<DerivFactor> factors; // sorted, repeats kept
    ExpArg ex;

    /// Number of derivative factors, counted with multiplicity. Bare symbols
    /// and exponentials do not count; this is the grade that drives the
    /// frame-star sign rule.
    int deriv_grade() const {
        int g = 0;
        for (const auto& f : factors)
            if (!f.idx.empty()) ++g;
        return g;
    }

    /// Grade for linearization: every small factor counts, bare or derived.
    int smallness_grade() const { return int(factors.size()); }
};

inline int compare_key(const Monomial& a, const Monomial& b) {
    if (a.factors != b.factors) return a.factors < b.factors ? -1 : 1;
    return compare_exparg(a.ex, b.ex);
}

/// Normalized sum of monomials. No two monomials share (factors, exp), terms
/// are kept in canonical order and never have zero coefficient, so structural
/// equality decides mathematical equality within this fragment.
class ScalarExpr {
public:
    ScalarExpr() = default;

    static ScalarExpr zero() { return {}; }
    static ScalarExpr constant(CRat v) {
        ScalarExpr e;
        if (!v.is_zero()) e.terms_.push_back(Monomial{v, {}, {}});
        return e;
    }
    static ScalarExpr one() { return constant(CRat(1)); }

    /// The bare symbol as a grade-one small quantity.
    static ScalarExpr symbol(const Symbol& s) {
        ScalarExpr e;
        e.terms_.push_back(Monomial{CRat(1), {DerivFactor{s, {}}}, {}});
        return e;
    }

    /// f_{|dirs...}; directions are sorted on construction.
    static ScalarExpr deriv(const Symbol& s, std::initializer_list<int> dirs) {
        std::vector<std::uint8_t> idx;
        for (int d : dirs) {
            check_dir(d);
            if (!s.depends_on(d)) return zero();
            idx.push_back(std::uint8_t(d));
        }
        std::sort(idx.begin(), idx.end());
        ScalarExpr e;
        e.terms_.push_back(Monomial{CRat(1), {DerivFactor{s, std::move(idx)}}, {}});
        return e;
    }

    /// exp(coeff * s); multiply several together for general arguments.
    static ScalarExpr exponential(const Symbol& s, Rational coeff) {
        ScalarExpr e;
        Monomial m{CRat(1), {}, {}};
        if (!coeff.is_zero()) m.ex[s] = coeff;
        e.terms_.push_back(std::move(m));
        return e;
    }

    static ScalarExpr from_monomials(std::vector<Monomial> ms) {
        ScalarExpr e;
        e.terms_ = std::move(ms);
        e.normalize();
        return e;
    }

    const std::vector<Monomial>& monomials() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && terms_[0].factors.empty() && terms_[0].ex.empty());
    }
    CRat constant_value() const {
        if (terms_.empty()) return CRat(0);
        if (!is_constant()) throw std::logic_error("ScalarExpr: not a constant");
        return terms_[0].c;
    }

    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].c != b.terms_[i].c) return false;
            if (compare_key(a.terms_[i], b.terms_[i]) != 0) return false;
        }
        return true;
    }
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }

    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
        std::vector<Monomial> ms = a.terms_;
        ms.insert(ms.end(), b.terms_.begin(), b.terms_.end());
        return from_monomials(std::move(ms));
    }
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) { return a + (-b); }
    ScalarExpr operator-() const {
        ScalarExpr e = *this;
        for (auto& m : e.terms_) m.c = -m.c;
        return e;
    }
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
        std::vector<Monomial> ms;
        ms.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) ms.push_back(mono_mul(x, y));
        return from_monomials(std::move(ms));
    }
    friend ScalarExpr operator*(const CRat& k, const ScalarExpr& a) {
        ScalarExpr e = a;
        for (auto& m : e.terms_) m.c *= k;
        e.normalize();
        return e;
    }
    ScalarExpr& operator+=(const ScalarExpr& b) { return *this = *this + b; }
    ScalarExpr& operator-=(const ScalarExpr& b) { return *this = *this - b; }
    ScalarExpr& operator*=(const ScalarExpr& b) { return *this = *this * b; }

    static Monomial mono_mul(const Monomial& a, const Monomial& b) {
        Monomial m;
        m.c = a.c * b.c;
        m.factors.reserve(a.factors.size() + b.factors.size());
        std::merge(a.factors.begin(), a.factors.end(), b.factors.begin(), b.factors.end(),
                   std::back_inserter(m.factors));
        m.ex = a.ex;
        for (const auto& [s, r] : b.ex) {
            auto it = m.ex.find(s);
            if (it == m.ex.end()) {
                if (!r.is_zero()) m.ex[s] = r;
            } else {
                it->second += r;
                if (it->second.is_zero()) m.ex.erase(it);
            }
        }
        return m;
    }

    std::set<Symbol> symbols() const {
        std::set<Symbol> out;
        for (const auto& m : terms_) {
            for (const auto& f : m.factors) out.insert(f.sym);
            for (const auto& [s, r] : m.ex) out.insert(s);
        }
        return out;
    }

private:
    static void check_dir(int d) {
        if (d < 0 || d > 3) throw std::domain_error("direction index outside 0..3");
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Monomial& a, const Monomial& b) { return compare_key(a, b) < 0; });
        std::vector<Monomial> out;
        for (auto& m : terms_) {
            for (auto it = m.ex.begin(); it != m.ex.end();)
                it = it->second.is_zero() ? m.ex.erase(it) : std::next(it);
            if (!out.empty() && compare_key(out.back(), m) == 0) {
                out.back().c += m.c;
                if (out.back().c.is_zero()) out.pop_back();
            } else if (!m.c.is_zero()) {
                out.push_back(std::move(m));
            }
        }
        terms_ = std::move(out);
    }

    std::vector<Monomial> terms_;
};

/// Partial derivative in one coordinate direction, Leibniz over monomials.
/// Directions a symbol does not depend on contribute nothing.
inline ScalarExpr partial(const ScalarExpr& e, int dir) {
    if (dir < 0 || dir > 3) throw std::domain_error("partial: direction index outside 0..3");
    std::vector<Monomial> out;
    for (const auto& m : e.monomials()) {
        for (std::size_t i = 0; i < m.factors.size(); ++i) {
            if (!m.factors[i].sym.depends_on(dir)) continue;
            Monomial t = m;
            auto& idx = t.factors[i].idx;
            idx.insert(std::upper_bound(idx.begin(), idx.end(), std::uint8_t(dir)),
                       std::uint8_t(dir));
            std::sort(t.factors.begin(), t.factors.end());
            out.push_back(std::move(t));
        }
        for (const auto& [s, a] : m.ex) {
            if (!s.depends_on(dir)) continue;
            Monomial t = m;
            t.c *= CRat(a);
            DerivFactor f{s, {std::uint8_t(dir)}};
            t.factors.insert(std::upper_bound(t.factors.begin(), t.factors.end(), f), f);
            out.push_back(std::move(t));
        }
    }
    return ScalarExpr::from_monomials(std::move(out));
}

/// First-order truncation: exponentials become 1 + argument, and every
/// monomial of smallness grade >= 2 is dropped.
inline ScalarExpr linearize(const ScalarExpr& e) {
    std::vector<Monomial> out;
    for (const auto& m : e.monomials()) {
        if (m.smallness_grade() <= 1) {
            Monomial base = m;
            base.ex.clear();
            out.push_back(base);
        }
        if (m.smallness_grade() == 0) {
            for (const auto& [s, a] : m.ex) {
                Monomial t;
                t.c = m.c * CRat(a);
                t.factors = {DerivFactor{s, {}}};
                out.push_back(std::move(t));
            }
        }
    }
    return ScalarExpr::from_monomials(std::move(out));
}

/// Rename `from` to `to` everywhere and renormalize, enabling cancellations.
inline ScalarExpr substitute_equal(const ScalarExpr& e, const Symbol& from, const Symbol& to) {
    if (from == to) throw std::invalid_argument("substitute_equal: identical symbols");
    std::vector<Monomial> out;
    for (const auto& m : e.monomials()) {
        Monomial t = m;
        for (auto& f : t.factors)
            if (f.sym == from) f.sym = to;
        std::sort(t.factors.begin(), t.factors.end());
        ExpArg ex;
        for (const auto& [s, a] : t.ex) {
            Symbol s2 = (s == from) ? to : s;
            auto it = ex.find(s2);
            if (it == ex.end()) ex[s2] = a;
            else it->second += a;
        }
        t.ex = std::move(ex);
        out.push_back(std::move(t));
    }
    return ScalarExpr::from_monomials(std::move(out));
}

/// Quotient by the spatial harmonicity relation s_{|1|1}+s_{|2|2}+s_{|3|3}=0:
/// every pair of 3-indices in a factor of s is rewritten through the relation.
/// An expression lies in the ideal exactly when the rewrite yields zero.
inline ScalarExpr harmonic_rewrite(const ScalarExpr& e, const Symbol& s) {
    auto count3 = [](const DerivFactor& f) {
        return int(std::count(f.idx.begin(), f.idx.end(), std::uint8_t(3)));
    };
    ScalarExpr cur = e;
    for (bool again = true; again;) {
        again = false;
        std::vector<Monomial> out;
        for (const auto& m : cur.monomials()) {
            int pos = -1;
            for (std::size_t i = 0; i < m.factors.size(); ++i)
                if (m.factors[i].sym == s && count3(m.factors[i]) >= 2) { pos = int(i); break; }
            if (pos < 0) {
                out.push_back(m);
                continue;
            }
            again = true;
            for (int rep : {1, 2}) {
                Monomial t = m;
                auto& idx = t.factors[pos].idx;
                int removed = 0;
                for (auto it = idx.begin(); it != idx.end() && removed < 2;)
                    if (*it == 3) { it = idx.erase(it); ++removed; }
                    else ++it;
                idx.push_back(std::uint8_t(rep));
                idx.push_back(std::uint8_t(rep));
                std::sort(idx.begin(), idx.end());
                std::sort(t.factors.begin(), t.factors.end());
                t.c = -t.c;
                out.push_back(std::move(t));
            }
        }
        cur = ScalarExpr::from_monomials(std::move(out));
    }
    return cur;
}

/// Replace every exponential factor by 1.
inline ScalarExpr exponents_to_one(const ScalarExpr& e) {
    std::vector<Monomial> out;
    for (const auto& m : e.monomials()) {
        Monomial t = m;
        t.ex.clear();
        out.push_back(std::move(t));
    }
    return ScalarExpr::from_monomials(std::move(out));
}

/// Drop monomials quadratic (or higher) in time derivatives of s.
inline ScalarExpr drop_time_quadratics(const ScalarExpr& e, const Symbol& s) {
    std::vector<Monomial> out;
    for (const auto& m : e.monomials()) {
        int n = 0;
        for (const auto& f : m.factors)
            if (f.sym == s && std::find(f.idx.begin(), f.idx.end(), std::uint8_t(0)) != f.idx.end())
                ++n;
        if (n < 2) out.push_back(m);
    }
    return ScalarExpr::from_monomials(std::move(out));
}

/// Real part of an expression whose factors all have definite reality.
/// A factor of an imaginary symbol contributes one power of i; exponential
/// arguments must be real-valued. Throws if the reality cannot be decided.
inline ScalarExpr real_part(const ScalarExpr& e) {
    std::vector<Monomial> out;
    for (const auto& m : e.monomials()) {
        int imag_count = 0;
        for (const auto& f : m.factors) {
            if (f.sym.kind() == Kind::Imaginary) ++imag_count;
            else if (f.sym.kind() == Kind::Complex)
                throw std::domain_error("real_part: complex-kind factor " + f.sym.name());
        }
        for (const auto& [s, a] : m.ex)
            if (s.kind() != Kind::Real)
                throw std::domain_error("real_part: non-real exponential argument " + s.name());
        Monomial t = m;
        t.c = (imag_count % 2 == 0) ? CRat(m.c.re) : CRat(Rational(0), m.c.im);
        out.push_back(std::move(t));
    }
    return ScalarExpr::from_monomials(std::move(out));
}

inline ScalarExpr imag_part(const ScalarExpr& e) {
    return real_part(CRat(Rational(0), Rational(-1)) * e);
}

} // namespace framecalc
