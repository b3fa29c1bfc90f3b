#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>

#include "scalar.hpp"

namespace framecalc {

enum class Basis { Coordinate, Frame };

/// Wedge basis monomials are index subsets of {0,1,2,3} stored as bitmasks;
/// the strictly increasing index order is canonical and any permutation sign
/// from construction lives in the coefficient.
using WedgeMask = std::uint8_t;

inline int mask_degree(WedgeMask m) { return std::popcount(unsigned(m)); }

/// Sign of merging two disjoint ascending index lists into one ascending list,
/// zero if the masks overlap.
inline int merge_sign(WedgeMask a, WedgeMask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (int i = 0; i < 4; ++i)
        if (b & (1u << i))
            for (int j = i + 1; j < 4; ++j)
                if (a & (1u << j)) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

/// Graded exterior form over ScalarExpr coefficients in a single basis.
class Form {
public:
    Form() = default;

    static Form zero(Basis basis, int degree = 0) {
        Form f;
        f.basis_ = basis;
        f.degree_ = degree;
        return f;
    }

    static Form scalar(Basis basis, ScalarExpr c) {
        Form f = zero(basis, 0);
        f.add_term(0, std::move(c));
        return f;
    }

    /// Basis monomial with coefficient; unsorted or repeated indices carry the
    /// permutation sign into the coefficient or vanish.
    static Form monomial(Basis basis, std::initializer_list<int> indices, ScalarExpr c) {
        Form f = zero(basis, int(indices.size()));
        WedgeMask m = 0;
        int sign = 1;
        for (int i : indices) {
            if (i < 0 || i > 3) throw std::domain_error("Form: index outside 0..3");
            WedgeMask bit = WedgeMask(1u << i);
            if (m & bit) return f;
            int above = 0;
            for (int j = i + 1; j < 4; ++j)
                if (m & (1u << j)) ++above;
            if (above % 2) sign = -sign;
            m |= bit;
        }
        f.add_term(m, sign > 0 ? std::move(c) : -c);
        return f;
    }

    Basis basis() const { return basis_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<WedgeMask, ScalarExpr>& terms() const { return terms_; }

    ScalarExpr coefficient(WedgeMask m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? ScalarExpr::zero() : it->second;
    }
    ScalarExpr coefficient(std::initializer_list<int> indices) const {
        WedgeMask m = 0;
        for (int i : indices) m |= WedgeMask(1u << i);
        return coefficient(m);
    }

    void add_term(WedgeMask m, ScalarExpr c) {
        if (c.is_zero()) return;
        if (mask_degree(m) != degree_)
            throw std::logic_error("Form: mixed degrees");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend Form operator+(const Form& a, const Form& b) {
        if (a.basis_ != b.basis_) throw std::logic_error("Form: mixed bases in sum");
        if (!a.is_zero() && !b.is_zero() && a.degree_ != b.degree_)
            throw std::logic_error("Form: mixed degrees in sum");
        Form out = a.is_zero() ? zero(a.basis_, b.degree_) : zero(a.basis_, a.degree_);
        for (const auto& [m, c] : a.terms_) out.add_term(m, c);
        for (const auto& [m, c] : b.terms_) out.add_term(m, c);
        return out;
    }
    friend Form operator-(const Form& a, const Form& b) { return a + (-b); }
    Form operator-() const {
        Form out = zero(basis_, degree_);
        for (const auto& [m, c] : terms_) out.add_term(m, -c);
        return out;
    }

    friend Form operator*(const ScalarExpr& s, const Form& f) {
        Form out = zero(f.basis_, f.degree_);
        for (const auto& [m, c] : f.terms_) out.add_term(m, s * c);
        return out;
    }
    friend Form operator*(const CRat& k, const Form& f) {
        return ScalarExpr::constant(k) * f;
    }

    friend bool operator==(const Form& a, const Form& b) {
        if (a.basis_ != b.basis_) return false;
        if (a.is_zero() && b.is_zero()) return true;
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

private:
    Basis basis_ = Basis::Coordinate;
    int degree_ = 0;
    std::map<WedgeMask, ScalarExpr> terms_;
};

/// Exterior product. Duplicate indices vanish and the interleaving sign is
/// applied to the coefficients.
inline Form wedge(const Form& a, const Form& b) {
    if (a.basis() != b.basis()) throw std::logic_error("wedge: mixed bases (convert first)");
    Form out = Form::zero(a.basis(), a.degree() + b.degree());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            int s = merge_sign(ma, mb);
            if (s == 0) continue;
            ScalarExpr c = ca * cb;
            out.add_term(WedgeMask(ma | mb), s > 0 ? std::move(c) : -c);
        }
    return out;
}

/// Exterior derivative in the coordinate basis. The new index is wedged in
/// front and then sorted into place.
inline Form d(const Form& a) {
    if (a.basis() != Basis::Coordinate)
        throw std::logic_error("d: coordinate basis expected (use frame_d)");
    Form out = Form::zero(Basis::Coordinate, a.degree() + 1);
    if (a.degree() >= 4) return Form::zero(Basis::Coordinate, 4);
    for (const auto& [m, c] : a.terms()) {
        for (int dir = 0; dir < 4; ++dir) {
            WedgeMask bit = WedgeMask(1u << dir);
            if (m & bit) continue;
            ScalarExpr dc = partial(c, dir);
            if (dc.is_zero()) continue;
            int below = 0;
            for (int j = 0; j < dir; ++j)
                if (m & (1u << j)) ++below;
            out.add_term(WedgeMask(m | bit), below % 2 == 0 ? std::move(dc) : -dc);
        }
    }
    return out;
}

/// Apply the first-order truncation to every coefficient.
inline Form linearize_form(const Form& a) {
    Form out = Form::zero(a.basis(), a.degree());
    for (const auto& [m, c] : a.terms()) out.add_term(m, linearize(c));
    return out;
}

inline Form map_coefficients(const Form& a, const std::function<ScalarExpr(const ScalarExpr&)>& fn) {
    Form out = Form::zero(a.basis(), a.degree());
    for (const auto& [m, c] : a.terms()) out.add_term(m, fn(c));
    return out;
}

} // namespace framecalc
