#pragma once

#include "frame.hpp"

namespace framecalc {

/// Parity of the permutation (indices of m ascending, complement ascending)
/// relative to (0,1,2,3).
inline int complement_sign(WedgeMask m) {
    int s = merge_sign(m, WedgeMask(0xF ^ m));
    return s == 0 ? 1 : s;
}

/// True when the time index lies in the complement of m.
inline bool time_in_complement(WedgeMask m) { return (0xF ^ m) & 1u; }

/// Per-basis-monomial multiplier table for the frame star, plus the grading
/// threshold for the time-sign exemption. Defaults follow the engine's
/// conventions: every multiplier 1 except the 1-form Phi^0, which maps with
/// -1/3; second-order coefficient terms skip the time sign.
struct StarConvention {
    std::map<WedgeMask, Rational> mu;
    int grade_exemption_threshold = 2;
    bool three_form_override = false; // optional *_Phi(Phi^1^Phi^2^Phi^3) = -3 Phi^0

    static StarConvention standard() {
        StarConvention c;
        c.mu[WedgeMask(1u)] = Rational(-1, 3);
        return c;
    }

    /// Variant without the -1/3 rule, used to check insensitivity of the
    /// stationary results.
    static StarConvention plain() { return StarConvention{}; }

    Rational multiplier(WedgeMask m) const {
        if (three_form_override && m == WedgeMask(0xE)) return Rational(-3);
        auto it = mu.find(m);
        return it == mu.end() ? Rational(1) : it->second;
    }
};

/// Hyperbolic star on coordinate forms: complement the indices, apply the
/// permutation parity, and flip sign when the time index lands in the output.
inline Form star(const Form& a) {
    if (a.basis() != Basis::Coordinate)
        throw std::logic_error("star: coordinate basis expected (use star_frame)");
    Form out = Form::zero(Basis::Coordinate, 4 - a.degree());
    for (const auto& [m, c] : a.terms()) {
        int s = complement_sign(m);
        if (time_in_complement(m)) s = -s;
        out.add_term(WedgeMask(0xF ^ m), s > 0 ? c : -c);
    }
    return out;
}

/// Frame star. The permutation parity and the convention multiplier act on the
/// whole coefficient; the time sign acts monomial by monomial, exempting
/// coefficients at or above the grading threshold.
inline Form star_frame(const Form& a, const StarConvention& conv = StarConvention::standard()) {
    if (a.basis() != Basis::Frame)
        throw std::logic_error("star_frame: frame basis expected");
    Form out = Form::zero(Basis::Frame, 4 - a.degree());
    for (const auto& [m, c] : a.terms()) {
        int base = complement_sign(m);
        bool l = time_in_complement(m);
        std::vector<Monomial> ms;
        for (const auto& mono : c.monomials()) {
            Monomial t = mono;
            if (l && mono.deriv_grade() < conv.grade_exemption_threshold) t.c = -t.c;
            if (base < 0) t.c = -t.c;
            ms.push_back(std::move(t));
        }
        ScalarExpr coeff = CRat(conv.multiplier(m)) * ScalarExpr::from_monomials(std::move(ms));
        out.add_term(WedgeMask(0xF ^ m), std::move(coeff));
    }
    return out;
}

/// Hodge-de Rham Laplacian d*d* + *d*d on coordinate forms.
inline Form box(const Form& a) {
    return d(star(d(star(a)))) + star(d(star(d(a))));
}

/// Frame Laplacian d *_Phi d *_Phi + *_Phi d *_Phi d on frame-basis forms.
inline Form box_frame(const Form& a, const Frame& fr,
                      const StarConvention& conv = StarConvention::standard()) {
    Form b1 = frame_d(star_frame(frame_d(star_frame(a, conv), fr), conv), fr);
    Form b2 = star_frame(frame_d(star_frame(frame_d(a, fr), conv), fr), conv);
    return b1 + b2;
}

/// Codifferential *_Phi d *_Phi.
inline Form delta_frame(const Form& a, const Frame& fr,
                        const StarConvention& conv = StarConvention::standard()) {
    return star_frame(frame_d(star_frame(a, conv), fr), conv);
}

/// Lagrangian 4-form eta_ab (dPhi^a ^ dPhi^b + delta Phi^a ^ delta Phi^b).
/// The codifferentials of the legs are scalars; their products are promoted by
/// the volume element Phi^0^Phi^1^Phi^2^Phi^3.
inline Form lagrangian(const Frame& fr, const StarConvention& conv = StarConvention::standard()) {
    Form vol = Form::monomial(Basis::Frame, {0, 1, 2, 3}, ScalarExpr::one());
    Form out = Form::zero(Basis::Frame, 4);
    for (int a = 0; a < 4; ++a) {
        Form da = frame_d(fr.leg(a), fr);
        Form wedge_part = wedge(da, da);
        ScalarExpr del = delta_frame(fr.leg(a), fr, conv).coefficient(WedgeMask(0));
        Form delta_part = (del * del) * vol;
        Form contrib = wedge_part + delta_part;
        out = out + (a == 0 ? -contrib : contrib);
    }
    return out;
}

/// Linearized frame star acting on coordinate forms of a near-identity frame:
/// convert, star, convert back, truncate to first order.
inline Form linear_star(const Form& a, const Frame& fr,
                        const StarConvention& conv = StarConvention::standard()) {
    return linearize_form(to_coordinate(star_frame(to_frame(a, fr), conv), fr));
}

/// Linearized frame Laplacian, truncating after every stage.
inline Form linear_box_frame(const Form& a, const Frame& fr,
                             const StarConvention& conv = StarConvention::standard()) {
    Form b1 = linearize_form(d(linear_star(d(linear_star(a, fr, conv)), fr, conv)));
    Form b2 = linear_star(linearize_form(d(linear_star(linearize_form(d(a)), fr, conv))), fr, conv);
    return b1 + b2;
}

} // namespace framecalc
