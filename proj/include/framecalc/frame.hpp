#pragma once

#include <array>

#include "backend.hpp"
#include "form.hpp"

namespace framecalc {

using Mat4 = std::array<std::array<ScalarExpr, 4>, 4>;

inline int eta(int a) { return a == 0 ? -1 : 1; }

/// A frame: the matrix of the four legs Phi^a = phi[a][mu] dx^mu together with
/// its inverse psi (psi[mu][a] phi[a][nu] = delta). For near-identity families
/// the stored inverse is the first-order one and is flagged as such.
class Frame {
public:
    Frame() = default;
    Frame(Mat4 phi, Mat4 psi, bool psi_exact) : phi_(std::move(phi)), psi_(std::move(psi)), psi_exact_(psi_exact) {}

    static Frame identity() {
        Mat4 id{};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                id[a][b] = a == b ? ScalarExpr::one() : ScalarExpr::zero();
        return Frame(id, id, true);
    }

    const Mat4& phi() const { return phi_; }
    const Mat4& psi() const { return psi_; }
    bool psi_exact() const { return psi_exact_; }

    const ScalarExpr& phi(int a, int mu) const { return phi_[a][mu]; }
    const ScalarExpr& psi(int mu, int a) const { return psi_[mu][a]; }

    /// Leg Phi^a as a frame-basis monomial.
    Form leg(int a) const { return Form::monomial(Basis::Frame, {a}, ScalarExpr::one()); }

    /// Leg Phi^a expanded in the coordinate basis.
    Form leg_coordinate(int a) const {
        Form out = Form::zero(Basis::Coordinate, 1);
        for (int mu = 0; mu < 4; ++mu) out.add_term(WedgeMask(1u << mu), phi_[a][mu]);
        return out;
    }

    /// phi . psi - id, exactly zero for closed-form inverse families and
    /// first-order zero for near-identity ones.
    Mat4 inverse_residual() const {
        Mat4 r{};
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c) {
                ScalarExpr s = ScalarExpr::zero();
                for (int b = 0; b < 4; ++b) s += phi_[a][b] * psi_[b][c];
                if (a == c) s -= ScalarExpr::one();
                r[a][c] = s;
            }
        return r;
    }

private:
    Mat4 phi_{};
    Mat4 psi_{};
    bool psi_exact_ = false;
};

/// Express a coordinate-basis form in the frame basis (dx^mu = psi[mu][a] Phi^a).
inline Form to_frame(const Form& f, const Frame& fr) {
    if (f.basis() == Basis::Frame) return f;
    Form out = Form::zero(Basis::Frame, f.degree());
    for (const auto& [m, c] : f.terms()) {
        Form acc = Form::scalar(Basis::Frame, c);
        for (int mu = 0; mu < 4; ++mu) {
            if (!(m & (1u << mu))) continue;
            Form leg = Form::zero(Basis::Frame, 1);
            for (int a = 0; a < 4; ++a) leg.add_term(WedgeMask(1u << a), fr.psi(mu, a));
            acc = wedge(acc, leg);
        }
        out = out + acc;
    }
    return out;
}

/// Express a frame-basis form in the coordinate basis (Phi^a = phi[a][mu] dx^mu).
inline Form to_coordinate(const Form& f, const Frame& fr) {
    if (f.basis() == Basis::Coordinate) return f;
    Form out = Form::zero(Basis::Coordinate, f.degree());
    for (const auto& [m, c] : f.terms()) {
        Form acc = Form::scalar(Basis::Coordinate, c);
        for (int a = 0; a < 4; ++a) {
            if (!(m & (1u << a))) continue;
            Form leg = Form::zero(Basis::Coordinate, 1);
            for (int mu = 0; mu < 4; ++mu) leg.add_term(WedgeMask(1u << mu), fr.phi(a, mu));
            acc = wedge(acc, leg);
        }
        out = out + acc;
    }
    return out;
}

/// Exterior derivative for either basis; the frame-basis case goes through
/// coordinates, so the structural equations stay a theorem rather than a
/// second implementation.
inline Form frame_d(const Form& f, const Frame& fr) {
    if (f.basis() == Basis::Coordinate) return d(f);
    return to_frame(d(to_coordinate(f, fr)), fr);
}

/// Metric g_{mu nu} = eta_ab Phi^a_mu Phi^b_nu. When real_part_on_eval is set
/// the entries are to be read through Re(.) at evaluation time (complex
/// frames).
struct MetricTensor {
    Mat4 g{};
    bool real_part_on_eval = false;

    double eval_at(int mu, int nu, const FunctionBackend& backend, const Point& x) const {
        Cplx v = framecalc::eval(g[mu][nu], backend, x);
        if (!real_part_on_eval && std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
            throw EvalError("MetricTensor: complex entry without real-part mode");
        return v.real();
    }
};

inline MetricTensor metric(const Frame& fr, bool complex_mode = false) {
    MetricTensor out;
    out.real_part_on_eval = complex_mode;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            ScalarExpr s = ScalarExpr::zero();
            for (int a = 0; a < 4; ++a) {
                ScalarExpr t = fr.phi(a, mu) * fr.phi(a, nu);
                s += a == 0 ? -t : t;
            }
            out.g[mu][nu] = s;
        }
    return out;
}

/// Structural coefficients chi^a_{lm}, antisymmetric in (l, m), defined by
/// d Phi^a = sum_{l<m} 2 chi^a_{lm} Phi^l wedge Phi^m.
struct StructuralCoeffs {
    std::array<Mat4, 4> chi{};

    const ScalarExpr& operator()(int a, int l, int m) const { return chi[a][l][m]; }
};

inline StructuralCoeffs structural_coeffs(const Frame& fr) {
    StructuralCoeffs out;
    for (int a = 0; a < 4; ++a)
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m) out.chi[a][l][m] = ScalarExpr::zero();
    CRat half(Rational(1, 2));
    for (int a = 0; a < 4; ++a) {
        Form da = frame_d(fr.leg(a), fr);
        for (const auto& [mask, c] : da.terms()) {
            int l = -1, m = -1;
            for (int i = 0; i < 4; ++i)
                if (mask & (1u << i)) (l < 0 ? l : m) = i;
            out.chi[a][l][m] = half * c;
            out.chi[a][m][l] = -(half * c);
        }
    }
    return out;
}

} // namespace framecalc
