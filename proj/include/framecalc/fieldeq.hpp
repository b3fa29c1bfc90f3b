#pragma once

#include <optional>

#include "hodge.hpp"

namespace framecalc {

/// Diagonal exponential family Phi^0 = e^{-f} dx^0, Phi^j = e^{g} dx^j with its
/// closed-form inverse. The stationary family uses spatial-only symbols; the
/// time-dependent family is the same construction with f = g depending on x^0.
inline Frame stationary_frame(const Symbol& f, const Symbol& g) {
    Mat4 phi{}, psi{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            phi[a][b] = ScalarExpr::zero();
            psi[a][b] = ScalarExpr::zero();
        }
    phi[0][0] = ScalarExpr::exponential(f, Rational(-1));
    psi[0][0] = ScalarExpr::exponential(f, Rational(1));
    for (int j = 1; j < 4; ++j) {
        phi[j][j] = ScalarExpr::exponential(g, Rational(1));
        psi[j][j] = ScalarExpr::exponential(g, Rational(-1));
    }
    return Frame(phi, psi, true);
}

/// Near-identity diagonal family Phi^0 = (1-f) dx^0, Phi^j = (1+g) dx^j with
/// the first-order inverse.
inline Frame near_identity_diagonal_frame(const Symbol& f, const Symbol& g) {
    Mat4 phi{}, psi{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            phi[a][b] = ScalarExpr::zero();
            psi[a][b] = ScalarExpr::zero();
        }
    phi[0][0] = ScalarExpr::one() - ScalarExpr::symbol(f);
    psi[0][0] = ScalarExpr::one() + ScalarExpr::symbol(f);
    for (int j = 1; j < 4; ++j) {
        phi[j][j] = ScalarExpr::one() + ScalarExpr::symbol(g);
        psi[j][j] = ScalarExpr::one() - ScalarExpr::symbol(g);
    }
    return Frame(phi, psi, false);
}

/// Mass and charge of a point source in geometric units plus its center.
struct SourceParams {
    double m = 0.0;
    double q = 0.0;
    std::array<double, 3> center{0.0, 0.0, 0.0};
};

/// Source multiplier of the field equation, stored in the zeroth-leg
/// convention lambda = -f_{|i} f_{|i} e^{-2f}.
struct FieldSource {
    ScalarExpr lambda;
};

/// The two sub-frames satisfy the equation with opposite-sign multipliers:
/// box Phi^0 = lambda Phi^0 and box Phi^j = -lambda Phi^j. This is the
/// engine-derived form of the "duplication": one scalar constraint, carried
/// with the signature sign on the spatial legs.
inline int lambda_leg_sign(int a) { return a == 0 ? 1 : -1; }

struct PointSolution {
    Frame frame;
    Symbol f;
    FieldSource source;
    FunctionBackend backend;
    SourceParams params;
};

inline PointSolution point_solution(const SourceParams& p) {
    if (p.m == 0.0 && p.q == 0.0)
        throw std::invalid_argument("point_solution: (m, q) must not both vanish");
    Kind kind = p.q == 0.0 ? Kind::Real : Kind::Complex;
    Symbol f = Symbol::make("f", kind, deps_spatial());
    PointSolution out{stationary_frame(f, f), f, FieldSource{}, FunctionBackend{}, p};
    ScalarExpr grad2 = ScalarExpr::zero();
    for (int j = 1; j < 4; ++j) grad2 += ScalarExpr::deriv(f, {j}) * ScalarExpr::deriv(f, {j});
    out.source.lambda = -(grad2 * ScalarExpr::exponential(f, Rational(-2)));
    out.backend.bind(f, std::make_shared<CoulombFamily>(Cplx(p.m, p.q), p.center));
    return out;
}

/// Residuals box Phi^a - sign_a lambda Phi^a for all four legs, in the frame
/// basis. The harmonicity rewrite is the caller's explicit step.
inline std::array<Form, 4> field_equation_residual(
    const Frame& fr, const FieldSource& src,
    const StarConvention& conv = StarConvention::standard()) {
    std::array<Form, 4> out;
    for (int a = 0; a < 4; ++a) {
        ScalarExpr lam = lambda_leg_sign(a) > 0 ? src.lambda : -src.lambda;
        out[a] = box_frame(fr.leg(a), fr, conv) - lam * fr.leg(a);
    }
    return out;
}

/// Report of the f = g necessity argument: the off-diagonal coefficients of
/// box Phi^1 for the stationary family with independent f, g.
struct FgNecessityReport {
    ScalarExpr phi2_coeff;
    ScalarExpr phi3_coeff;
    bool nonzero_for_independent = false;
    bool zero_after_substitution = false;
};

inline FgNecessityReport fg_necessity_report(const Symbol& f, const Symbol& g,
                                             const StarConvention& conv = StarConvention::standard()) {
    Frame fr = stationary_frame(f, g);
    Form b = box_frame(fr.leg(1), fr, conv);
    FgNecessityReport rep;
    rep.phi2_coeff = b.coefficient({2});
    rep.phi3_coeff = b.coefficient({3});
    rep.nonzero_for_independent = !rep.phi2_coeff.is_zero() && !rep.phi3_coeff.is_zero();
    rep.zero_after_substitution = substitute_equal(rep.phi2_coeff, f, g).is_zero() &&
                                  substitute_equal(rep.phi3_coeff, f, g).is_zero();
    return rep;
}

/// Diagonal line element; entries are symbolic with the numeric profile bound
/// through the backend.
struct LineElement {
    MetricTensor g;
    std::string rendering;
};

struct LinearizedSolution {
    Frame frame;
    Symbol f;
    FunctionBackend backend;
    LineElement line_element;
};

/// First-order point-mass frame Phi^0 = (1-m/r) dx^0, Phi^j = (1+m/r) dx^j and
/// its line element ds^2 = -(1-2m/r)(dx^0)^2 + (1+2m/r) dx^j dx^j.
inline LinearizedSolution linearized_solution(double m) {
    if (m < 0) throw std::invalid_argument("linearized_solution: m >= 0 expected");
    Symbol f = Symbol::make("f", Kind::Real, deps_spatial());
    LinearizedSolution out{near_identity_diagonal_frame(f, f), f, FunctionBackend{}, LineElement{}};
    out.backend.bind(f, std::make_shared<CoulombFamily>(Cplx(m, 0.0)));
    MetricTensor mt = metric(out.frame);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) mt.g[mu][nu] = linearize(mt.g[mu][nu]);
    out.line_element.g = mt;
    out.line_element.rendering =
        "ds^2 = -(1-2m/r) (dx0)^2 + (1+2m/r) ((dx1)^2+(dx2)^2+(dx3)^2)";
    return out;
}

/// Exponential point-mass metric diag(-e^{-2m/r}, e^{2m/r} spatial). The
/// printed time-time sign is fixed to keep the Lorentzian signature.
inline LineElement rosen_metric_element(const Symbol& f) {
    LineElement out;
    out.g.real_part_on_eval = false;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) out.g.g[mu][nu] = ScalarExpr::zero();
    out.g.g[0][0] = -ScalarExpr::exponential(f, Rational(-2));
    for (int j = 1; j < 4; ++j) out.g.g[j][j] = ScalarExpr::exponential(f, Rational(2));
    out.rendering = "ds^2 = -e^{-2m/r} (dx0)^2 + e^{2m/r} ((dx1)^2+(dx2)^2+(dx3)^2)";
    return out;
}

namespace detail {

using Mat4d = std::array<std::array<double, 4>, 4>;

inline Mat4d invert4(const Mat4d& in) {
    Mat4d a = in;
    Mat4d inv{};
    for (int i = 0; i < 4; ++i) inv[i][i] = 1.0;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-300) throw std::domain_error("invert4: singular metric");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        double d0 = a[col][col];
        for (int c = 0; c < 4; ++c) {
            a[col][c] /= d0;
            inv[col][c] /= d0;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            double fac = a[r][col];
            for (int c = 0; c < 4; ++c) {
                a[r][c] -= fac * a[col][c];
                inv[r][c] -= fac * inv[col][c];
            }
        }
    }
    return inv;
}

using MetricFn = std::function<Mat4d(const Point&)>;

/// 4th-order central difference of a metric entry.
inline Mat4d metric_partial(const MetricFn& g, const Point& x, int dir, double h) {
    auto at = [&](double s) {
        Point y = x;
        y[dir] += s;
        return g(y);
    };
    Mat4d p2 = at(2 * h), p1 = at(h), m1 = at(-h), m2 = at(-2 * h);
    Mat4d out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            out[i][j] = (-p2[i][j] + 8 * p1[i][j] - 8 * m1[i][j] + m2[i][j]) / (12 * h);
    return out;
}

using Chr = std::array<Mat4d, 4>; // [lambda][mu][nu]

inline Chr christoffel(const MetricFn& g, const Point& x, double h) {
    Mat4d gx = g(x);
    Mat4d ginv = invert4(gx);
    std::array<Mat4d, 4> dg;
    for (int dir = 0; dir < 4; ++dir) dg[dir] = metric_partial(g, x, dir, h);
    Chr out{};
    for (int l = 0; l < 4; ++l)
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu) {
                double s = 0.0;
                for (int sg = 0; sg < 4; ++sg)
                    s += ginv[l][sg] * (dg[mu][sg][nu] + dg[nu][sg][mu] - dg[sg][mu][nu]);
                out[l][mu][nu] = 0.5 * s;
            }
    return out;
}

/// Ricci scalar with R_{mu nu} = d_l Gamma^l_{mu nu} - d_nu Gamma^l_{mu l}
/// + Gamma^l_{l s} Gamma^s_{mu nu} - Gamma^l_{nu s} Gamma^s_{mu l}.
inline double ricci_scalar(const MetricFn& g, const Point& x, double h) {
    auto chr_at = [&](int dir, double s) {
        Point y = x;
        y[dir] += s;
        return christoffel(g, y, h);
    };
    std::array<Chr, 4> dgamma;
    for (int dir = 0; dir < 4; ++dir) {
        Chr p2 = chr_at(dir, 2 * h), p1 = chr_at(dir, h), m1 = chr_at(dir, -h),
            m2 = chr_at(dir, -2 * h);
        for (int l = 0; l < 4; ++l)
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu)
                    dgamma[dir][l][mu][nu] = (-p2[l][mu][nu] + 8 * p1[l][mu][nu] -
                                              8 * m1[l][mu][nu] + m2[l][mu][nu]) /
                                             (12 * h);
    }
    Chr gamma = christoffel(g, x, h);
    Mat4d ricci{};
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            double r = 0.0;
            for (int l = 0; l < 4; ++l) r += dgamma[l][l][mu][nu] - dgamma[nu][l][mu][l];
            for (int l = 0; l < 4; ++l)
                for (int s = 0; s < 4; ++s)
                    r += gamma[l][l][s] * gamma[s][mu][nu] - gamma[l][nu][s] * gamma[s][mu][l];
            ricci[mu][nu] = r;
        }
    Mat4d ginv = invert4(g(x));
    double scal = 0.0;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) scal += ginv[mu][nu] * ricci[mu][nu];
    return scal;
}

} // namespace detail

/// Numeric Ricci scalar of the exponential metric at radius r on the x-axis,
/// via 4th-order finite-difference Christoffel symbols with step 1e-4 r.
inline double rosen_curvature_invariant(double m, double r) {
    if (r <= 0.0) throw std::domain_error("rosen_curvature_invariant: r > 0 required");
    detail::MetricFn g = [m](const Point& x) {
        double rr = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        if (rr <= 0.0) throw std::domain_error("rosen metric: r = 0");
        detail::Mat4d out{};
        out[0][0] = -std::exp(-2.0 * m / rr);
        for (int j = 1; j < 4; ++j) out[j][j] = std::exp(2.0 * m / rr);
        return out;
    };
    return detail::ricci_scalar(g, Point{0.0, r, 0.0, 0.0}, 1e-4 * r);
}

/// The curvature value the point-mass metric is claimed to carry, up to the
/// Ricci sign convention: 2 m^2 r^-4 e^{-2m/r}.
inline double rosen_curvature_claim(double m, double r) {
    return 2.0 * m * m / (r * r * r * r) * std::exp(-2.0 * m / r);
}

} // namespace framecalc
