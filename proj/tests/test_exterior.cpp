#include <catch2/catch_amalgamated.hpp>

#include <framecalc/fieldeq.hpp>
#include <framecalc/notation.hpp>

using namespace framecalc;

namespace {
struct Ctx {
    Symbol f = Symbol::make("f", Kind::Real, deps_spatial());
    Symbol g = Symbol::make("g", Kind::Real, deps_spatial());
    SymbolTable tab;
    Ctx() { tab.add(f).add(g); }
};
} // namespace

TEST_CASE("wedge antisymmetry and repeated indices") {
    ScalarExpr one = ScalarExpr::one();
    Form dx0 = Form::monomial(Basis::Coordinate, {0}, one);
    Form dx1 = Form::monomial(Basis::Coordinate, {1}, one);
    CHECK(wedge(dx1, dx0) == -wedge(dx0, dx1));
    CHECK(wedge(dx1, dx1).is_zero());

    // two transpositions: Phi2^Phi3 wedge Phi0 = +Phi0^Phi2^Phi3
    Form p23 = Form::monomial(Basis::Frame, {2, 3}, one);
    Form p0 = Form::monomial(Basis::Frame, {0}, one);
    CHECK(wedge(p23, p0) == Form::monomial(Basis::Frame, {0, 2, 3}, one));

    Form mixed = Form::monomial(Basis::Frame, {1}, one);
    CHECK_THROWS_AS(wedge(dx0, mixed), std::logic_error);
}

TEST_CASE("d of the stationary zeroth leg, coordinate step") {
    Ctx c;
    Form phi0 = Form::monomial(Basis::Coordinate, {0}, ScalarExpr::exponential(c.f, Rational(-1)));
    Form expect = parse_form(
        "[f_{|1}*e^{-f}] dx0^dx1 + [f_{|2}*e^{-f}] dx0^dx2 + [f_{|3}*e^{-f}] dx0^dx3", c.tab,
        Basis::Coordinate);
    CHECK(d(phi0) == expect);
}

TEST_CASE("d squares to zero and kills top forms") {
    Ctx c;
    Form w = Form::monomial(Basis::Coordinate, {0, 2},
                            ScalarExpr::deriv(c.g, {1}) * ScalarExpr::exponential(c.f, Rational(2))) +
             Form::monomial(Basis::Coordinate, {1, 3}, ScalarExpr::symbol(c.f));
    CHECK(d(d(w)).is_zero());
    Form top = Form::monomial(Basis::Coordinate, {0, 1, 2, 3}, ScalarExpr::constant(CRat(5)));
    CHECK(d(top).is_zero());
}

TEST_CASE("basis conversion round trip on the stationary frame") {
    Ctx c;
    Frame fr = stationary_frame(c.f, c.g);

    // dx0 = e^{f} Phi0
    Form dx0 = Form::monomial(Basis::Coordinate, {0}, ScalarExpr::one());
    CHECK(to_frame(dx0, fr) ==
          Form::monomial(Basis::Frame, {0}, ScalarExpr::exponential(c.f, Rational(1))));

    // g_{|0} e^{3g} dx2^dx3 -> g_{|0} e^{g} Phi2^Phi3 (time-dependent family)
    Symbol gt = Symbol::make("g", Kind::Real, deps_all());
    Frame frt = stationary_frame(gt, gt);
    Form w = Form::monomial(Basis::Coordinate, {2, 3},
                            ScalarExpr::deriv(gt, {0}) * ScalarExpr::exponential(gt, Rational(3)));
    CHECK(to_frame(w, frt) ==
          Form::monomial(Basis::Frame, {2, 3},
                         ScalarExpr::deriv(gt, {0}) * ScalarExpr::exponential(gt, Rational(1))));

    // round trip
    Form mixed = Form::monomial(Basis::Coordinate, {0, 1},
                                ScalarExpr::deriv(c.f, {2}) * ScalarExpr::exponential(c.g, Rational(-1))) +
                 Form::monomial(Basis::Coordinate, {2, 3}, ScalarExpr::symbol(c.g));
    CHECK(to_coordinate(to_frame(mixed, fr), fr) == mixed);

    // inverse is exact for the diagonal family
    for (auto& row : fr.inverse_residual())
        for (auto& e : row) CHECK(e.is_zero());
}

TEST_CASE("structural coefficients of the frame families") {
    Ctx c;
    Frame fr = stationary_frame(c.f, c.g);
    StructuralCoeffs chi = structural_coeffs(fr);
    // d Phi^0 = f_{|k} e^{-g} Phi^0 ^ Phi^k, so chi^0_{0k} = 1/2 f_{|k} e^{-g}
    ScalarExpr half = ScalarExpr::constant(CRat(Rational(1, 2)));
    for (int k = 1; k < 4; ++k) {
        ScalarExpr expect = half * ScalarExpr::deriv(c.f, {k}) *
                            ScalarExpr::exponential(c.g, Rational(-1));
        CHECK(chi(0, 0, k) == expect);
        CHECK(chi(0, k, 0) == -expect);
    }

    // identity frame: all coefficients vanish
    StructuralCoeffs id = structural_coeffs(Frame::identity());
    for (int a = 0; a < 4; ++a)
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m) CHECK(id(a, l, m).is_zero());

    // time-dependent family: d Phi^j carries both the g_{|0} e^{g} and the
    // g_{|k} e^{-g} structural terms
    Symbol gt = Symbol::make("g", Kind::Real, deps_all());
    Frame frt = stationary_frame(gt, gt);
    StructuralCoeffs chit = structural_coeffs(frt);
    CHECK(chit(1, 0, 1) ==
          half * ScalarExpr::deriv(gt, {0}) * ScalarExpr::exponential(gt, Rational(1)));
    CHECK(chit(1, 2, 1) ==
          half * ScalarExpr::deriv(gt, {2}) * ScalarExpr::exponential(gt, Rational(-1)));
}

TEST_CASE("structural equations reconstruct d of the legs") {
    Ctx c;
    Frame fr = stationary_frame(c.f, c.g);
    StructuralCoeffs chi = structural_coeffs(fr);
    for (int a = 0; a < 4; ++a) {
        Form rebuilt = Form::zero(Basis::Frame, 2);
        for (int l = 0; l < 4; ++l)
            for (int m = l + 1; m < 4; ++m)
                rebuilt = rebuilt + (CRat(2) * chi(a, l, m)) *
                                        Form::monomial(Basis::Frame, {l, m}, ScalarExpr::one());
        CHECK(rebuilt == frame_d(fr.leg(a), fr));
    }
}

TEST_CASE("metric of the frame families") {
    // identity frame gives the signature
    MetricTensor id = metric(Frame::identity());
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            if (mu != nu) CHECK(id.g[mu][nu].is_zero());
            else CHECK(id.g[mu][nu] == ScalarExpr::constant(CRat(eta(mu))));
        }

    // q = 0 point frame gives the exponential metric
    PointSolution ps = point_solution({1.0, 0.0});
    MetricTensor mt = metric(ps.frame);
    CHECK(mt.g[0][0] == -ScalarExpr::exponential(ps.f, Rational(-2)));
    for (int j = 1; j < 4; ++j)
        CHECK(mt.g[j][j] == ScalarExpr::exponential(ps.f, Rational(2)));

    // q != 0 in complex mode: g00 = -e^{-2m/r} cos(2q/r) numerically
    PointSolution cs = point_solution({1.0, 0.5});
    MetricTensor cm = metric(cs.frame, true);
    double r = 2.0;
    double expect = -std::exp(-2.0 * 1.0 / r) * std::cos(2.0 * 0.5 / r);
    CHECK(cm.eval_at(0, 0, cs.backend, {0, r, 0, 0}) == Catch::Approx(expect).epsilon(1e-12));
}
