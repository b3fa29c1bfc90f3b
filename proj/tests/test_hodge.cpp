#include <catch2/catch_amalgamated.hpp>

#include <framecalc/fieldeq.hpp>
#include <framecalc/notation.hpp>

using namespace framecalc;

namespace {
Form coord_mono(std::initializer_list<int> idx) {
    return Form::monomial(Basis::Coordinate, idx, ScalarExpr::one());
}
Form frame_mono(std::initializer_list<int> idx) {
    return Form::monomial(Basis::Frame, idx, ScalarExpr::one());
}
} // namespace

TEST_CASE("hyperbolic star on basis monomials") {
    CHECK(star(coord_mono({0})) == coord_mono({1, 2, 3}));
    CHECK(star(coord_mono({1})) == coord_mono({0, 2, 3}));
    CHECK(star(coord_mono({2, 3})) == -coord_mono({0, 1}));
    CHECK(star(Form::scalar(Basis::Coordinate, ScalarExpr::one())) == -coord_mono({0, 1, 2, 3}));
    CHECK(star(coord_mono({0, 1, 2, 3})) == Form::scalar(Basis::Coordinate, ScalarExpr::one()));
    CHECK_THROWS_AS(star(frame_mono({1})), std::logic_error);
}

TEST_CASE("star of star: the frozen sign table") {
    // Machine-generated exhaustive table over all 16 basis monomials: the sign
    // of **w relative to w, indexed by the monomial mask.
    const int expected[16] = {-1, 1,  1,  -1, 1,  -1, -1, 1,
                              1,  -1, -1, 1,  -1, 1,  1,  -1};
    for (unsigned mask = 0; mask < 16; ++mask) {
        Form w = Form::zero(Basis::Coordinate, mask_degree(WedgeMask(mask)));
        w.add_term(WedgeMask(mask), ScalarExpr::one());
        Form ss = star(star(w));
        Form diff = ss - CRat(expected[mask]) * w;
        INFO("mask " << mask);
        CHECK(diff.is_zero());
    }
}

TEST_CASE("frame star applies the grading rule monomial by monomial") {
    Symbol g = Symbol::make("g", Kind::Real, deps_spatial());
    SymbolTable tab;
    tab.add(g);

    // linear terms flip with the time sign, quadratic terms do not
    Form in = parse_form("[(g_{|1|1}+g_{|1}*g_{|1})*e^{-2g}] Phi1^Phi2^Phi3", tab);
    Form out = star_frame(in);
    CHECK(out == parse_form("[(g_{|1|1}-g_{|1}*g_{|1})*e^{-2g}] Phi0", tab));

    // no time index in the complement: both grades keep their sign
    Form in2 = parse_form("[(-g_{|2|1}+g_{|2}*g_{|1})*e^{-2g}] Phi0^Phi1^Phi3", tab);
    CHECK(star_frame(in2) == parse_form("[(g_{|2|1}-g_{|2}*g_{|1})*e^{-2g}] Phi2", tab));

    // pure exponentials count as grade zero and receive the time sign, which
    // keeps them aligned with the plain star
    Form in3 = parse_form("[e^{-2g}] Phi1^Phi2^Phi3", tab);
    CHECK(star_frame(in3) == parse_form("[e^{-2g}] Phi0", tab));
}

TEST_CASE("frame star conventions") {
    // the 1-form override
    CHECK(star_frame(frame_mono({0})) ==
          CRat(Rational(-1, 3)) * frame_mono({1, 2, 3}));
    CHECK(star_frame(frame_mono({1})) == frame_mono({0, 2, 3}));

    // without the override the zeroth leg behaves like the plain star
    CHECK(star_frame(frame_mono({0}), StarConvention::plain()) == frame_mono({1, 2, 3}));

    // the optional 3-form entry is representable in the table but stays off
    // by default
    StarConvention conv = StarConvention::standard();
    conv.three_form_override = true;
    CHECK(star_frame(frame_mono({1, 2, 3}), conv) == CRat(-3) * frame_mono({0}));
    CHECK(star_frame(frame_mono({1, 2, 3})) == frame_mono({0}));

    // identity frame, default convention: agreement with star on every basis
    // monomial except the zeroth leg, where the ratio is -1/3
    Symbol g = Symbol::make("g", Kind::Real, deps_all());
    ScalarExpr c = ScalarExpr::deriv(g, {2});
    for (unsigned mask = 0; mask < 16; ++mask) {
        Form w = Form::zero(Basis::Frame, mask_degree(WedgeMask(mask)));
        w.add_term(WedgeMask(mask), c);
        Form lhs = star_frame(w);
        Form rhs_coord = star(map_coefficients(to_coordinate(w, Frame::identity()),
                                               [](const ScalarExpr& s) { return s; }));
        Form rhs = to_frame(rhs_coord, Frame::identity());
        if (mask == 1u) {
            CHECK(lhs == CRat(Rational(-1, 3)) * rhs);
        } else {
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("box on scalars is the wave operator") {
    Symbol F = Symbol::make("F", Kind::Real, deps_all());
    FunctionBackend be;

    // F = (x1)^2: box F = -2
    Form f0 = Form::scalar(Basis::Coordinate, ScalarExpr::symbol(F));
    Form b = box(f0);
    be.bind(F, std::make_shared<PolynomialFamily>(
                   std::vector<PolynomialFamily::Term>{{Cplx(1.0), {0, 2, 0, 0}}}));
    CHECK(eval(b.coefficient(WedgeMask(0)), be, {0.3, 1.7, -2.0, 0.4}).real() ==
          Catch::Approx(-2.0));

    // F = (x0)^2: box F = 2, and box (F dx^a) = (box F) dx^a
    FunctionBackend bt;
    bt.bind(F, std::make_shared<PolynomialFamily>(
                   std::vector<PolynomialFamily::Term>{{Cplx(1.0), {2, 0, 0, 0}}}));
    Form f2 = Form::monomial(Basis::Coordinate, {2}, ScalarExpr::symbol(F));
    Form b2 = box(f2);
    CHECK(b2.coefficient({2}) == box(f0).coefficient(WedgeMask(0)));
    CHECK(eval(b2.coefficient({2}), bt, {1.0, 2.0, 3.0, 4.0}).real() == Catch::Approx(2.0));

    // box of a constant
    CHECK(box(Form::scalar(Basis::Coordinate, ScalarExpr::constant(CRat(7)))).is_zero());

    // symbolic: box(F dx^a) - (box F) dx^a = 0 for every a
    for (int a = 0; a < 4; ++a) {
        Form fa = Form::monomial(Basis::Coordinate, {a}, ScalarExpr::symbol(F));
        Form diff = box(fa) - wedge(box(f0), Form::monomial(Basis::Coordinate, {a}, ScalarExpr::one()));
        CHECK(diff.is_zero());
    }
}

TEST_CASE("codifferential of the first spatial leg") {
    Symbol f = Symbol::make("f", Kind::Real, deps_spatial());
    Symbol g = Symbol::make("g", Kind::Real, deps_spatial());
    SymbolTable tab;
    tab.add(f).add(g);
    Frame fr = stationary_frame(f, g);
    Form del = delta_frame(fr.leg(1), fr);
    CHECK(del == parse_form("[(f_{|1}-2*g_{|1})*e^{-g}] 1", tab));
}

TEST_CASE("frame Laplacian on the stationary family (f = g)") {
    Symbol g = Symbol::make("g", Kind::Real, deps_spatial());
    SymbolTable tab;
    tab.add(g);
    Frame fr = stationary_frame(g, g);

    Form b0 = box_frame(fr.leg(0), fr);
    CHECK(b0 == parse_form(
                    "[(g_{|1|1}+g_{|2|2}+g_{|3|3}-g_{|1}*g_{|1}-g_{|2}*g_{|2}-g_{|3}*g_{|3})*e^{-2g}] Phi0",
                    tab));

    Form b1 = box_frame(fr.leg(1), fr);
    CHECK(b1 == parse_form(
                    "[(-(g_{|1|1}+g_{|2|2}+g_{|3|3})+g_{|1}*g_{|1}+g_{|2}*g_{|2}+g_{|3}*g_{|3})*e^{-2g}] Phi1",
                    tab));

    // the -1/3 convention is immaterial for the stationary family
    CHECK(box_frame(fr.leg(0), fr, StarConvention::plain()) == b0);
    CHECK(delta_frame(fr.leg(0), fr).is_zero());
    CHECK(delta_frame(fr.leg(0), fr, StarConvention::plain()).is_zero());
}

TEST_CASE("lagrangian of the frame families") {
    CHECK(lagrangian(Frame::identity()).is_zero());

    Symbol g = Symbol::make("g", Kind::Real, deps_spatial());
    Frame fr = stationary_frame(g, g);
    Form lag = lagrangian(fr);
    REQUIRE_FALSE(lag.is_zero());

    // regression value: coefficient of the frame volume form at (0,2,0,0) for
    // g = 1/r is |grad g|^2 e^{-2g} = (1/16) e^{-1}, cross-checked by the
    // term-by-term expansion: the wedge parts vanish on a diagonal frame and
    // delta Phi^j = -g_{|j} e^{-g}.
    FunctionBackend be;
    be.bind(g, std::make_shared<CoulombFamily>(Cplx(1.0)));
    double got = eval(lag.coefficient({0, 1, 2, 3}), be, {0, 2, 0, 0}).real();
    CHECK(got == Catch::Approx((1.0 / 16.0) * std::exp(-1.0)).epsilon(1e-12));

    ScalarExpr byhand = ScalarExpr::zero();
    for (int j = 1; j < 4; ++j)
        byhand += ScalarExpr::deriv(g, {j}) * ScalarExpr::deriv(g, {j});
    byhand *= ScalarExpr::exponential(g, Rational(-2));
    CHECK(lag.coefficient({0, 1, 2, 3}) == byhand);
}
