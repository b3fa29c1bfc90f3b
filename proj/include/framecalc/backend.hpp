#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "scalar.hpp"

namespace framecalc {

using Cplx = std::complex<double>;
using Point = std::array<double, 4>;

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One concrete function with closed-form partial derivatives. multi_index is
/// sorted ascending, empty for the plain value.
class FunctionFamily {
public:
    virtual ~FunctionFamily() = default;
    virtual Cplx partial(std::span<const std::uint8_t> multi_index, const Point& x) const = 0;
};

class ConstantFamily : public FunctionFamily {
public:
    explicit ConstantFamily(Cplx v) : v_(v) {}
    Cplx partial(std::span<const std::uint8_t> mi, const Point&) const override {
        return mi.empty() ? v_ : Cplx(0.0);
    }

private:
    Cplx v_;
};

/// c / |x - center|, the static point-source profile. Spatial partials are
/// closed form up to third order; time partials vanish.
class CoulombFamily : public FunctionFamily {
public:
    CoulombFamily(Cplx c, std::array<double, 3> center = {0, 0, 0}) : c_(c), center_(center) {}

    Cplx partial(std::span<const std::uint8_t> mi, const Point& x) const override {
        std::array<double, 3> d{x[1] - center_[0], x[2] - center_[1], x[3] - center_[2]};
        double r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        if (r2 == 0.0) throw EvalError("CoulombFamily: evaluation at the center");
        double r = std::sqrt(r2);
        for (auto i : mi)
            if (i == 0) return Cplx(0.0);
        switch (mi.size()) {
            case 0: return c_ / r;
            case 1: {
                double a = d[mi[0] - 1];
                return c_ * (-a / (r2 * r));
            }
            case 2: {
                double a = d[mi[0] - 1], b = d[mi[1] - 1];
                double kron = mi[0] == mi[1] ? 1.0 : 0.0;
                return c_ * (3.0 * a * b / (r2 * r2 * r) - kron / (r2 * r));
            }
            case 3: {
                double a = d[mi[0] - 1], b = d[mi[1] - 1], e = d[mi[2] - 1];
                double dab = mi[0] == mi[1] ? 1.0 : 0.0;
                double dae = mi[0] == mi[2] ? 1.0 : 0.0;
                double dbe = mi[1] == mi[2] ? 1.0 : 0.0;
                double r5 = r2 * r2 * r, r7 = r5 * r2;
                return c_ * (-15.0 * a * b * e / r7 + 3.0 * (dab * e + dae * b + dbe * a) / r5);
            }
            default:
                throw EvalError("CoulombFamily: derivative order beyond 3");
        }
    }

private:
    Cplx c_;
    std::array<double, 3> center_;
};

/// Trajectory of a moving center: position, velocity and acceleration as
/// functions of x^0.
struct Trajectory {
    std::function<std::array<double, 3>(double)> pos;
    std::function<std::array<double, 3>(double)> vel;
    std::function<std::array<double, 3>(double)> acc;

    static Trajectory fixed(std::array<double, 3> p, std::array<double, 3> v = {0, 0, 0},
                            std::array<double, 3> a = {0, 0, 0}) {
        return Trajectory{[p](double) { return p; }, [v](double) { return v; },
                          [a](double) { return a; }};
    }
};

/// c / |x - alpha(x^0)|. Spatial partials fall back to the static formulas at
/// the instantaneous center; time partials follow the moving-center rules,
/// optionally with the velocity-quadratic contributions omitted.
class MovingCoulombFamily : public FunctionFamily {
public:
    MovingCoulombFamily(Cplx c, Trajectory traj, bool omit_velocity_quadratics = true)
        : c_(c), traj_(std::move(traj)), omit_quad_(omit_velocity_quadratics) {}

    Cplx partial(std::span<const std::uint8_t> mi, const Point& x) const override {
        double t = x[0];
        std::array<double, 3> a = traj_.pos(t);
        std::array<double, 3> d{x[1] - a[0], x[2] - a[1], x[3] - a[2]};
        double r2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
        if (r2 == 0.0) throw EvalError("MovingCoulombFamily: evaluation at the center");
        double r = std::sqrt(r2), r3 = r2 * r, r5 = r3 * r2;

        std::size_t zeros = 0;
        while (zeros < mi.size() && mi[zeros] == 0) ++zeros;
        std::span<const std::uint8_t> sp = mi.subspan(zeros);

        if (zeros == 0) {
            CoulombFamily st(c_, a);
            return st.partial(mi, x);
        }
        auto v = traj_.vel(t);
        double dv = d[0] * v[0] + d[1] * v[1] + d[2] * v[2];
        if (zeros == 1 && sp.empty()) return c_ * dv / r3;
        if (zeros == 1 && sp.size() == 1) {
            int j = sp[0] - 1;
            return c_ * (v[j] / r3 - 3.0 * dv * d[j] / r5);
        }
        if (zeros == 2 && sp.empty()) {
            auto g = traj_.acc(t);
            double dg = d[0] * g[0] + d[1] * g[1] + d[2] * g[2];
            Cplx val = c_ * dg / r3;
            if (!omit_quad_) {
                double vv = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
                val += c_ * (-vv / r3 + 3.0 * dv * dv / r5);
            }
            return val;
        }
        throw EvalError("MovingCoulombFamily: unsupported derivative combination");
    }

private:
    Cplx c_;
    Trajectory traj_;
    bool omit_quad_;
};

/// Finite sum of coordinate monomials c * (x^0)^p0 ... (x^3)^p3.
class PolynomialFamily : public FunctionFamily {
public:
    struct Term {
        Cplx c;
        std::array<int, 4> pow;
    };
    explicit PolynomialFamily(std::vector<Term> terms) : terms_(std::move(terms)) {}

    Cplx partial(std::span<const std::uint8_t> mi, const Point& x) const override {
        Cplx out(0.0);
        for (const auto& t : terms_) {
            std::array<int, 4> p = t.pow;
            double factor = 1.0;
            bool dead = false;
            for (auto i : mi) {
                if (p[i] == 0) { dead = true; break; }
                factor *= p[i];
                --p[i];
            }
            if (dead) continue;
            double mono = 1.0;
            for (int mu = 0; mu < 4; ++mu)
                for (int k = 0; k < p[mu]; ++k) mono *= x[mu];
            out += t.c * factor * mono;
        }
        return out;
    }

private:
    std::vector<Term> terms_;
};

/// amp * sin(k . x + phase), derivatives of any order by the sin/cos cycle.
class SinusoidFamily : public FunctionFamily {
public:
    SinusoidFamily(Cplx amp, std::array<double, 4> k, double phase = 0.0)
        : amp_(amp), k_(k), phase_(phase) {}

    Cplx partial(std::span<const std::uint8_t> mi, const Point& x) const override {
        double u = phase_;
        for (int mu = 0; mu < 4; ++mu) u += k_[mu] * x[mu];
        double factor = 1.0;
        for (auto i : mi) factor *= k_[i];
        switch (mi.size() % 4) {
            case 0: return amp_ * factor * std::sin(u);
            case 1: return amp_ * factor * std::cos(u);
            case 2: return amp_ * factor * -std::sin(u);
            default: return amp_ * factor * -std::cos(u);
        }
    }

private:
    Cplx amp_;
    std::array<double, 4> k_;
    double phase_;
};

/// Maps symbol names to concrete function families for numeric evaluation.
class FunctionBackend {
public:
    FunctionBackend& bind(const Symbol& s, std::shared_ptr<const FunctionFamily> fam) {
        fams_[s.name()] = std::move(fam);
        return *this;
    }
    FunctionBackend& bind(const Symbol& s, Cplx constant) {
        return bind(s, std::make_shared<ConstantFamily>(constant));
    }

    const FunctionFamily& family(const std::string& name) const {
        auto it = fams_.find(name);
        if (it == fams_.end()) throw EvalError("backend: no family bound for symbol " + name);
        return *it->second;
    }

private:
    std::map<std::string, std::shared_ptr<const FunctionFamily>> fams_;
};

/// Numeric value of an expression at a point.
inline Cplx eval(const ScalarExpr& e, const FunctionBackend& backend, const Point& x) {
    Cplx total(0.0);
    for (const auto& m : e.monomials()) {
        Cplx v{m.c.re.to_double(), m.c.im.to_double()};
        for (const auto& f : m.factors)
            v *= backend.family(f.sym.name()).partial(std::span(f.idx), x);
        Cplx arg(0.0);
        for (const auto& [s, a] : m.ex)
            arg += a.to_double() * backend.family(s.name()).partial({}, x);
        if (arg != Cplx(0.0)) v *= std::exp(arg);
        total += v;
    }
    return total;
}

} // namespace framecalc
