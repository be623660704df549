#include "solibound/toda.hpp"

#include <cmath>

#include "solibound/diff.hpp"

namespace solibound {

namespace {

constexpr double kParamTol = 1e-12;
constexpr double kTiny = 1e-12;

bool ex1_family(TodaExample e) {
    return e == TodaExample::ex1 || e == TodaExample::ex1c1 || e == TodaExample::ex3;
}

std::string lat_str(double X, double Y, int n) {
    return format_lattice_point(Point{X, Y, 0.0}, n);
}

void need_positive_chart(double X, double Y, int n) {
    if (!(X > 0.0) || !(Y > 0.0))
        raise("out-of-chart", "needs X > 0 and Y > 0 at " + lat_str(X, Y, n));
}

}  // namespace

SmoothFn identity_fn() {
    SmoothFn fn;
    fn.f = [](double v) { return v; };
    fn.df = [](double) { return 1.0; };
    fn.identity = true;
    return fn;
}

double TodaParams::D() const {
    const double a0 = a.f(x0);
    return ex1_family(example) ? std::exp(2.0 * c * a0) : std::exp(2.0 * a0);
}

Cx TodaParams::nu() const {
    if (example == TodaExample::ex2) return -p * p / (c * c);
    return -(p * p / c) * std::pow(D(), (1.0 - c) / (2.0 * c));
}

Cx TodaParams::q_linked() const {
    if (example == TodaExample::ex2) return -p / (c * c);
    return -(p / c) * std::exp((1.0 - c) * a.f(x0));
}

void TodaParams::validate() const {
    if (!a.f || !a.df || !b.f || !b.df)
        raise("invalid-config", "chart gauges must be set");
    if (!std::isfinite(x0)) raise("invalid-config", "x0 must be finite");
    if (!std::isfinite(c)) raise("invalid-config", "c must be finite");
    require_finite(p, "invalid-config", "p");
    require_finite(k, "invalid-config", "k");
    require_finite(u0_const, "invalid-config", "u0 level");
    switch (example) {
        case TodaExample::ex1:
            if (std::abs(c) <= kParamTol || std::abs(c - 1.0) <= kParamTol)
                raise("invalid-config", "ex1 needs c outside {0, 1}");
            break;
        case TodaExample::ex1c1:
            if (std::abs(c - 1.0) > kParamTol)
                raise("invalid-config", "ex1c1 is the c = 1 member");
            break;
        case TodaExample::ex2:
            if (std::abs(c) <= kParamTol)
                raise("invalid-config", "ex2 needs c != 0");
            break;
        case TodaExample::ex3:
            if (std::abs(c + 1.0) > kParamTol)
                raise("invalid-config", "ex3 is the c = -1 member");
            break;
    }
}

void TodaParams::validate_dressing() const {
    validate();
    if (std::abs(p) <= kParamTol)
        raise("invalid-config", "dressing needs p != 0");
    if (std::abs(k * k - Cx{1.0}) > kParamTol)
        raise("invalid-config", "dressing needs k^2 = 1 (amplitude link l = k)");
    if (std::abs(nu() - Cx{1.0}) <= kParamTol)
        raise("invalid-config", "nu = 1 is degenerate");
}

TodaParams TodaParams::ex1_default() {
    TodaParams prm;
    prm.example = TodaExample::ex1;
    prm.c = 2.0;
    prm.x0 = 0.0;
    prm.p = Cx{0.7};
    return prm;
}

TodaParams TodaParams::ex1c1_default() {
    TodaParams prm;
    prm.example = TodaExample::ex1c1;
    prm.c = 1.0;
    prm.x0 = 0.0;
    prm.p = Cx{0.8};
    return prm;
}

TodaParams TodaParams::ex2_default() {
    TodaParams prm;
    prm.example = TodaExample::ex2;
    prm.c = 1.0;
    prm.x0 = 0.0;
    prm.p = Cx{0.5};
    return prm;
}

TodaParams TodaParams::ex3_default() { return ex3_from_D(4.0, Cx{1.0}); }

TodaParams TodaParams::ex3_from_D(double D, Cx p) {
    if (!(D > 0.0)) raise("invalid-config", "ex3 contour level must be positive");
    TodaParams prm;
    prm.example = TodaExample::ex3;
    prm.c = -1.0;
    prm.x0 = -0.5 * std::log(D);  // D = e^{2 c a(x0)} = e^{-2 x0}
    prm.p = p;
    return prm;
}

LatticeChartPoint toda_transform(const TodaParams& prm, double x, double y) {
    prm.validate();
    const double av = prm.a.f(x), ad = prm.a.df(x);
    const double bv = prm.b.f(y), bd = prm.b.df(y);
    if (std::abs(ad) <= kTiny || std::abs(bd) <= kTiny)
        raise("degenerate-transform", "chart gauge derivative vanishes");
    const double c = prm.c;
    if (ex1_family(prm.example)) {
        const double X = std::exp(av + bv);
        const double Y = std::exp(c * (av - bv));
        const Cx f11{1.0 / (2.0 * ad * X)};
        const Cx f12{1.0 / (2.0 * bd * X)};
        const Cx f21{1.0 / (2.0 * c * ad * Y)};
        const Cx f22{-1.0 / (2.0 * c * bd * Y)};
        return LatticeChartPoint{X, Y, Jacobian::make(f11, f12, f21, f22)};
    }
    const double X = std::exp(av) * std::sin(bv);
    const double Y = c * std::exp(av) * std::cos(bv);
    // forward matrix [[X_x, X_y], [Y_x, Y_y]], determinant -a' b' c e^{2a}
    const double det = -ad * bd * c * std::exp(2.0 * av);
    const Cx f11{-c * bd * X / det};
    const Cx f12{-ad * Y / det};
    const Cx f21{-bd * Y / (c * det)};
    const Cx f22{ad * X / det};
    return LatticeChartPoint{X, Y, Jacobian::make(f11, f12, f21, f22)};
}

std::array<double, 2> toda_chart_from_XY(const TodaParams& prm, double X, double Y) {
    prm.validate();
    if (!prm.a.identity || !prm.b.identity)
        raise("out-of-chart", "inverse chart needs identity gauges");
    if (!ex1_family(prm.example))
        raise("out-of-chart", "inverse chart covers the exponential family only");
    need_positive_chart(X, Y, 0);
    const double s = std::log(X);          // x + y
    const double d = std::log(Y) / prm.c;  // x - y
    return {(s + d) / 2.0, (s - d) / 2.0};
}

Cx toda_multiplier_B(int n, const Jacobian& jac, Cx u_n, Cx d_gauge) {
    return std::exp(u_n) * ipow(-jac.f21 / jac.f11, n) * d_gauge;
}

TodaJacobianFamily toda_family(const TodaParams& prm) {
    prm.validate();
    TodaJacobianFamily fam;
    fam.jac = [prm](double x, double y) { return toda_transform(prm, x, y).jac; };
    if (ex1_family(prm.example)) {
        // f21/f11 = X/(c Y): d/dy log = (1 + c) b'
        fam.dlog_ratio_dy = [prm](double, double y) { return Cx{(1.0 + prm.c) * prm.b.df(y)}; };
    } else {
        // f21/f11 = Y/(c^2 X): d/dy log = -b' (c X / Y + Y / (c X))
        fam.dlog_ratio_dy = [prm](double x, double y) {
            const auto cp = toda_transform(prm, x, y);
            return Cx{-prm.b.df(y) * (prm.c * cp.X / cp.Y + cp.Y / (prm.c * cp.X))};
        };
    }
    fam.dlog_d_dy = [](double) { return Cx{0.0}; };
    fam.map = [prm](double x, double y) {
        const auto cp = toda_transform(prm, x, y);
        return std::array<double, 2>{cp.X, cp.Y};
    };
    return fam;
}

Cx generic_toda_boundary_residual(const TodaParams& prm, int n, double y, const LatticeFn& u,
                                  const TodaJacobianFamily& family, double h) {
    prm.validate();
    const Field chart_u = [&family, &u, n](const Point& pt) {
        const auto XY = family.map(pt[0], pt[1]);
        return u(XY[0], XY[1], n);
    };
    const Point at{prm.x0, y, 0.0};
    const Cx ux = diff(chart_u, at, {1, 0, 0}, h);
    const Cx uy = diff(chart_u, at, {0, 1, 0}, h);
    const Jacobian jac = family.jac(prm.x0, y);
    return double(n) * family.dlog_ratio_dy(prm.x0, y) + uy
           + 2.0 * jac.f21 / jac.delta * (jac.f11 * ux + jac.f12 * uy) + family.dlog_d_dy(y);
}

namespace {

std::array<Cx, 2> lattice_partials(double X, double Y, int n, const LatticeFn& u, double h,
                                   const LatticePartials* analytic) {
    if (analytic) return {analytic->u_X(X, Y, n), analytic->u_Y(X, Y, n)};
    const Field f = [&u, n](const Point& pt) { return u(pt[0], pt[1], n); };
    const Point at{X, Y, 0.0};
    return {diff(f, at, {1, 0, 0}, h), diff(f, at, {0, 1, 0}, h)};
}

}  // namespace

Cx toda_constraint_value(const TodaParams& prm, double X, double Y, int n, const LatticeFn& u,
                         double h, const LatticePartials* analytic) {
    prm.validate();
    const auto [uX, uY] = lattice_partials(X, Y, n, u, h, analytic);
    const double c = prm.c;
    switch (prm.example) {
        case TodaExample::ex1:
        case TodaExample::ex1c1:
            return X * uX + c * Y * uY - (1.0 + c) * double(n);
        case TodaExample::ex2:
            if (std::abs(X) <= kTiny || std::abs(Y) <= kTiny)
                raise("out-of-chart", "constraint needs X != 0 and Y != 0");
            return Y * uX + c * c * X * uY + double(n) * (Y / X + c * c * X / Y);
        case TodaExample::ex3:
            return X * uX - Y * uY;
    }
    raise("invalid-config", "unknown example");
}

double contour_level(const TodaParams& prm, double X, double Y) {
    switch (prm.example) {
        case TodaExample::ex1:
            if (!(X > 0.0)) raise("out-of-chart", "contour level needs X > 0");
            return Y * std::pow(X, prm.c);
        case TodaExample::ex1c1:
            return X * Y;
        case TodaExample::ex2:
            return X * X + Y * Y / (prm.c * prm.c);
        case TodaExample::ex3:
            if (std::abs(X) <= kTiny) raise("out-of-chart", "contour level needs X != 0");
            return Y / X;
    }
    raise("invalid-config", "unknown example");
}

Cx toda_boundary_residual(const TodaParams& prm, double X, double Y, int n, const LatticeFn& u,
                          double h, const LatticePartials* analytic, double contour_tol) {
    const double level = contour_level(prm, X, Y);
    const double want = prm.D();
    if (std::abs(level - want) > contour_tol)
        raise("off-contour", "level " + std::to_string(level) + ", contour at "
                                 + std::to_string(want));
    return toda_constraint_value(prm, X, Y, n, u, h, analytic);
}

Cx toda_seed(const TodaParams& prm, double X, double Y, int n) {
    prm.validate();
    switch (prm.example) {
        case TodaExample::ex1:
        case TodaExample::ex1c1:
            need_positive_chart(X, Y, n);
            return 0.5 * (1.0 + prm.c) * double(n) * (std::log(X) + std::log(Y) / prm.c);
        case TodaExample::ex2:
            if (!(X * Y > 0.0))
                raise("out-of-chart", "seed needs X*Y > 0 at " + lat_str(X, Y, n));
            return -double(n) * std::log(X * Y);
        case TodaExample::ex3:
            return prm.u0_const;
    }
    raise("invalid-config", "unknown example");
}

LatticeFn toda_seed_fn(const TodaParams& prm) {
    prm.validate();
    return [prm](double X, double Y, int n) { return toda_seed(prm, X, Y, n); };
}

LatticePartials toda_seed_partials(const TodaParams& prm) {
    prm.validate();
    LatticePartials out;
    switch (prm.example) {
        case TodaExample::ex1:
        case TodaExample::ex1c1: {
            const double c = prm.c;
            out.u_X = [c](double X, double, int n) { return Cx{0.5 * (1.0 + c) * n / X}; };
            out.u_Y = [c](double, double Y, int n) { return Cx{0.5 * (1.0 + c) * n / (c * Y)}; };
            break;
        }
        case TodaExample::ex2:
            out.u_X = [](double X, double, int n) { return Cx{-double(n) / X}; };
            out.u_Y = [](double, double Y, int n) { return Cx{-double(n) / Y}; };
            break;
        case TodaExample::ex3:
            out.u_X = [](double, double, int) { return Cx{0.0}; };
            out.u_Y = [](double, double, int) { return Cx{0.0}; };
            break;
    }
    return out;
}

namespace {

/* Exponents of the chart wavefunctions (c != 1):
   phi(p)     = (2 e^{(1-c)b/2}/(1-c)) (p e^{(1-c)a/2} + (c/p) e^{(c-1)a/2})
   phi_hat(q) = -(2 e^{(1-c)b/2}/(1-c)) ((1/q) e^{(1-c)a/2} + c q e^{(c-1)a/2}) */
Cx chart_wave_sum(const TodaParams& prm, const WaveSum& waves, double x, double y, int n,
                  bool hat) {
    prm.validate();
    validate_waves(waves);
    if (std::abs(prm.c - 1.0) <= kParamTol)
        raise("invalid-config", "closed wavefunctions need c != 1");
    for (const auto& wv : waves)
        if (std::abs(wv.spectral) <= kParamTol)
            raise("invalid-config", "wave spectral parameter must be nonzero");
    const double c = prm.c;
    const double av = prm.a.f(x), bv = prm.b.f(y);
    const double ep = std::exp((1.0 - c) * av / 2.0);   // e^{(1-c)a/2}
    const double em = std::exp((c - 1.0) * av / 2.0);   // e^{(c-1)a/2}
    const double pref = 2.0 * std::exp((1.0 - c) * bv / 2.0) / (1.0 - c);
    const double sgn = hat ? -1.0 : 1.0;
    const double chart_exp = sgn * (-0.5) * (1.0 + c) * double(n) * (av + bv);
    Cx sum{0.0};
    for (const auto& wv : waves) {
        const Cx s = wv.spectral;
        const Cx phase = hat ? -pref * (ep / s + c * s * em) : pref * (s * ep + c / s * em);
        sum += wv.amplitude * ipow(s, n) * std::exp(phase + chart_exp);
    }
    if (!finite(sum))
        raise("non-finite-sample", "wavefunction overflow at chart x = " + std::to_string(x)
                                       + ", y = " + std::to_string(y));
    return sum;
}

}  // namespace

Cx toda_psi(const TodaParams& prm, const WaveSum& waves, double x, double y, int n) {
    return chart_wave_sum(prm, waves, x, y, n, false);
}

Cx toda_psi_hat(const TodaParams& prm, const WaveSum& waves, double x, double y, int n) {
    return chart_wave_sum(prm, waves, x, y, n, true);
}

namespace {

/* Exponential part E of the diagonal kernel: K(n,n) = [1/(nu-1) - nu^{-n} E]^{-1}
   holds for all four examples with the E below. */
Cx kernel_exponential(const TodaParams& prm, double X, double Y, int n) {
    const Cx p = prm.p;
    const double c = prm.c;
    switch (prm.example) {
        case TodaExample::ex3: {
            // the c = -1 exponents are both 1: E is entire in (X, Y)
            const Cx nu = prm.nu();
            return std::exp((1.0 - nu) / p * Y - p * (1.0 - 1.0 / nu) * X);
        }
        case TodaExample::ex1: {
            need_positive_chart(X, Y, n);
            const Cx nu = prm.nu();
            const double Ypow = std::pow(Y, (c - 1.0) / (2.0 * c));
            const double Xpow = std::pow(X, (1.0 - c) / 2.0);
            return std::exp(2.0 / (c - 1.0)
                            * (c / p * (1.0 - nu) * Ypow + p * (1.0 - 1.0 / nu) * Xpow));
        }
        case TodaExample::ex1c1:
            need_positive_chart(X, Y, n);
            return std::pow(Cx{Y / X}, p + 1.0 / p);
        case TodaExample::ex2:
            return std::exp(0.5 * (p + c * c / p) * (Y * Y / (c * c) - X * X));
    }
    raise("invalid-config", "unknown example");
}

}  // namespace

Cx toda_kernel_closed(const TodaParams& prm, double X, double Y, int n) {
    prm.validate_dressing();
    const Cx nu = prm.nu();
    const Cx term = ipow(nu, -n) * kernel_exponential(prm, X, Y, n);
    const Cx denom = 1.0 / (nu - 1.0) - term;
    if (std::abs(denom) <= kTiny * (1.0 + std::abs(term)))
        raise("kernel-pole", "kernel denominator vanishes at " + lat_str(X, Y, n));
    return 1.0 / denom;
}

Cx toda_dressed(const TodaParams& prm, double X, double Y, int n) {
    const Cx u0 = toda_seed(prm, X, Y, n);
    const Cx opk = 1.0 + toda_kernel_closed(prm, X, Y, n);
    if (std::abs(opk) < kTiny)
        raise("solution-pole", "1 + K vanishes at " + lat_str(X, Y, n));
    if (std::abs(opk.imag()) <= 1e-14 * std::abs(opk) && opk.real() < 0.0)
        raise("branch-violation", "1 + K = " + std::to_string(opk.real()) + " crosses the cut at "
                                      + lat_str(X, Y, n));
    return u0 - std::log(opk);
}

LatticeFn toda_dressed_fn(const TodaParams& prm) {
    prm.validate_dressing();
    return [prm](double X, double Y, int n) { return toda_dressed(prm, X, Y, n); };
}

LatticeFn toda_seed_fn_or_dressed(const TodaParams& prm, bool dressed) {
    return dressed ? toda_dressed_fn(prm) : toda_seed_fn(prm);
}

Cx lattice_w(const LatticeFn& u, double X, double Y, int n) {
    return std::exp(u(X, Y, n) - u(X, Y, n + 1));
}

}  // namespace solibound
