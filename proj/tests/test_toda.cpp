#include <doctest.h>

#include <cmath>

#include "solibound/glm.hpp"
#include "solibound/toda.hpp"

using namespace solibound;

namespace {

template <class F>
std::string error_code_of(F&& f) {
    try {
        f();
    } catch (const EvalError& e) {
        return e.code();
    } catch (...) {
        return "<other>";
    }
    return "<none>";
}

}  // namespace

TEST_CASE("chart maps take their closed-form values and invert") {
    const TodaParams prm = TodaParams::ex1_default();  // c = 2, identity gauges
    const LatticeChartPoint cp = toda_transform(prm, 0.3, -0.2);
    CHECK(cp.X == doctest::Approx(std::exp(0.1)).epsilon(1e-14));
    CHECK(cp.Y == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
    const auto xy = toda_chart_from_XY(prm, cp.X, cp.Y);
    CHECK(xy[0] == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(xy[1] == doctest::Approx(-0.2).epsilon(1e-13));
    CHECK(error_code_of([&] { toda_chart_from_XY(prm, -1.0, 1.0); }) == "out-of-chart");
    // the trigonometric family has no closed-form inverse here
    CHECK(error_code_of([&] {
        toda_chart_from_XY(TodaParams::ex2_default(), 0.3, 0.4);
    }) == "out-of-chart");
}

TEST_CASE("chart jacobian agrees with the inverted forward derivative") {
    for (const TodaParams& prm :
         {TodaParams::ex1_default(), TodaParams::ex2_default(), TodaParams::ex3_default()}) {
        const double x = 0.25, y = -0.15, h = 1e-5;
        const LatticeChartPoint cp = toda_transform(prm, x, y);
        const auto fwd = [&](double xx, double yy) {
            const LatticeChartPoint q = toda_transform(prm, xx, yy);
            return std::array<double, 2>{q.X, q.Y};
        };
        const double Xx = (fwd(x + h, y)[0] - fwd(x - h, y)[0]) / (2 * h);
        const double Xy = (fwd(x, y + h)[0] - fwd(x, y - h)[0]) / (2 * h);
        const double Yx = (fwd(x + h, y)[1] - fwd(x - h, y)[1]) / (2 * h);
        const double Yy = (fwd(x, y + h)[1] - fwd(x, y - h)[1]) / (2 * h);
        const double det = Xx * Yy - Xy * Yx;
        // f11 = x_X, f12 = y_X, f21 = x_Y, f22 = y_Y from the inverted forward matrix
        CHECK(std::abs(cp.jac.f11 - Cx(Yy / det)) < 1e-8);
        CHECK(std::abs(cp.jac.f12 - Cx(-Yx / det)) < 1e-8);
        CHECK(std::abs(cp.jac.f21 - Cx(-Xy / det)) < 1e-8);
        CHECK(std::abs(cp.jac.f22 - Cx(Xx / det)) < 1e-8);
    }
}

TEST_CASE("degenerate chart points are rejected") {
    const TodaParams prm = TodaParams::ex2_default();
    // sin(b) = 0 collapses the trigonometric chart
    CHECK(error_code_of([&] { toda_transform(prm, 0.3, 0.0); }) == "degenerate-transform");
}

TEST_CASE("spectral link reproduces the kernel ratio exactly") {
    for (const TodaParams& prm :
         {TodaParams::ex1_default(), TodaParams::ex1c1_default(), TodaParams::ex2_default(),
          TodaParams::ex3_default()}) {
        CHECK(std::abs(prm.nu() - prm.p * prm.q_linked()) == 0.0);
    }
}

TEST_CASE("parameter validation enforces the family constraints") {
    TodaParams prm = TodaParams::ex1_default();
    prm.c = 1.0;  // excluded from ex1; that member is its own family
    CHECK(error_code_of([&] { prm.validate(); }) == "invalid-config");
    prm = TodaParams::ex1_default();
    prm.c = 0.0;
    CHECK(error_code_of([&] { prm.validate(); }) == "invalid-config");
    prm = TodaParams::ex1_default();
    prm.k = Cx{2.0};  // dressing amplitude link needs k^2 = 1
    CHECK(error_code_of([&] { prm.validate_dressing(); }) == "invalid-config");
    prm = TodaParams::ex3_from_D(1.0, Cx{1.0});  // nu = p^2/D = 1
    CHECK(error_code_of([&] { prm.validate_dressing(); }) == "invalid-config");
}

TEST_CASE("seeds take their closed-form values") {
    const TodaParams e1 = TodaParams::ex1_default();
    const double X = 1.3, Y = 0.8;
    CHECK(std::abs(toda_seed(e1, X, Y, 2)
                   - Cx(3.0 * (std::log(X) + 0.5 * std::log(Y))))
          < 1e-14);
    CHECK(error_code_of([&] { toda_seed(e1, -1.0, 1.0, 1); }) == "out-of-chart");
    const TodaParams e2 = TodaParams::ex2_default();
    CHECK(std::abs(toda_seed(e2, X, Y, 3) - Cx(-3.0 * std::log(X * Y))) < 1e-14);
    TodaParams e3 = TodaParams::ex3_default();
    e3.u0_const = Cx{0.7};
    CHECK(std::abs(toda_seed(e3, X, Y, 5) - Cx(0.7)) == 0.0);
}

TEST_CASE("seed partials match a finite-difference probe") {
    for (const TodaParams& prm :
         {TodaParams::ex1_default(), TodaParams::ex1c1_default(), TodaParams::ex2_default()}) {
        const LatticePartials parts = toda_seed_partials(prm);
        const double X = 1.2, Y = 0.9, h = 1e-5;
        const int n = 3;
        const Cx fd_X =
            (toda_seed(prm, X + h, Y, n) - toda_seed(prm, X - h, Y, n)) / (2.0 * h);
        const Cx fd_Y =
            (toda_seed(prm, X, Y + h, n) - toda_seed(prm, X, Y - h, n)) / (2.0 * h);
        CHECK(std::abs(parts.u_X(X, Y, n) - fd_X) < 1e-9);
        CHECK(std::abs(parts.u_Y(X, Y, n) - fd_Y) < 1e-9);
    }
}

TEST_CASE("chart wavefunction takes its closed-form value") {
    const TodaParams prm = TodaParams::ex1_default();
    const Cx psi = toda_psi(prm, single_wave(prm.k, prm.p), 0.25, -0.15, 2);
    CHECK(std::abs(psi - Cx(8.92101786446571015e-5)) < 1e-18);
    // no printed chart closed form at c = 1
    CHECK(error_code_of([&] {
        toda_psi(TodaParams::ex1c1_default(), single_wave(1.0, 0.8), 0.1, 0.1, 0);
    }) == "invalid-config");
}

TEST_CASE("closed kernels take their closed-form values") {
    const TodaParams e1 = TodaParams::ex1_default();
    const LatticeChartPoint cp = toda_transform(e1, 0.25, -0.15);
    CHECK(std::abs(toda_kernel_closed(e1, cp.X, cp.Y, 2) - Cx(-1.1629507185683250e-8))
          < 1e-22);
    const TodaParams e2 = TodaParams::ex2_default();
    CHECK(std::abs(toda_kernel_closed(e2, 0.3, 2.7, -1) - Cx(4.9383423710336531e-4))
          < 1e-17);
    const TodaParams e3 = TodaParams::ex3_default();
    CHECK(std::abs(toda_kernel_closed(e3, 0.0, 0.0, 0) - Cx(-3.0 / 7.0)) < 1e-15);
}

TEST_CASE("kernels equal the half-lattice sums of their wavefunctions") {
    // closed kernels against directly summed rank-1 solutions; the
    // wavefunction pairs below exist only in this test
    const TodaParams e2 = TodaParams::ex2_default();
    const Cx p2 = e2.p, eta = -p2 / (e2.c * e2.c);
    for (int n : {-1, 0, 2}) {
        const double X = 0.4, Y = 1.1;
        const SeqField psi = [&](int j) {
            return ipow(p2 * X, j) * std::exp(p2 * X * X / 2.0 - Y * Y / (2.0 * p2));
        };
        const SeqField psh = [&](int j) {
            return ipow(eta / X, j) * std::exp(-X * X / (2.0 * eta) + eta * Y * Y / 2.0);
        };
        CHECK(std::abs(glm_discrete_solve(psi, psh, n, n) - toda_kernel_closed(e2, X, Y, n))
              < 1e-12);  // the sum carries ~1e2 terms of size ~1e-1
    }
    const TodaParams c1 = TodaParams::ex1c1_default();
    const Cx p1 = c1.p, q1 = -p1;
    for (int n : {0, 1}) {
        const double X = 0.45, Y = 2.4;
        const SeqField psi = [&](int j) {
            return ipow(p1, j) * std::pow(X, p1.real() - j) * std::pow(Y, -1.0 / p1.real());
        };
        const SeqField psh = [&](int j) {
            return ipow(q1, j) * std::pow(X, j - 1.0 / q1.real()) * std::pow(Y, q1.real());
        };
        CHECK(std::abs(glm_discrete_solve(psi, psh, n, n) - toda_kernel_closed(c1, X, Y, n))
              < 1e-15);
    }
    const TodaParams e3 = TodaParams::ex3_default();
    const Cx p3 = e3.p, q3 = p3 / e3.D();
    for (int n : {-2, 1}) {
        const double X = 0.8, Y = 1.9;
        const SeqField psi = [&](int j) { return ipow(p3, j) * std::exp(p3 * X - Y / p3); };
        const SeqField psh = [&](int j) { return ipow(q3, j) * std::exp(-X / q3 + q3 * Y); };
        CHECK(std::abs(glm_discrete_solve(psi, psh, n, n) - toda_kernel_closed(e3, X, Y, n))
              < 1e-15);
    }
}

TEST_CASE("dressing subtracts the kernel logarithm") {
    const TodaParams prm = TodaParams::ex3_default();
    const double X = 0.6, Y = 1.7;
    const Cx K = toda_kernel_closed(prm, X, Y, 1);
    CHECK(std::abs(toda_dressed(prm, X, Y, 1)
                   - (toda_seed(prm, X, Y, 1) - std::log(1.0 + K)))
          == 0.0);
}

TEST_CASE("kernel branch and pole guards fire where the ratio exceeds one") {
    const TodaParams bad = TodaParams::ex3_from_D(0.25, Cx{1.0});  // nu = 4
    bad.validate();  // evaluable, just not regular everywhere
    // 1 + K < 0 at t = exp(-3Y - 0.75X) in (1/3, 4/3)
    CHECK(error_code_of([&] { toda_dressed(bad, 0.0, 0.2, 0); }) == "branch-violation");
    // 1 + K = 0 exactly at t = 4/3
    const double Ystar = -std::log(4.0 / 3.0) / 3.0;
    CHECK(error_code_of([&] { toda_dressed(bad, 0.0, Ystar, 0); }) == "solution-pole");
    // the default ratio 1/4 keeps 1 + K in (1/4, 1) everywhere
    const TodaParams good = TodaParams::ex3_default();
    double worst = 1.0;
    for (double X = -2.0; X <= 2.0; X += 0.5)
        for (double Y = -2.0; Y <= 2.0; Y += 0.5)
            for (int n = -6; n <= 6; ++n)
                worst = std::min(worst, std::abs(1.0 + toda_kernel_closed(good, X, Y, n)));
    CHECK(worst > 0.1);
}

TEST_CASE("contour multiplier matches its closed form") {
    const TodaParams prm = TodaParams::ex1_default();
    for (double y : {-0.3, 0.2}) {
        for (int n : {-3, 0, 4}) {
            const LatticeChartPoint cp = toda_transform(prm, prm.x0, y);
            const Cx u_n = toda_seed(prm, cp.X, cp.Y, n);
            const Cx direct = toda_multiplier_B(n, cp.jac, u_n, Cx{1.0});
            // (-1)^n e^{n (2 a0 - log c + (1+c) b(y))} for identity gauges
            const double expo = 2.0 * prm.x0 - std::log(prm.c) + (1.0 + prm.c) * y;
            const Cx closed = ipow(Cx{-1.0}, n) * std::exp(Cx(n * expo));
            CHECK(std::abs(direct - closed) < 1e-13 * std::abs(closed));
        }
    }
}

TEST_CASE("boundary constraint vanishes on the contour and gates off it") {
    const TodaParams prm = TodaParams::ex1_default();
    const LatticeFn dressed = toda_dressed_fn(prm);
    const double D = prm.D();
    for (double X : {0.7, 1.2}) {
        const double Y = D / (X * X);
        CHECK(std::abs(toda_boundary_residual(prm, X, Y, -2, dressed, 1e-3)) < 1e-8);
    }
    CHECK(error_code_of([&] { toda_boundary_residual(prm, 1.0, 2.0, 0, dressed, 1e-3); })
          == "off-contour");
    CHECK(std::abs(toda_constraint_value(prm, 2.2, 0.4, -4, dressed, 1e-3)) > 1e-4);
}

TEST_CASE("trigonometric and c=1 constraints hold off the contour too") {
    const TodaParams e2 = TodaParams::ex2_default();
    const LatticeFn u2 = toda_dressed_fn(e2);
    CHECK(std::abs(toda_constraint_value(e2, 0.3, 2.7, -2, u2, 5e-4)) < 1e-8);
    const TodaParams c1 = TodaParams::ex1c1_default();
    const LatticeFn u1 = toda_dressed_fn(c1);
    CHECK(std::abs(toda_constraint_value(c1, 1.2, 6.0, 3, u1, 1e-3)) < 1e-8);
}

TEST_CASE("generic boundary machinery vanishes on the contour") {
    for (const TodaParams& prm : {TodaParams::ex1_default(), TodaParams::ex2_default()}) {
        const TodaJacobianFamily fam = toda_family(prm);
        const LatticeFn seed = toda_seed_fn(prm);
        for (double y : {0.3, 0.8}) {
            for (int n : {-2, 1}) {
                CHECK(std::abs(generic_toda_boundary_residual(prm, n, y, seed, fam, 1e-4))
                      < 1e-9);
            }
        }
    }
}

TEST_CASE("contour level function is constant along each contour") {
    const TodaParams e1 = TodaParams::ex1_default();
    const double D = e1.D();
    CHECK(contour_level(e1, 0.9, D / std::pow(0.9, e1.c))
          == doctest::Approx(D).epsilon(1e-13));
    const TodaParams e2 = TodaParams::ex2_default();
    const LatticeChartPoint cp = toda_transform(e2, e2.x0, 0.7);
    CHECK(contour_level(e2, cp.X, cp.Y) == doctest::Approx(e2.D()).epsilon(1e-13));
}

TEST_CASE("lattice weights are ratios of consecutive exponentials") {
    const TodaParams prm = TodaParams::ex2_default();
    const LatticeFn u = toda_seed_fn(prm);
    const double X = 0.8, Y = 1.1;
    // w(n) = e^{u(n)-u(n+1)} = X Y for this seed, independent of n
    CHECK(std::abs(lattice_w(u, X, Y, 0) - Cx(X * Y)) < 1e-14);
    CHECK(std::abs(lattice_w(u, X, Y, 3) - Cx(X * Y)) < 1e-14);
}
