#include <doctest.h>

#include <cmath>

#include "solibound/kp.hpp"
#include "solibound/scalar.hpp"

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

/* cosh(tau) = 0 for p = 0.5+0.5i, y0 = 0 at this (x, T) pair */
constexpr double kPoleX = -1.0048104499561859;
constexpr double kPoleT = 0.67569202011807938;

}  // namespace

TEST_CASE("elementary solution takes its closed-form values") {
    const KPParams prm;
    const KPSeed a = kp_seed({0.0, 1.0, 1.0}, prm);
    CHECK(std::abs(a.u - Cx(1.0 / 18.0)) < 1e-16);
    CHECK(std::abs(a.w - Cx(-5.0 / 648.0)) < 1e-16);
    const KPSeed b = kp_seed({1.0, 1.0, 1.0}, prm);
    CHECK(std::abs(b.w - Cx(31.0 / 648.0)) < 1e-16);
}

TEST_CASE("elementary solution rejects the coordinate singularity") {
    const KPParams prm;
    CHECK(error_code_of([&] { kp_seed({0.0, 1.0, 0.0}, prm); }) == "singular-T");
    CHECK(error_code_of([&] { kp_psi({0.0, 1.0, 0.0}, single_wave(1.0, 0.5), prm); })
          == "singular-T");
}

TEST_CASE("parameter validation rejects bad configurations") {
    KPParams prm;
    prm.alpha = Cx{2.0};
    CHECK(error_code_of([&] { prm.validate(); }) == "invalid-config");
    prm = KPParams{};
    prm.y0 = -1.0;
    CHECK(error_code_of([&] { prm.validate(); }) == "invalid-config");
    prm = KPParams{};
    prm.g = Cx{0.0};
    CHECK(error_code_of([&] { prm.validate(); }) == "invalid-config");
    prm = KPParams{};
    prm.q = Cx{0.4};  // dressing requires q = p
    CHECK(error_code_of([&] { prm.validate_dressing(); }) == "invalid-config");
    prm = KPParams{};
    prm.d = Cx{2.0};  // and d l = 1
    CHECK(error_code_of([&] { prm.validate_dressing(); }) == "invalid-config");
    prm = KPParams{};
    prm.p = prm.q = Cx{-0.5};  // and Re p > 0
    CHECK(error_code_of([&] { prm.validate_dressing(); }) == "invalid-config");
}

TEST_CASE("wavefunctions match their exponent formulas") {
    const KPParams prm;
    const Point pt{0.3, 0.5, 1.2};
    CHECK(std::abs(kp_psi(pt, single_wave(1.0, 0.5), prm) - Cx(0.56803973051976985))
          < 1e-15);
    CHECK(std::abs(kp_psi_hat(pt, single_wave(1.0, 0.5), prm) - Cx(0.68644350398817294))
          < 1e-15);
}

TEST_CASE("wavefunction sums are linear in the amplitudes") {
    const KPParams prm;
    const Point pt{0.2, -0.4, 0.9};
    const Cx one = kp_psi(pt, single_wave(1.0, 0.5), prm);
    const Cx two = kp_psi(pt, single_wave(2.0, 0.5), prm);
    CHECK(std::abs(two - 2.0 * one) < 1e-15);
    const WaveSum pair = {WaveTerm{Cx{1.0}, Cx{0.5}}, WaveTerm{Cx{0.5}, Cx{0.3}}};
    const Cx sum = kp_psi(pt, pair, prm);
    const Cx second = kp_psi(pt, single_wave(0.5, 0.3), prm);
    CHECK(std::abs(sum - one - second) < 1e-15);
}

TEST_CASE("wave validation needs distinct spectral parameters") {
    const WaveSum dup = {WaveTerm{Cx{1.0}, Cx{0.5}}, WaveTerm{Cx{1.0}, Cx{0.5}}};
    CHECK(error_code_of([&] { validate_waves(dup); }) == "invalid-config");
    CHECK(error_code_of([&] { validate_waves({}); }) == "invalid-config");
}

TEST_CASE("diagonal kernel has the expected asymptotic limits") {
    const KPParams prm;
    const Cx p = prm.p;
    CHECK(std::abs(kp_kernel_closed({40.0, 0.5, 1.0}, prm) + 2.0 * p) < 1e-10);
    CHECK(std::abs(kp_kernel_closed({-40.0, 0.5, 1.0}, prm)) < 1e-12);
}

TEST_CASE("dressed solution takes its closed-form values") {
    const KPParams prm;
    const KPDressed v = kp_dressed({0.4, 0.6, 1.1}, prm);
    CHECK(std::abs(v.tau - Cx(0.38088738625928709)) < 1e-15);
    CHECK(std::abs(v.u - Cx(-0.40889809447250086)) < 1e-14);
    CHECK(std::abs(v.w - Cx(0.063262293394315228)) < 1e-14);
}

TEST_CASE("dressed field equals seed plus twice the kernel x-derivative") {
    const KPParams prm;
    const double h = 1e-4;
    for (double x : {-0.8, 0.1, 0.9}) {
        const Point pt{x, 0.5, 1.3};
        const Field kdiag = [&prm, &pt](const Point& q) {
            return kp_kernel_closed({q[0], pt[1], pt[2]}, prm);
        };
        const Cx lhs = kp_dressed(pt, prm).u;
        const Cx rhs = kp_seed(pt, prm).u + 2.0 * diff1(kdiag, pt, 0, 1, h);
        CHECK(std::abs(lhs - rhs) < 1e-10);
    }
}

TEST_CASE("purely imaginary alpha keeps the dressed solution real") {
    KPParams prm;
    prm.alpha = Cx{0.0, 1.0};
    prm.validate();
    const KPDressed v = kp_dressed({0.7, -0.6, 1.4}, prm);
    CHECK(std::abs(v.u.imag()) < 1e-14);
    CHECK(std::abs(v.tau.imag()) < 1e-14);
}

TEST_CASE("complex spectral parameter hits a solution pole") {
    KPParams prm;
    prm.y0 = 0.0;
    prm.p = prm.q = Cx{0.5, 0.5};
    prm.validate_dressing();
    CHECK(error_code_of([&] { kp_dressed({kPoleX, 0.0, kPoleT}, prm); }) == "solution-pole");
    CHECK(error_code_of([&] { kp_kernel_closed({kPoleX, 0.0, kPoleT}, prm); })
          == "kernel-pole");
    // off the pole both evaluate fine
    CHECK(finite(kp_dressed({kPoleX + 0.3, 0.0, kPoleT}, prm).u));
}

TEST_CASE("boundary constraint vanishes on the contour and gates off it") {
    const KPParams prm;
    const FieldPair seed = kp_seed_fields(prm);
    const FieldPair dressed = kp_dressed_fields(prm);
    for (double t : {0.6, 1.0, 1.7}) {
        const TransformPoint tp = hyperbolic_transform(prm.y0, t);
        CHECK(std::abs(kp_boundary_residual({0.4, tp.Y, tp.T}, seed, prm)) < 1e-12);
        CHECK(std::abs(kp_boundary_residual({0.4, tp.Y, tp.T}, dressed, prm)) < 1e-12);
    }
    CHECK(error_code_of([&] { kp_boundary_residual({0.0, 2.0, 1.0}, seed, prm); })
          == "off-contour");
    // off the contour the constraint value is genuinely large
    CHECK(std::abs(kp_constraint_value({0.0, 2.0, 1.0}, dressed, prm)) > 1e-3);
}

TEST_CASE("generic boundary machinery reduces to the specialized constraint") {
    const KPParams prm;
    const FieldPair seed = kp_seed_fields(prm);
    const KPJacobianFamily fam = hyperbolic_family();
    for (double t : {0.7, 1.3}) {
        for (double x : {-0.5, 0.8}) {
            const TransformPoint tp = hyperbolic_transform(prm.y0, t);
            const Cx gen = generic_boundary_residual(x, t, seed, fam, prm);
            const Cx spc = kp_constraint_value({x, tp.Y, tp.T}, seed, prm);
            CHECK(std::abs(gen * (2.0 * prm.alpha / t) - spc) < 1e-12);
        }
    }
}

TEST_CASE("chart map inverts the coordinate change") {
    const TransformPoint tp = hyperbolic_transform(1.3, 0.7);
    CHECK(tp.Y == doctest::Approx(0.91).epsilon(1e-14));
    CHECK(tp.T == doctest::Approx(1.3 / 0.7).epsilon(1e-14));
    // f-matrix entries of the inverse map
    CHECK(std::abs(tp.jac.f11 - Cx(1.0 / (2.0 * 0.7))) < 1e-14);
    CHECK(std::abs(tp.jac.f12 - Cx(1.0 / (2.0 * 1.3))) < 1e-14);
    CHECK(std::abs(tp.jac.f21 - Cx(0.7 / 2.0)) < 1e-14);
    CHECK(std::abs(tp.jac.f22 + Cx(0.49 / (2.0 * 1.3))) < 1e-14);
    CHECK(error_code_of([&] { hyperbolic_transform(1.0, 0.0); }) == "degenerate-transform");
}

TEST_CASE("contour multiplier matches its closed form") {
    const KPParams prm;
    for (double t : {0.6, 1.4}) {
        for (double x : {-1.0, 0.5}) {
            const TransformPoint tp = hyperbolic_transform(prm.y0, t);
            const Cx direct = multiplier_B(x, t, tp.jac, prm.alpha, prm.g);
            const Cx closed = prm.g * std::exp(Cx(x * t * t) / (6.0 * prm.alpha));
            CHECK(std::abs(direct - closed) < 1e-14);
        }
    }
}

TEST_CASE("degenerate contour reduces to the line soliton") {
    KPParams prm;
    prm.y0 = 0.0;
    const FieldPair fd = kp_dressed_fields(prm);
    CHECK(std::abs(kdv_soliton(0.3, 1.2, 0.5) - Cx(-0.41100061468452689)) < 1e-15);
    for (double Y : {-1.0, 0.0, 2.0}) {
        const Point pt{0.3, Y, 1.2};
        CHECK(std::abs(fd.u(pt) - kdv_soliton(0.3, 1.2, prm.p)) == 0.0);
    }
}

TEST_CASE("extended-precision fields agree with the double pipeline") {
    const KPParams prm;
    const FieldPairL ld = kp_dressed_fields_ld(prm);
    const FieldPair d = kp_dressed_fields(prm);
    const Point pt{0.4, 0.6, 1.1};
    const PointL ptl{0.4L, 0.6L, 1.1L};
    CHECK(std::abs(static_cast<Cx>(ld.u(ptl)) - d.u(pt)) < 1e-15);
    CHECK(std::abs(static_cast<Cx>(ld.w(ptl)) - d.w(pt)) < 1e-15);
}

TEST_CASE("quarter phase coefficient disagrees with the kernel chain") {
    const KPParams prm;
    const Point pt{0.4, 0.6, 1.1};
    const Cx good = kp_dressed(pt, prm, TauYCoefficient::sixth).u;
    const Cx bad = kp_dressed(pt, prm, TauYCoefficient::quarter).u;
    CHECK(std::abs(good - bad) > 1e-3);
    // they coincide where the Y-term drops out
    const Cx g0 = kp_dressed({0.4, 0.0, 1.1}, prm, TauYCoefficient::sixth).u;
    const Cx b0 = kp_dressed({0.4, 0.0, 1.1}, prm, TauYCoefficient::quarter).u;
    CHECK(std::abs(g0 - b0) == 0.0);
}
