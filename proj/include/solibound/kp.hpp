#pragma once

#include <array>
#include <functional>

#include "solibound/diff.hpp"
#include "solibound/jacobian.hpp"
#include "solibound/scalar.hpp"
#include "solibound/waves.hpp"

namespace solibound {

/* Two-component solution (u, w) over coordinates (x, Y, T). */
struct FieldPair {
    Field u, w;
};

/* Extended-precision variant used by the verifier where third-derivative
   stencils at small h would otherwise drown in double rounding. */
struct FieldPairL {
    FieldL u, w;
};

/* Parameters of the hyperbolic-contour solution family.

   alpha is restricted to 1 or i. y0 fixes the boundary curve Y*T = y0^2.
   (p, q) are the spectral parameters and (d, l) the amplitudes of the
   one-soliton wavefunctions; g is the constant gauge factor of the contour
   multiplier. The dressed pipeline additionally needs q = p, d*l = 1 and
   Re p > 0 (decay of the kernel integrand towards -inf). */
struct KPParams {
    Cx alpha{1.0};
    double y0 = 1.0;
    Cx p{0.5};
    Cx q{0.5};
    Cx d{1.0};
    Cx l{1.0};
    Cx g{1.0};

    void validate() const;           // errors: invalid-config
    void validate_dressing() const;  // errors: invalid-config
};

/* Chart point (y, t) mapped to (Y, T) = (y*t, y/t), plus the Jacobian of the
   inverse map, with f11 = y_Y, f12 = t_Y, f21 = y_T, f22 = t_T. */
struct TransformPoint {
    double Y, T;
    Jacobian jac;
};
TransformPoint hyperbolic_transform(double y, double t);  // errors: degenerate-transform

/* A coordinate-change family along which the generic boundary machinery can
   be evaluated: the Jacobian at a chart point, the t-derivative of f21/f11,
   the gauge derivative (log g)_t (zero for constant gauge), and the forward
   map (y, t) -> (Y, T). */
struct KPJacobianFamily {
    std::function<Jacobian(double y, double t)> jac;
    std::function<Cx(double y, double t)> ratio_dt;
    std::function<Cx(double t)> dlog_g_dt;
    std::function<std::array<double, 2>(double y, double t)> map;
};
KPJacobianFamily hyperbolic_family();

/* Contour multiplier B = g * exp(x * f21 / (6 alpha f11)). */
Cx multiplier_B(double x, double t, const Jacobian& jac, Cx alpha, Cx g);

/* Generic boundary constraint at chart point (y0, t):
   Delta (log g)_t + (x Delta / 6 alpha) (f21/f11)_t + f21 u / alpha
   + 6 alpha f11 w - f21^3 / (108 alpha^3 f11^2),
   with the fields evaluated at (x, Y(y0,t), T(y0,t)). */
Cx generic_boundary_residual(double x, double t, const FieldPair& fields,
                             const KPJacobianFamily& family, const KPParams& prm);

/* Specialized constraint -x/(3T) + u + 6 alpha^2 (T/Y) w - (alpha^2/108)(Y/T)^2,
   evaluated anywhere (kp_constraint_value) or gated to the contour
   |Y*T - y0^2| <= contour_tol (kp_boundary_residual; errors: off-contour,
   and degenerate contour y0 = 0 with Y != 0 is off-contour as well). */
Cx kp_constraint_value(const Point& pt, const FieldPair& fields, const KPParams& prm);
Cx kp_boundary_residual(const Point& pt, const FieldPair& fields, const KPParams& prm,
                        double contour_tol = 1e-9);

/* Elementary contour-compatible solution:
   u0 = alpha^2 Y y0^2 / (18 T^3),
   w0 = alpha^2 x y0^2 / (18 T^3) + Y^2 y0^2 / (36 T^4) - 23 y0^6 / (648 T^6). */
struct KPSeed {
    Cx u, w;
};
KPSeed kp_seed(const Point& pt, const KPParams& prm);  // errors: singular-T
FieldPair kp_seed_fields(const KPParams& prm);
FieldPairL kp_seed_fields_ld(const KPParams& prm);

/* Power of the spectral parameter in the T-term of the wavefunction exponent.
   Only the cubic term solves the linear systems; the quadratic variant is
   kept as a regression witness and must fail the residual checks. */
enum class TimeTerm { cubic, quadratic };

/* Wavefunctions attached to the seed coefficients. kp_psi sums
   d_j exp(theta(p_j)) with
     theta(p) = x(p - s) + (Y/alpha)(p - s)^2 - alpha Y^2 y0^2/(36 T^3)
              + alpha y0^6/(48 T^5) + alpha^2 y0^4 p/(36 T^3)
              - y0^2 p^2/(alpha T) - 4 T p^3,      s = y0^2/(12 alpha T^2);
   kp_psi_hat sums l_j exp(theta_hat(q_j)) with
     theta_hat(q) = x(q + s) - (Y/alpha)(q + s)^2 + alpha Y^2 y0^2/(36 T^3)
                  - alpha y0^6/(48 T^5) + alpha^2 y0^4 q/(36 T^3)
                  + y0^2 q^2/(alpha T) - 4 T q^3. */
Cx kp_psi(const Point& pt, const WaveSum& waves, const KPParams& prm,
          TimeTerm tt = TimeTerm::cubic);  // errors: singular-T, non-finite-sample
Cx kp_psi_hat(const Point& pt, const WaveSum& waves, const KPParams& prm);

/* Diagonal one-soliton kernel K(x,x) = -(1/(2p) + chi)^{-1},
   chi = exp(-2xp + alpha^2 Y y0^2 p/(3T^2) - alpha^2 y0^4 p/(18T^3) + 8Tp^3). */
Cx kp_kernel_closed(const Point& pt, const KPParams& prm);  // errors: kernel-pole

/* Coefficient of the Y-term in the dressed phase tau. The sixth variant
   (y0^2 p / (6 T^2)) is the one consistent with the kernel chi and the
   dressing chain; the quarter variant is a regression witness. */
enum class TauYCoefficient { sixth, quarter };

/* Dressed solution
     u1 = alpha^2 Y y0^2/(18T^3) - 2p^2/cosh^2(tau)
     w1 = alpha^2 x y0^2/(18T^3) + alpha^2 y0^2 p^2/(3T^2 cosh^2 tau)
        + Y^2 y0^2/(36T^4) - 23 y0^6/(648T^6)
     tau = -p x + alpha^2 Y y0^2 p/(6T^2) - alpha^2 y0^4 p/(36T^3) + 4Tp^3
         + (1/2) log(2p)   [principal branch]. */
struct KPDressed {
    Cx u, w, tau;
};
KPDressed kp_dressed(const Point& pt, const KPParams& prm,
                     TauYCoefficient yc = TauYCoefficient::sixth);
// errors: singular-T, solution-pole (cosh tau = 0, possible for complex p)
FieldPair kp_dressed_fields(const KPParams& prm,
                            TauYCoefficient yc = TauYCoefficient::sixth);
FieldPairL kp_dressed_fields_ld(const KPParams& prm,
                                TauYCoefficient yc = TauYCoefficient::sixth);

/* One-soliton reference the y0 = 0 case must reduce to:
   -2p^2 sech^2(-px + 4Tp^3 + (1/2) log 2p). */
Cx kdv_soliton(double x, double T, Cx p);

}  // namespace solibound
