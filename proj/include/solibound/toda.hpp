#pragma once

#include <array>
#include <functional>

#include "solibound/jacobian.hpp"
#include "solibound/scalar.hpp"
#include "solibound/waves.hpp"

namespace solibound {

/* Built-in lattice boundary families.
   ex1   : X = e^{a(x)+b(y)}, Y = e^{c(a(x)-b(y))}, c not in {0, 1};
           contour Y X^c = D.
   ex1c1 : the c = 1 member of the same family; contour X Y = D.
   ex2   : X = e^{a(x)} sin b(y), Y = c e^{a(x)} cos b(y);
           contour X^2 + Y^2/c^2 = D (an ellipse).
   ex3   : the c = -1 member of the first family; contour Y/X = D (a line). */
enum class TodaExample { ex1, ex1c1, ex2, ex3 };

/* Chart gauge: a smooth strictly monotone function and its derivative.
   The identity flag marks the built-in gauge so the inverse chart knows the
   map is solvable in closed form. */
struct SmoothFn {
    std::function<double(double)> f, df;
    bool identity = false;
};
SmoothFn identity_fn();

/* Lattice solution over (X, Y, n). */
using LatticeFn = std::function<Cx(double X, double Y, int n)>;

/* Parameters of one lattice boundary family.

   Derived quantities: the contour constant D (e^{2 c a(x0)} for the ex1
   family including its c = 1 and c = -1 members, e^{2 a(x0)} for ex2), the
   kernel ratio nu (-(p^2/c) D^{(1-c)/(2c)} for the ex1 family, -p^2/c^2 for
   ex2; nu equals the spectral product p*q), and the conjugate spectral
   parameter q tied to p by the contour (-(p/c) e^{(1-c) a(x0)} for the ex1
   family, -p/c^2 for ex2). The closed kernels stay evaluable for any nu != 1
   (so poles at |nu| > 1 can be probed); only the summation-equation
   cross-check needs |nu| < 1 for geometric convergence. */
struct TodaParams {
    TodaExample example = TodaExample::ex1;
    double c = 2.0;
    double x0 = 0.0;
    Cx p{0.7};
    Cx k{1.0};        // wave amplitude; the contour link fixes l = k
    Cx u0_const{0.0};           // ex3 seed level
    SmoothFn a = identity_fn();  // chart gauges
    SmoothFn b = identity_fn();

    double D() const;
    Cx nu() const;
    Cx q_linked() const;
    void validate() const;           // errors: invalid-config
    void validate_dressing() const;  // errors: invalid-config (nu = 1, k^2 != 1)

    static TodaParams ex1_default();    // c = 2, x0 = 0, p = 0.7
    static TodaParams ex1c1_default();  // p = 0.8
    static TodaParams ex2_default();    // c = 1, p = 0.5
    static TodaParams ex3_default();    // D = 4, p = 1  (nu = 1/4)
    static TodaParams ex3_from_D(double D, Cx p);
};

/* Chart map at (x, y): image (X, Y) plus the Jacobian of the inverse map,
   f11 = x_X, f12 = y_X, f21 = x_Y, f22 = y_Y. */
struct LatticeChartPoint {
    double X, Y;
    Jacobian jac;
};
LatticeChartPoint toda_transform(const TodaParams& prm, double x, double y);
// errors: degenerate-transform (ex2 at sin b cos b = 0, vanishing gauges)

/* Inverse chart for identity gauges (ex1 family only).
   errors: out-of-chart (X <= 0, Y <= 0, or non-identity gauges). */
std::array<double, 2> toda_chart_from_XY(const TodaParams& prm, double X, double Y);

/* Contour multiplier B(n) = e^{u(n)} (-f21/f11)^n d(y). */
Cx toda_multiplier_B(int n, const Jacobian& jac, Cx u_n, Cx d_gauge);

/* Jacobian family along the chart: the matrix, d/dy of log(f21/f11), the
   gauge derivative d/dy log d (zero for constant gauge), and the forward
   map (x, y) -> (X, Y). */
struct TodaJacobianFamily {
    std::function<Jacobian(double x, double y)> jac;
    std::function<Cx(double x, double y)> dlog_ratio_dy;
    std::function<Cx(double y)> dlog_d_dy;
    std::function<std::array<double, 2>(double x, double y)> map;
};
TodaJacobianFamily toda_family(const TodaParams& prm);

/* Generic boundary constraint at chart point (x0, y):
   n d/dy log(f21/f11) + u_y(n) + (2 f21/Delta)(f11 u_x(n) + f12 u_y(n))
   + d/dy log d,
   with u_x, u_y taken by stencil through the chart map (step h). */
Cx generic_toda_boundary_residual(const TodaParams& prm, int n, double y,
                                  const LatticeFn& u, const TodaJacobianFamily& family,
                                  double h);

/* Optional closed-form partials for constraints whose fields have elementary
   derivatives (seeds); when absent the constraint differentiates by stencil. */
struct LatticePartials {
    LatticeFn u_X, u_Y;
};

/* Specialized constraint value in lattice variables:
   ex1   : X u_X + c Y u_Y - (1+c) n
   ex1c1 : X u_X + Y u_Y - 2 n
   ex2   : Y u_X + c^2 X u_Y + n (Y/X + c^2 X/Y)
   ex3   : X u_X - Y u_Y. */
Cx toda_constraint_value(const TodaParams& prm, double X, double Y, int n,
                         const LatticeFn& u, double h,
                         const LatticePartials* analytic = nullptr);

/* Level function whose fixed value D picks the boundary contour:
   Y X^c | X Y | X^2 + Y^2/c^2 | Y/X. */
double contour_level(const TodaParams& prm, double X, double Y);

/* Contour-gated constraint; errors: off-contour. */
Cx toda_boundary_residual(const TodaParams& prm, double X, double Y, int n,
                          const LatticeFn& u, double h,
                          const LatticePartials* analytic = nullptr,
                          double contour_tol = 1e-9);

/* Seed solutions:
   ex1   : u0(n) = (1+c) n (log X + (1/c) log Y) / 2
   ex1c1 : u0(n) = n (log X + log Y)
   ex2   : u0(n) = -n log(X Y)
   ex3   : u0(n) = const. */
Cx toda_seed(const TodaParams& prm, double X, double Y, int n);  // errors: out-of-chart
LatticeFn toda_seed_fn(const TodaParams& prm);
LatticePartials toda_seed_partials(const TodaParams& prm);

/* Wavefunctions over the chart (printed closed forms exist for the ex1
   family with c != 1 only):
     psi(n)     = e^{-(n/2)(1+c)(a+b)} sum_j k_j p_j^n e^{phi(p_j)}
     psi_hat(n) = e^{+(n/2)(1+c)(a+b)} sum_j l_j q_j^n e^{phi_hat(q_j)}
   with phi(p)      = (2 e^{(1-c)b/2}/(1-c)) (p e^{(1-c)a/2} + (c/p) e^{(c-1)a/2}),
        phi_hat(q) = -(2 e^{(1-c)b/2}/(1-c)) ((1/q) e^{(1-c)a/2} + c q e^{(c-1)a/2}). */
Cx toda_psi(const TodaParams& prm, const WaveSum& waves, double x, double y, int n);
Cx toda_psi_hat(const TodaParams& prm, const WaveSum& waves, double x, double y, int n);
// errors: invalid-config (c = 1), non-finite-sample

/* Closed-form diagonal kernels K(n,n):
   ex1   : [1/(nu-1) - nu^{-n} exp((2/(c-1))((c/p)(1-nu) Y^{(c-1)/(2c)}
                                           + p(1-1/nu) X^{(1-c)/2}))]^{-1}
   ex1c1 : -[(-p^2)^{-n} (Y/X)^{p+1/p} + 1/(1+p^2)]^{-1}
   ex2   : -[(-p^2/c^2)^{-n} exp((1/2)(p+c^2/p)(Y^2/c^2 - X^2)) + 1/(1+p^2/c^2)]^{-1}
   ex3   : [1/(nu-1) - nu^{-n} exp(((1-nu)/p) Y - p(1-1/nu) X)]^{-1}. */
Cx toda_kernel_closed(const TodaParams& prm, double X, double Y, int n);
// errors: kernel-pole, out-of-chart

/* Dressed solution u1(n) = u0(n) - log(1 + K(n,n)), principal branch.
   errors: solution-pole (1+K = 0), branch-violation (1+K on the negative
   real axis in the real pipeline). */
Cx toda_dressed(const TodaParams& prm, double X, double Y, int n);
LatticeFn toda_dressed_fn(const TodaParams& prm);
LatticeFn toda_seed_fn_or_dressed(const TodaParams& prm, bool dressed);

/* w(n) = exp(u(n) - u(n+1)). */
Cx lattice_w(const LatticeFn& u, double X, double Y, int n);

}  // namespace solibound
