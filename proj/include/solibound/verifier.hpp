#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "solibound/grid.hpp"
#include "solibound/kp.hpp"
#include "solibound/residual.hpp"
#include "solibound/toda.hpp"

namespace solibound {

/* ---- continuous-model checks -------------------------------------- */

/* Residuals of the evolution system
     r1 = u_T + u_xxx - 6 u u_x + 3 alpha^2 w_Y
     r2 = w_x - u_Y
   scanned over a grid in (x, Y, T); all derivatives by 4th-order stencil.
   Returns {r1 report, r2 report}. */
std::array<ResidualReport, 2> check_kp_equation(const FieldPair& fields, Cx alpha,
                                                const GridSpec& grid, double h);

/* Same relation evaluated in extended precision; needed when the target
   tolerance sits below the double rounding floor of h^-3 stencils. */
std::array<ResidualReport, 2> check_kp_equation_ld(const FieldPairL& fields, Cx alpha,
                                                   const GridSpec& grid, double h);

/* Auxiliary linear systems. "original"/"conjugate" take a wavefunction over
   (x, Y, T) and check
     alpha psi_Y = psi_xx - u psi            (conjugate: -alpha on the left)
     psi_T = -4 psi_xxx + 6 u psi_x + 3 (u_x + alpha w) psi   (conjugate: -alpha w)
   "transformed"/"transformed_conjugate" take a wavefunction over the chart
   (x, y, t); the y/t derivatives are matched against the same right-hand
   sides combined through the Jacobian family (required). Residuals are
   normalized pointwise by max(|psi|, tiny). Returns {line 1, line 2}. */
enum class KPLaxForm { original, conjugate, transformed, transformed_conjugate };

std::array<ResidualReport, 2> check_kp_lax(const Field& psi, const FieldPair& fields,
                                           Cx alpha, KPLaxForm form, const GridSpec& grid,
                                           double h, const KPJacobianFamily* family = nullptr);

/* Contour identity psi_hat = B psi at y = y0: relative deviation scanned
   over x and the chart parameter t. */
ResidualReport check_definition1_kp(const KPParams& prm, const Axis& x_axis,
                                    const Axis& t_axis);

/* ---- lattice checks ------------------------------------------------ */

/* Residual u_XY(n) - w(n-1) + w(n) with w(n) = e^{u(n)-u(n+1)}, scanned over
   an (X, Y) grid and the lattice window [n_lo, n_hi]. */
ResidualReport check_toda_equation(const LatticeFn& u, const GridSpec& grid,
                                   int n_lo, int n_hi, double h);

/* Lattice auxiliary systems around the seed background, using the built-in
   single-wave pair (k at p, l = k at the contour-linked q).
   original              : psi_X = -u_X psi(n) + psi(n+1),  psi_Y = -w(n-1) psi(n-1)
   conjugate             : psihat_X = u_X psihat(n) - psihat(n-1),
                           psihat_Y = w(n) psihat(n+1)
   transformed           : the same lines pulled back to the chart through the
                           Jacobian family
   transformed_conjugate : chart form of the conjugate lines
   ex1, ex1_conjugate    : the ex1-family specialization with explicit chart
                           coefficients.
   Grid axes are chart coordinates (x, y). */
enum class TodaLaxForm {
    original,
    conjugate,
    transformed,
    transformed_conjugate,
    ex1,
    ex1_conjugate,
};

struct TodaLaxOptions {
    bool use_u_instead_of_w = false;  // regression control: u(n-1) where w(n-1) belongs
    bool flip_uX_sign = false;        // regression control: -u_X in the conjugate X line
};

std::array<ResidualReport, 2> check_toda_lax(const TodaParams& prm, TodaLaxForm form,
                                             const GridSpec& chart_grid, int n_lo, int n_hi,
                                             double h, const TodaLaxOptions& options = {});

/* Contour identity psihat(n) = B(n) psi(n) at x = x0, scanned over the chart
   parameter y and the lattice window. */
ResidualReport check_definition1_toda(const TodaParams& prm, const Axis& y_axis,
                                      int n_lo, int n_hi);

/* ---- check runner --------------------------------------------------- */

struct CheckOutcome {
    std::string name;
    std::string relation;  // which identity was exercised
    ResidualReport report;
    double threshold = 0.0;
    double require_min = 0.0;
    bool pass = false;
    bool order_probed = false;
    double order = 0.0;         // log2(res(2h')/res(h')) from the probe pair
    bool order_at_floor = false;  // probe residuals under the noise floor
    double ratio = 0.0;         // variant/baseline in ratio mode
    std::string note;
};

/* One named check. Modes, in precedence order:
   - expect_error nonempty: run(h) must raise that error code.
   - variant set: pass iff variant(h).max_abs / run(h).max_abs >= min_ratio.
   - require_min > 0: pass iff run(h).max_abs >= require_min (violation probe).
   - otherwise: pass iff run(h).max_abs <= threshold; when probe_order is set
     the pair run(probe_h), run(probe_h/2) must show order >= min_order unless
     both sit below order_floor. */
struct Check {
    std::string name;
    std::string relation;
    std::function<ResidualReport(double h)> run;
    double h = 1e-3;
    double threshold = 0.0;
    double require_min = 0.0;
    bool probe_order = false;
    double probe_h = 0.0;
    double min_order = 3.5;
    double order_floor = 1e-11;
    std::function<ResidualReport(double h)> variant;
    double min_ratio = 0.0;
    std::string expect_error;
};

CheckOutcome run_check(const Check& c);

struct CheckSuite {
    std::string name;
    std::vector<Check> checks;
};

struct SuiteOutcome {
    std::string name;
    std::vector<CheckOutcome> outcomes;
    bool pass = false;
    double seconds = 0.0;
};

/* Runs checks in order (each check parallelizes its own grid scan). */
SuiteOutcome run_suite(const CheckSuite& suite);

}  // namespace solibound
