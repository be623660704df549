#pragma once

#include <functional>

#include "solibound/scalar.hpp"

namespace solibound {

/* Composite-Simpson settings for the half-line integrals. The integrand is
   assumed to decay toward -inf; the tail monitor rejects cutoffs whose
   endpoint samples are not negligible against the peak. */
struct QuadratureSpec {
    double lower_cutoff = -40.0;
    int n_nodes = 32769;  // odd
    double tail_tol = 1e-14;
};

/* Truncation settings for the one-sided lattice sums (terms k = n..inf). */
struct TruncationSpec {
    int max_terms = 400;
    double tail_tol = 1e-14;
};

using LineField = std::function<Cx(double)>;
using SeqField = std::function<Cx(int)>;

/* Degenerate integral-equation solve on the half line (-inf, x]:
   K(x,z) = -psi(x) psihat(z) / (1 + I(x)),  I(x) = int_{-inf}^x psi psihat.
   errors: kernel-pole (1 + I ~ 0), tail-not-converged, non-finite-sample,
   invalid-config. */
Cx glm_continuous_solve(const LineField& psi, const LineField& psi_hat,
                        double x, double z, const QuadratureSpec& spec = {});

/* Residual of the integral equation itself at (x, z):
   K(x,z) + F(x,z) + int_{-inf}^x K(x,s) F(s,z) ds,
   with F(x,z) = psi(x) psihat(z) and K the degenerate solution above. */
Cx glm_continuous_residual(const LineField& psi, const LineField& psi_hat,
                           double x, double z, const QuadratureSpec& spec = {});

/* Degenerate summation-equation solve on the half lattice [n, inf):
   K(n,m) = -psi(n) psihat(m) / (1 + S(n)),  S(n) = sum_{j>=n} psi(j) psihat(j).
   errors: kernel-pole, tail-not-converged, non-finite-sample, invalid-config. */
Cx glm_discrete_solve(const SeqField& psi, const SeqField& psi_hat,
                      int n, int m, const TruncationSpec& spec = {});

/* Residual of the summation equation at (n, m >= n):
   K(n,m) + F(n,m) + sum_{j>=n} K(n,j) F(j,m),  F(n,m) = psi(n) psihat(m). */
Cx glm_discrete_residual(const SeqField& psi, const SeqField& psi_hat,
                         int n, int m, const TruncationSpec& spec = {});

}  // namespace solibound
