#include "solibound/glm.hpp"

#include <cmath>
#include <vector>

namespace solibound {

namespace {

constexpr double kPoleTol = 1e-12;

void check_quadrature(const QuadratureSpec& spec) {
    if (!(spec.n_nodes >= 3) || spec.n_nodes % 2 == 0)
        raise("invalid-config", "quadrature needs an odd node count >= 3");
    if (!std::isfinite(spec.lower_cutoff))
        raise("invalid-config", "quadrature cutoff must be finite");
    if (!(spec.tail_tol > 0.0))
        raise("invalid-config", "tail tolerance must be positive");
}

/* Composite Simpson of f over [lo, hi] with n odd samples; also reports the
   magnitudes of the first sample and the largest sample for the tail check. */
struct SimpsonResult {
    Cx integral;
    double first_abs;
    double peak_abs;
};

SimpsonResult simpson(const std::function<Cx(double)>& f, double lo, double hi, int n) {
    const double h = (hi - lo) / (n - 1);
    Cx sum{0.0};
    double first_abs = 0.0, peak_abs = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = lo + h * i;
        const Cx v = f(s);
        if (!finite(v))
            raise("non-finite-sample", "integrand at s = " + std::to_string(s));
        const double a = std::abs(v);
        if (i == 0) first_abs = a;
        if (a > peak_abs) peak_abs = a;
        const double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += w * v;
    }
    return SimpsonResult{sum * (h / 3.0), first_abs, peak_abs};
}

/* Half-line integral int_{-inf}^{x}, cut at the configured lower end. */
Cx half_line_integral(const std::function<Cx(double)>& f, double x, const QuadratureSpec& spec) {
    if (!(x > spec.lower_cutoff))
        raise("invalid-config", "evaluation point below the quadrature cutoff");
    const auto r = simpson(f, spec.lower_cutoff, x, spec.n_nodes);
    if (r.first_abs > spec.tail_tol * (1.0 + r.peak_abs))
        raise("tail-not-converged",
              "integrand magnitude " + std::to_string(r.first_abs) + " at the cutoff");
    return r.integral;
}

Cx denominator_guard(Cx one_plus) {
    if (std::abs(one_plus) <= kPoleTol * (1.0 + std::abs(one_plus - Cx{1.0})))
        raise("kernel-pole", "1 + <psi, psi_hat> vanishes");
    return one_plus;
}

void check_truncation(const TruncationSpec& spec) {
    if (!(spec.max_terms >= 1))
        raise("invalid-config", "truncation needs at least one term");
    if (!(spec.tail_tol > 0.0))
        raise("invalid-config", "tail tolerance must be positive");
}

/* Sum over j >= n, stopping once terms fall under tail_tol relative to the
   running sum; diverging or non-decaying tails are rejected. */
Cx lattice_tail_sum(const std::function<Cx(int)>& term, int n, const TruncationSpec& spec) {
    Cx sum{0.0};
    double prev_abs = -1.0;
    for (int j = n; j < n + spec.max_terms; ++j) {
        const Cx t = term(j);
        if (!finite(t))
            raise("non-finite-sample", "series term at j = " + std::to_string(j));
        sum += t;
        const double a = std::abs(t);
        if (a <= spec.tail_tol * std::max(1.0, std::abs(sum))) return sum;
        if (prev_abs >= 0.0 && a >= prev_abs && a > spec.tail_tol)
            raise("tail-not-converged", "series terms stopped decaying at j = "
                                            + std::to_string(j));
        prev_abs = a;
    }
    raise("tail-not-converged", "series needs more than "
                                    + std::to_string(spec.max_terms) + " terms");
}

}  // namespace

Cx glm_continuous_solve(const LineField& psi, const LineField& psi_hat, double x, double z,
                        const QuadratureSpec& spec) {
    check_quadrature(spec);
    const auto prod = [&](double s) { return psi(s) * psi_hat(s); };
    const Cx denom = denominator_guard(1.0 + half_line_integral(prod, x, spec));
    return -psi(x) * psi_hat(z) / denom;
}

Cx glm_continuous_residual(const LineField& psi, const LineField& psi_hat, double x, double z,
                           const QuadratureSpec& spec) {
    check_quadrature(spec);
    const Cx K_xz = glm_continuous_solve(psi, psi_hat, x, z, spec);
    const Cx F_xz = psi(x) * psi_hat(z);
    // int_{-inf}^x K(x,s) F(s,z) ds; K(x,s) shares the x-dependent denominator
    const auto prod = [&](double s) { return psi(s) * psi_hat(s); };
    const Cx denom = denominator_guard(1.0 + half_line_integral(prod, x, spec));
    const auto kf = [&](double s) { return -psi(x) * psi_hat(s) / denom * psi(s) * psi_hat(z); };
    return K_xz + F_xz + half_line_integral(kf, x, spec);
}

Cx glm_discrete_solve(const SeqField& psi, const SeqField& psi_hat, int n, int m,
                      const TruncationSpec& spec) {
    check_truncation(spec);
    const auto prod = [&](int j) { return psi(j) * psi_hat(j); };
    const Cx denom = denominator_guard(1.0 + lattice_tail_sum(prod, n, spec));
    return -psi(n) * psi_hat(m) / denom;
}

Cx glm_discrete_residual(const SeqField& psi, const SeqField& psi_hat, int n, int m,
                         const TruncationSpec& spec) {
    check_truncation(spec);
    if (m < n) raise("invalid-config", "residual needs m >= n");
    const Cx K_nm = glm_discrete_solve(psi, psi_hat, n, m, spec);
    const auto prod = [&](int j) { return psi(j) * psi_hat(j); };
    const Cx denom = denominator_guard(1.0 + lattice_tail_sum(prod, n, spec));
    const auto kf = [&](int j) { return -psi(n) * psi_hat(j) / denom * psi(j) * psi_hat(m); };
    return K_nm + psi(n) * psi_hat(m) + lattice_tail_sum(kf, n, spec);
}

}  // namespace solibound
