#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace solibound {

using Cx = std::complex<double>;

/* Evaluation point: up to three continuous coordinates (row-major axis order).
   Unused trailing coordinates stay zero. Lattice indices ride separately. */
using Point = std::array<double, 3>;

/* Extended-precision twins, used where stencil arithmetic at small h would
   lose too much to double rounding. */
using CxL = std::complex<long double>;
using PointL = std::array<long double, 3>;

inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const Cx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

/* Error with a machine-readable code ("kernel-pole", "off-contour", ...).
   The code doubles as the leading token of what(). */
class EvalError : public std::runtime_error {
public:
    EvalError(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

std::string format_point(const Point& p, int arity = 3);
std::string format_lattice_point(const Point& p, int n, int arity = 2);

[[noreturn]] inline void raise(const std::string& code, const std::string& detail) {
    throw EvalError(code, detail);
}

inline void require_finite(const Cx& v, const std::string& code, const std::string& where) {
    if (!finite(v)) raise(code, "non-finite value at " + where);
}

/* Integer power by repeated squaring; n may be negative. */
Cx ipow(Cx base, long n);

inline Cx sq(const Cx& v) { return v * v; }
inline Cx cube(const Cx& v) { return v * v * v; }

}  // namespace solibound
