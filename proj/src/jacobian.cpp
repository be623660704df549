#include "solibound/jacobian.hpp"

namespace solibound {

Jacobian Jacobian::make(Cx f11, Cx f12, Cx f21, Cx f22) {
    constexpr double kTiny = 1e-14;
    const Cx delta = f11 * f22 - f12 * f21;
    if (std::abs(f11) < kTiny)
        raise("degenerate-transform", "f11 vanishes");
    if (std::abs(f21) < kTiny)
        raise("degenerate-transform", "f21 vanishes");
    if (std::abs(delta) < kTiny)
        raise("degenerate-transform", "jacobian determinant vanishes");
    return Jacobian{f11, f12, f21, f22, delta};
}

}  // namespace solibound
