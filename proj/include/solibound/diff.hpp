#pragma once

#include <functional>

#include "solibound/grid.hpp"
#include "solibound/scalar.hpp"

namespace solibound {

/* Scalar field over continuous coordinates. */
using Field = std::function<Cx(const Point&)>;

/* Domain membership predicate for stencil footprints (true = usable). */
using Domain = std::function<bool(const Point&)>;

/* Central finite-difference derivative of 4th accuracy order.

   order[k] is the derivative order along axis k (0..3 each). Mixed partials
   are formed by composing the per-axis stencils, which preserves the O(h^4)
   truncation. Stencil half-widths: 2 nodes for orders 1-2, 3 for order 3.

   Errors: "stencil-out-of-domain" if any sample leaves `domain`,
   "non-finite-sample" if the field returns a non-finite value. */
Cx diff(const Field& f, const Point& at, const std::array<int, 3>& order, double h,
        const Domain& domain = {});

/* Convenience single-axis derivative. */
Cx diff1(const Field& f, const Point& at, int axis, int order, double h,
         const Domain& domain = {});

int stencil_half_width(int order);

/* Extended-precision field and stencil: same stencils, long double samples
   and coordinates, so the rounding floor drops by roughly three decades. */
using FieldL = std::function<CxL(const PointL&)>;

CxL diff_ld(const FieldL& f, const PointL& at, const std::array<int, 3>& order,
            long double h);

}  // namespace solibound
