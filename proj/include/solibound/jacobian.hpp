#pragma once

#include "solibound/scalar.hpp"

namespace solibound {

/* Jacobian of a change of independent variables: for chart coordinates
   (y, t) over model coordinates (Y, T) the entries are
   f11 = y_Y, f12 = t_Y, f21 = y_T, f22 = t_T.
   The admissible transforms require f11 != 0, f21 != 0 and a nonzero
   determinant; make() enforces this. */
struct Jacobian {
    Cx f11, f12, f21, f22;
    Cx delta;  // f11*f22 - f12*f21

    static Jacobian make(Cx f11, Cx f12, Cx f21, Cx f22);
};

}  // namespace solibound
