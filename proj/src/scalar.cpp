#include "solibound/scalar.hpp"

#include <cstdio>

namespace solibound {

std::string format_point(const Point& p, int arity) {
    char buf[96];
    if (arity <= 1)
        std::snprintf(buf, sizeof buf, "(%.6g)", p[0]);
    else if (arity == 2)
        std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p[0], p[1]);
    else
        std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", p[0], p[1], p[2]);
    return buf;
}

std::string format_lattice_point(const Point& p, int n, int arity) {
    char buf[112];
    if (arity <= 1)
        std::snprintf(buf, sizeof buf, "(%.6g; n=%d)", p[0], n);
    else
        std::snprintf(buf, sizeof buf, "(%.6g, %.6g; n=%d)", p[0], p[1], n);
    return buf;
}

Cx ipow(Cx base, long n) {
    if (n < 0) return Cx(1.0) / ipow(base, -n);
    Cx acc(1.0);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

}  // namespace solibound
