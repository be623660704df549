#include "solibound/diff.hpp"

#include <type_traits>
#include <vector>

namespace solibound {

namespace {

struct Stencil {
    int half_width;
    // coefficients for offsets -half_width .. +half_width, divided by h^order
    std::vector<double> weights;
    int h_power;
};

// Fourth-order central stencils.
const Stencil& stencil_for(int order) {
    static const Stencil s0{0, {1.0}, 0};
    static const Stencil s1{2, {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12}, 1};
    static const Stencil s2{2, {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12}, 2};
    static const Stencil s3{3, {1.0 / 8, -8.0 / 8, 13.0 / 8, 0.0, -13.0 / 8, 8.0 / 8, -1.0 / 8}, 3};
    switch (order) {
        case 0: return s0;
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        default: raise("invalid-config", "derivative order must be 0..3, got " + std::to_string(order));
    }
}

// Recursively expand the tensor-product stencil one axis at a time.
template <class C, class P, class F, class D>
C apply(const F& f, P at, const std::array<int, 3>& order, typename P::value_type h,
        const D& domain, int axis) {
    using R = typename P::value_type;
    if (axis == 3) {
        if constexpr (!std::is_same_v<D, std::nullptr_t>) {
            if (domain && !domain(at))
                raise("stencil-out-of-domain",
                      "sample " + format_point({double(at[0]), double(at[1]), double(at[2])}) +
                          " leaves the domain");
        }
        C v = f(at);
        if (!(std::isfinite(double(v.real())) && std::isfinite(double(v.imag()))))
            raise("non-finite-sample",
                  "field value at " +
                      format_point({double(at[0]), double(at[1]), double(at[2])}) +
                      " is not finite");
        return v;
    }
    const Stencil& st = stencil_for(order[axis]);
    if (st.h_power == 0) return apply<C>(f, at, order, h, domain, axis + 1);
    const R base = at[axis];
    C acc(0.0);
    for (int k = -st.half_width; k <= st.half_width; ++k) {
        const double w = st.weights[k + st.half_width];
        if (w == 0.0) continue;
        at[axis] = base + R(k) * h;
        acc += C(R(w)) * apply<C>(f, at, order, h, domain, axis + 1);
    }
    at[axis] = base;
    R scale = 1.0;
    for (int i = 0; i < st.h_power; ++i) scale *= h;
    return acc / C(scale);
}

}  // namespace

int stencil_half_width(int order) { return stencil_for(order).half_width; }

Cx diff(const Field& f, const Point& at, const std::array<int, 3>& order, double h,
        const Domain& domain) {
    if (!(h > 0.0) || !std::isfinite(h))
        raise("invalid-config", "step h must be positive and finite");
    return apply<Cx>(f, at, order, h, domain, 0);
}

Cx diff1(const Field& f, const Point& at, int axis, int order, double h, const Domain& domain) {
    if (axis < 0 || axis > 2)
        raise("invalid-config", "axis must be 0..2, got " + std::to_string(axis));
    std::array<int, 3> ord{0, 0, 0};
    ord[static_cast<size_t>(axis)] = order;
    return diff(f, at, ord, h, domain);
}

CxL diff_ld(const FieldL& f, const PointL& at, const std::array<int, 3>& order, long double h) {
    if (!(h > 0.0L) || !std::isfinite(double(h)))
        raise("invalid-config", "step h must be positive and finite");
    return apply<CxL>(f, at, order, h, nullptr, 0);
}

}  // namespace solibound
