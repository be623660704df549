#pragma once

#include <functional>
#include <string>
#include <vector>

#include "solibound/scalar.hpp"

namespace solibound {

/* One sampling axis: count evenly spaced nodes on [lo, hi].
   count == 1 collapses to the single node lo. */
struct Axis {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;

    double at(int i) const {
        if (count <= 1) return lo;
        return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

/* Rectangular product grid over 1..3 continuous axes with an optional
   exclusion predicate (true = point skipped, e.g. near a coordinate
   singularity). */
struct GridSpec {
    std::vector<Axis> axes;
    std::function<bool(const Point&)> exclude;  // optional

    int arity() const { return static_cast<int>(axes.size()); }

    long total() const {
        long t = 1;
        for (const auto& a : axes) t *= a.count;
        return t;
    }

    /* Row-major decode of a flat index into coordinates. */
    Point point(long flat) const {
        Point p{0.0, 0.0, 0.0};
        for (int k = arity() - 1; k >= 0; --k) {
            const auto& a = axes[static_cast<size_t>(k)];
            p[static_cast<size_t>(k)] = a.at(static_cast<int>(flat % a.count));
            flat /= a.count;
        }
        return p;
    }

    bool excluded(const Point& p) const { return exclude && exclude(p); }

    void validate() const {
        if (axes.empty() || axes.size() > 3)
            raise("empty-grid", "grid needs 1..3 axes, got " + std::to_string(axes.size()));
        for (const auto& a : axes) {
            if (a.count < 1) raise("empty-grid", "axis " + a.name + " has count < 1");
            if (a.count > 1 && !(a.hi > a.lo))
                raise("empty-grid", "axis " + a.name + " has hi <= lo with count > 1");
            if (!finite(a.lo) || !finite(a.hi))
                raise("empty-grid", "axis " + a.name + " has non-finite bounds");
        }
    }
};

inline GridSpec make_grid(std::vector<Axis> axes,
                          std::function<bool(const Point&)> exclude = {}) {
    GridSpec g{std::move(axes), std::move(exclude)};
    g.validate();
    return g;
}

}  // namespace solibound
