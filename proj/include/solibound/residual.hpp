#pragma once

#include <functional>

#include "solibound/grid.hpp"
#include "solibound/scalar.hpp"

namespace solibound {

/* Outcome of a residual sweep over a grid. */
struct ResidualReport {
    double max_abs = 0.0;
    double rms = 0.0;
    Point argmax_point{0.0, 0.0, 0.0};
    int argmax_n = 0;  // lattice index at the maximum (0 for purely continuous scans)
    double h = 0.0;
    int stencil_order = 4;
    long n_points = 0;
};

/* Evaluate |residual| over every non-excluded grid node.

   Evaluation may run on several worker threads (capped by SOLIBOUND_THREADS),
   but the reduction is a fixed-order sequential pass over the precomputed
   values, so the report is identical for any worker count. An exception from
   the lowest flat index wins when several points fail.

   Errors: "empty-grid" when exclusions leave nothing to sample. */
ResidualReport residual_scan(const std::function<Cx(const Point&)>& residual,
                             const GridSpec& grid, double h);

/* Same sweep repeated over an integer lattice window [n_lo, n_hi]. */
ResidualReport lattice_residual_scan(const std::function<Cx(const Point&, int)>& residual,
                                     const GridSpec& grid, int n_lo, int n_hi, double h);

/* Worker cap: SOLIBOUND_THREADS if set (>=1), else hardware concurrency. */
int worker_count();

/* Parallel index loop used by the scans; exceptions are rethrown
   deterministically (lowest index). */
void parallel_for(long n, const std::function<void(long)>& body);

}  // namespace solibound
