#include "solibound/residual.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace solibound {

int worker_count() {
    if (const char* env = std::getenv("SOLIBOUND_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(long n, const std::function<void(long)>& body) {
    if (n <= 0) return;
    const int workers = std::min<long>(worker_count(), n);
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<long> next{0};
    // Per-worker first-failure records; the lowest failing index wins.
    std::vector<std::exception_ptr> errors(workers);
    std::vector<long> error_index(workers, -1);
    auto run = [&](int slot) {
        for (;;) {
            const long i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                if (error_index[slot] < 0 || i < error_index[slot]) {
                    error_index[slot] = i;
                    errors[slot] = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int s = 0; s < workers; ++s) pool.emplace_back(run, s);
    for (auto& t : pool) t.join();
    long best = -1;
    int best_slot = -1;
    for (int s = 0; s < workers; ++s) {
        if (error_index[s] >= 0 && (best < 0 || error_index[s] < best)) {
            best = error_index[s];
            best_slot = s;
        }
    }
    if (best_slot >= 0) std::rethrow_exception(errors[best_slot]);
}

namespace {

struct Sample {
    double abs = -1.0;  // negative marks "excluded"
    Point at{0.0, 0.0, 0.0};
    int n = 0;
};

ResidualReport reduce(const std::vector<Sample>& samples, double h) {
    ResidualReport rep;
    rep.h = h;
    double sum_sq = 0.0;
    for (const Sample& s : samples) {
        if (s.abs < 0.0) continue;
        ++rep.n_points;
        sum_sq += s.abs * s.abs;
        if (s.abs > rep.max_abs) {
            rep.max_abs = s.abs;
            rep.argmax_point = s.at;
            rep.argmax_n = s.n;
        }
    }
    if (rep.n_points == 0) raise("empty-grid", "no grid points survive the exclusions");
    rep.rms = std::sqrt(sum_sq / static_cast<double>(rep.n_points));
    return rep;
}

}  // namespace

ResidualReport residual_scan(const std::function<Cx(const Point&)>& residual,
                             const GridSpec& grid, double h) {
    GridSpec g = grid;
    g.validate();
    const long total = g.total();
    std::vector<Sample> samples(static_cast<size_t>(total));
    parallel_for(total, [&](long i) {
        const Point p = g.point(i);
        if (g.excluded(p)) return;
        Sample& s = samples[static_cast<size_t>(i)];
        s.abs = std::abs(residual(p));
        s.at = p;
    });
    return reduce(samples, h);
}

ResidualReport lattice_residual_scan(const std::function<Cx(const Point&, int)>& residual,
                                     const GridSpec& grid, int n_lo, int n_hi, double h) {
    if (n_hi < n_lo) raise("invalid-config", "lattice window is empty");
    GridSpec g = grid;
    g.validate();
    const long per_site = g.total();
    const long sites = static_cast<long>(n_hi - n_lo) + 1;
    const long total = per_site * sites;
    std::vector<Sample> samples(static_cast<size_t>(total));
    parallel_for(total, [&](long i) {
        const int n = n_lo + static_cast<int>(i / per_site);
        const Point p = g.point(i % per_site);
        if (g.excluded(p)) return;
        Sample& s = samples[static_cast<size_t>(i)];
        s.abs = std::abs(residual(p, n));
        s.at = p;
        s.n = n;
    });
    return reduce(samples, h);
}

}  // namespace solibound
