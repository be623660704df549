// Acceptance gates: one PASS/FAIL line per criterion with the measured
// numbers that justify it. Exit code is nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <string>

#include "solibound/scalar.hpp"
#include "solibound/suites.hpp"

namespace {

using solibound::CheckOutcome;
using solibound::SuiteOutcome;

const SuiteOutcome& suite(const std::string& name) {
    static std::map<std::string, SuiteOutcome> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, solibound::run_named_suite(name)).first;
    return it->second;
}

const CheckOutcome& check(const std::string& suite_name, const std::string& check_name) {
    for (const auto& o : suite(suite_name).outcomes)
        if (o.name == check_name) return o;
    std::fprintf(stderr, "missing check %s/%s\n", suite_name.c_str(), check_name.c_str());
    std::exit(2);
}

std::string strf(const char* fmt, ...) {
    char buf[768];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof(buf), fmt, ap);
    va_end(ap);
    return buf;
}

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

bool order_ok(const CheckOutcome& o) {
    return o.order_probed && (o.order >= 3.5 || o.order_at_floor);
}

}  // namespace

int main() {
    try {
        {  // 1: seed solves the evolution system on the full desk grid
            const auto& evo = check("kp-seed", "evolution-residual");
            const auto& cmp = check("kp-seed", "compatibility-residual");
            const double secs = suite("kp-seed").seconds;
            const bool pass = evo.pass && cmp.pass && evo.report.max_abs < 1e-8 &&
                              cmp.report.max_abs < 1e-8 && order_ok(evo) && secs < 30.0;
            report(1, pass,
                   strf("kp seed residuals %.3g / %.3g < 1e-8, order %.2f, %.1fs < 30s",
                        evo.report.max_abs, cmp.report.max_abs, evo.order, secs));
        }
        {  // 2: dressed solution passes the same bounds after a pole-free scan
            const auto& scan = check("kp-dressed", "pole-free-scan");
            const auto& evo = check("kp-dressed", "evolution-residual");
            const auto& cmp = check("kp-dressed", "compatibility-residual");
            const bool pass = scan.pass && evo.pass && cmp.pass && evo.report.max_abs < 1e-8 &&
                              cmp.report.max_abs < 1e-8 && order_ok(evo);
            report(2, pass,
                   strf("kp dressed pole-free, residuals %.3g / %.3g < 1e-8, order %.2f",
                        evo.report.max_abs, cmp.report.max_abs, evo.order));
        }
        {  // 3: boundary constraint holds on the contour and only there
            const auto& seed = check("kp-boundary", "seed-on-contour");
            const auto& dressed = check("kp-boundary", "dressed-on-contour");
            const auto& off = check("kp-boundary", "dressed-off-contour");
            const bool pass = seed.report.max_abs < 1e-9 && dressed.report.max_abs < 1e-9 &&
                              off.report.max_abs > 1e-3;
            report(3, pass,
                   strf("contour residuals seed %.3g, dressed %.3g < 1e-9; off-contour %.3g > 1e-3",
                        seed.report.max_abs, dressed.report.max_abs, off.report.max_abs));
        }
        {  // 4: wavefunctions satisfy both auxiliary systems; cubic phase is essential
            static const char* names[] = {
                "original-spectral",    "original-evolution",
                "conjugate-spectral",   "conjugate-evolution",
                "transformed-spectral", "transformed-evolution",
                "transformed-conjugate-spectral", "transformed-conjugate-evolution"};
            bool all = true;
            double worst = 0.0, min_order = 99.0;
            for (const char* n : names) {
                const auto& o = check("kp-lax", n);
                all = all && o.pass;
                worst = std::max(worst, o.report.max_abs);
                if (o.order_probed) min_order = std::min(min_order, o.order);
            }
            const auto& typo = check("negative-typos", "quadratic-time-term-breaks-evolution-line");
            const bool pass = all && min_order >= 3.5 && typo.pass && typo.ratio >= 1e6;
            report(4, pass,
                   strf("lax residuals max %.3g within C*h^4, order %.2f; "
                        "quadratic-phase variant %.2gx worse >= 1e6x",
                        worst, min_order, typo.ratio));
        }
        {  // 5: the boundary multiplier relates the two wavefunctions on the contour
            const auto& kp = check("kp-lax", "contour-identity");
            const auto& toda = check("toda-ex1", "contour-identity");
            const bool pass = kp.report.max_abs < 1e-12 && toda.report.max_abs < 1e-12;
            report(5, pass,
                   strf("multiplier identity kp %.3g, lattice %.3g < 1e-12",
                        kp.report.max_abs, toda.report.max_abs));
        }
        {  // 6: independent GLM solvers reproduce both closed-form kernels
            const auto& ks = check("kp-glm", "half-line-solve-matches-kernel");
            const auto& kr = check("kp-glm", "integral-equation-residual");
            const auto& t1 = check("toda-glm", "exponential-solve-matches-kernel");
            const auto& t3 = check("toda-glm", "linear-solve-matches-kernel");
            const auto& r1 = check("toda-glm", "exponential-summation-residual");
            const auto& r3 = check("toda-glm", "linear-summation-residual");
            const double worst =
                std::max({ks.report.max_abs, kr.report.max_abs, t1.report.max_abs,
                          t3.report.max_abs, r1.report.max_abs, r3.report.max_abs});
            report(6, worst < 1e-8,
                   strf("glm oracles: kernel match %.3g / %.3g / %.3g, "
                        "off-diagonal residuals %.3g / %.3g / %.3g < 1e-8",
                        ks.report.max_abs, t1.report.max_abs, t3.report.max_abs,
                        kr.report.max_abs, r1.report.max_abs, r3.report.max_abs));
        }
        {  // 7: numeric dressing reproduces the closed-form updates
            const auto& cont = check("kp-glm", "dressing-closure");
            const auto& l1 = check("toda-glm", "exponential-dressing-closure");
            const auto& l3 = check("toda-glm", "linear-dressing-closure");
            const bool pass = cont.report.max_abs < 1e-6 && l1.report.max_abs < 1e-8 &&
                              l3.report.max_abs < 1e-8;
            report(7, pass,
                   strf("closure: continuous %.3g < 1e-6, lattice %.3g / %.3g < 1e-8",
                        cont.report.max_abs, l1.report.max_abs, l3.report.max_abs));
        }
        {  // 8: flat contour collapses the dressed field to the line soliton
            const auto& match = check("kp-reduction", "matches-line-soliton");
            const auto& flat = check("kp-reduction", "no-transverse-dependence");
            const bool pass = match.report.max_abs < 1e-12 && flat.report.max_abs < 1e-10;
            report(8, pass,
                   strf("soliton match %.3g < 1e-12, transverse derivative %.3g < 1e-10",
                        match.report.max_abs, flat.report.max_abs));
        }
        {  // 9: all four lattice examples solve the equation at 4th order
            static const char* suites9[] = {"toda-ex1", "toda-ex1c1", "toda-ex2", "toda-ex3"};
            bool all = true;
            double secs = 0.0;
            std::string detail = "lattice residuals";
            for (const char* sn : suites9) {
                const auto& o = check(sn, "lattice-equation");
                all = all && o.pass && order_ok(o);
                secs += suite(sn).seconds;
                detail += strf(" %s %.3g (order %.2f),", sn + 5, o.report.max_abs, o.order);
            }
            all = all && secs < 60.0;
            report(9, all, detail + strf(" %.1fs < 60s", secs));
        }
        {  // 10: every example's constraint is exact for seeds, tight for dressed fields
            double seed_worst = 0.0, dressed_worst = 0.0;
            for (const char* sn : {"toda-ex1", "toda-ex1c1", "toda-ex2", "toda-ex3"}) {
                seed_worst = std::max(seed_worst, check(sn, "seed-on-contour").report.max_abs);
                dressed_worst =
                    std::max(dressed_worst, check(sn, "dressed-on-contour").report.max_abs);
            }
            const bool pass = dressed_worst < 1e-8 && seed_worst < 1e-12;
            report(10, pass,
                   strf("contour constraints: dressed %.3g < 1e-8, seed %.3g < 1e-12",
                        dressed_worst, seed_worst));
        }
        {  // 11: kernel stays away from -1 for nu<1; a nu>1 run reports its pole
            const auto& margin = check("toda-ex3", "kernel-regularity-margin");
            const auto& pole = check("toda-ex3", "pole-detected-above-unit-ratio");
            const double min_dist = 1.0 / margin.report.max_abs;
            const bool pass = margin.pass && min_dist > 0.1 && pole.pass;
            report(11, pass,
                   strf("min |1+K| = %.3g > 0.1 for nu=1/4; nu=4 run raised %s",
                        min_dist, pole.pass ? "its pole" : "nothing"));
        }
        {  // 12: the full verification suite finishes quickly and cleanly
            const std::string cmd = std::string(SOLIBOUND_CLI_PATH) + " verify --suite all 2>&1";
            const auto t0 = std::chrono::steady_clock::now();
            FILE* pipe = popen(cmd.c_str(), "r");
            std::string out;
            if (pipe != nullptr) {
                char buf[4096];
                size_t got = 0;
                while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
            }
            const int status = pipe != nullptr ? pclose(pipe) : -1;
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            const int rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            const bool pass = rc == 0 && secs < 300.0;
            if (!pass) std::fputs(out.c_str(), stderr);
            report(12, pass, strf("verify --suite all: exit %d, %.1fs < 300s", rc, secs));
        }
    } catch (const solibound::EvalError& e) {
        std::fprintf(stderr, "acceptance aborted: %s\n", e.what());
        return 2;
    }
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 12 criteria passed\n");
    return 0;
}
