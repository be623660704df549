#include "solibound/verifier.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "solibound/diff.hpp"

namespace solibound {

namespace {

constexpr double kTinyNorm = 1e-300;

double norm_scale(Cx v) { return std::max(std::abs(v), kTinyNorm); }

}  // namespace

std::array<ResidualReport, 2> check_kp_equation(const FieldPair& fields, Cx alpha,
                                                const GridSpec& grid, double h) {
    const Cx a2 = alpha * alpha;
    const auto r1 = [&fields, a2, h](const Point& pt) {
        return diff(fields.u, pt, {0, 0, 1}, h) + diff(fields.u, pt, {3, 0, 0}, h)
               - 6.0 * fields.u(pt) * diff(fields.u, pt, {1, 0, 0}, h)
               + 3.0 * a2 * diff(fields.w, pt, {0, 1, 0}, h);
    };
    const auto r2 = [&fields, h](const Point& pt) {
        return diff(fields.w, pt, {1, 0, 0}, h) - diff(fields.u, pt, {0, 1, 0}, h);
    };
    return {residual_scan(r1, grid, h), residual_scan(r2, grid, h)};
}

std::array<ResidualReport, 2> check_kp_equation_ld(const FieldPairL& fields, Cx alpha,
                                                   const GridSpec& grid, double h) {
    const CxL a2 = CxL(alpha.real(), alpha.imag()) * CxL(alpha.real(), alpha.imag());
    const long double hl = h;
    const auto r1 = [&fields, a2, hl](const Point& pt) {
        const PointL p{pt[0], pt[1], pt[2]};
        const CxL r = diff_ld(fields.u, p, {0, 0, 1}, hl) + diff_ld(fields.u, p, {3, 0, 0}, hl)
                      - CxL(6) * fields.u(p) * diff_ld(fields.u, p, {1, 0, 0}, hl)
                      + CxL(3) * a2 * diff_ld(fields.w, p, {0, 1, 0}, hl);
        return Cx(double(r.real()), double(r.imag()));
    };
    const auto r2 = [&fields, hl](const Point& pt) {
        const PointL p{pt[0], pt[1], pt[2]};
        const CxL r = diff_ld(fields.w, p, {1, 0, 0}, hl) - diff_ld(fields.u, p, {0, 1, 0}, hl);
        return Cx(double(r.real()), double(r.imag()));
    };
    return {residual_scan(r1, grid, h), residual_scan(r2, grid, h)};
}

namespace {

struct KPLaxContext {
    const Field& psi;
    const FieldPair& fields;
    Cx alpha;
    double h;
    bool conjugate;  // flips the Y-line sign and the w sign in the x-line operator
};

/* third-order spatial operator N(psi) = -4 psi_xxx + 6 u psi_x + 3 (u_x +- alpha w) psi,
   everything evaluated at the same coordinate point. */
Cx spatial_operator(const KPLaxContext& c, const Point& pt) {
    const double wsign = c.conjugate ? -1.0 : 1.0;
    const Cx u = c.fields.u(pt);
    const Cx ux = diff(c.fields.u, pt, {1, 0, 0}, c.h);
    const Cx w = c.fields.w(pt);
    return -4.0 * diff(c.psi, pt, {3, 0, 0}, c.h) + 6.0 * u * diff(c.psi, pt, {1, 0, 0}, c.h)
           + 3.0 * (ux + wsign * c.alpha * w) * c.psi(pt);
}

Cx schroedinger_side(const KPLaxContext& c, const Point& pt) {
    return diff(c.psi, pt, {2, 0, 0}, c.h) - c.fields.u(pt) * c.psi(pt);
}

}  // namespace

std::array<ResidualReport, 2> check_kp_lax(const Field& psi, const FieldPair& fields, Cx alpha,
                                           KPLaxForm form, const GridSpec& grid, double h,
                                           const KPJacobianFamily* family) {
    const bool conj = form == KPLaxForm::conjugate || form == KPLaxForm::transformed_conjugate;
    const bool chart = form == KPLaxForm::transformed || form == KPLaxForm::transformed_conjugate;
    if (chart && family == nullptr)
        raise("invalid-config", "chart forms need a jacobian family");
    const KPLaxContext ctx{psi, fields, alpha, h, conj};

    if (!chart) {
        // grid coordinates are (x, Y, T); both lines direct
        const auto l1 = [ctx](const Point& pt) {
            const double ysign = ctx.conjugate ? -1.0 : 1.0;
            const Cx r = ysign * ctx.alpha * diff(ctx.psi, pt, {0, 1, 0}, ctx.h)
                         - schroedinger_side(ctx, pt);
            return r / norm_scale(ctx.psi(pt));
        };
        const auto l2 = [ctx](const Point& pt) {
            const Cx r = diff(ctx.psi, pt, {0, 0, 1}, ctx.h) - spatial_operator(ctx, pt);
            return r / norm_scale(ctx.psi(pt));
        };
        return {residual_scan(l1, grid, h), residual_scan(l2, grid, h)};
    }

    // grid coordinates are (x, y, t); field arguments go through the map
    const auto mapped = [family](const Point& pt) {
        const auto YT = family->map(pt[1], pt[2]);
        return Point{pt[0], YT[0], YT[1]};
    };
    // psi depends on chart coordinates; x is shared between both coordinate
    // systems, so x-derivatives of psi act on the chart point while the
    // fields and their x-derivative use the mapped image
    const auto chart_parts = [ctx, mapped](const Point& pt, Cx& schro, Cx& nop) {
        const Point mp = mapped(pt);
        const Cx here = ctx.psi(pt);
        const Cx u = ctx.fields.u(mp);
        const Cx ux = diff1(ctx.fields.u, mp, 0, 1, ctx.h);
        const double wsign = ctx.conjugate ? -1.0 : 1.0;
        const Cx w = ctx.fields.w(mp);
        schro = diff(ctx.psi, pt, {2, 0, 0}, ctx.h) - u * here;
        nop = -4.0 * diff(ctx.psi, pt, {3, 0, 0}, ctx.h)
              + 6.0 * u * diff(ctx.psi, pt, {1, 0, 0}, ctx.h)
              + 3.0 * (ux + wsign * ctx.alpha * w) * here;
        return here;
    };
    const double csign = conj ? -1.0 : 1.0;
    const auto l1 = [ctx, family, chart_parts, csign](const Point& pt) {
        const Jacobian jac = family->jac(pt[1], pt[2]);
        Cx schro, nop;
        const Cx here = chart_parts(pt, schro, nop);
        const Cx r = diff(ctx.psi, pt, {0, 1, 0}, ctx.h)
                     - csign / jac.delta
                           * (jac.f22 / ctx.alpha * schro - csign * jac.f12 * nop);
        return r / norm_scale(here);
    };
    const auto l2 = [ctx, family, chart_parts, csign](const Point& pt) {
        const Jacobian jac = family->jac(pt[1], pt[2]);
        Cx schro, nop;
        const Cx here = chart_parts(pt, schro, nop);
        const Cx r = diff(ctx.psi, pt, {0, 0, 1}, ctx.h)
                     + csign / jac.delta
                           * (jac.f21 / ctx.alpha * schro - csign * jac.f11 * nop);
        return r / norm_scale(here);
    };
    return {residual_scan(l1, grid, h), residual_scan(l2, grid, h)};
}

ResidualReport check_definition1_kp(const KPParams& prm, const Axis& x_axis, const Axis& t_axis) {
    prm.validate();
    const GridSpec grid = make_grid({x_axis, t_axis});
    const auto residual = [prm](const Point& pt) {
        const double x = pt[0], t = pt[1];
        const TransformPoint tp = hyperbolic_transform(prm.y0, t);
        const Point cp{x, tp.Y, tp.T};
        const Cx psi = kp_psi(cp, single_wave(prm.d, prm.p), prm);
        const Cx psih = kp_psi_hat(cp, single_wave(prm.l, prm.q), prm);
        const Cx B = multiplier_B(x, t, tp.jac, prm.alpha, prm.g);
        return (psih - B * psi) / norm_scale(psi);
    };
    return residual_scan(residual, grid, 0.0);
}

ResidualReport check_toda_equation(const LatticeFn& u, const GridSpec& grid, int n_lo, int n_hi,
                                   double h) {
    const auto residual = [&u, h](const Point& pt, int n) {
        const Field slice = [&u, n](const Point& q) { return u(q[0], q[1], n); };
        const Cx uXY = diff(slice, pt, {1, 1, 0}, h);
        const Cx rhs = lattice_w(u, pt[0], pt[1], n - 1) - lattice_w(u, pt[0], pt[1], n);
        return uXY - rhs;
    };
    return lattice_residual_scan(residual, grid, n_lo, n_hi, h);
}

namespace {

/* Everything the lattice auxiliary lines need at one chart point. */
struct TodaLaxContext {
    TodaParams prm;
    WaveSum wave, wave_hat;
    LatticeFn u0;
    LatticePartials parts;
    TodaLaxOptions opt;
    double h;

    Cx psi(double x, double y, int n) const { return toda_psi(prm, wave, x, y, n); }
    Cx psi_hat(double x, double y, int n) const { return toda_psi_hat(prm, wave_hat, x, y, n); }

    /* w(j) of the seed, or the u(j) regression variant. */
    Cx background_w(double X, double Y, int j) const {
        if (opt.use_u_instead_of_w) return u0(X, Y, j);
        return lattice_w(u0, X, Y, j);
    }

    Cx u_X(double X, double Y, int n) const {
        const Cx v = parts.u_X(X, Y, n);
        return opt.flip_uX_sign ? -v : v;  // conjugate-line regression control
    }

    /* forward chart partials at (x, y) */
    struct Forward {
        double X, Y, X_x, X_y, Y_x, Y_y, ad, bd;
    };
    Forward forward(double x, double y) const {
        const double av = prm.a.f(x), ad = prm.a.df(x);
        const double bv = prm.b.f(y), bd = prm.b.df(y);
        const double c = prm.c;
        const double X = std::exp(av + bv);
        const double Y = std::exp(c * (av - bv));
        return Forward{X, Y, ad * X, bd * X, c * ad * Y, -c * bd * Y, ad, bd};
    }
};

}  // namespace

std::array<ResidualReport, 2> check_toda_lax(const TodaParams& prm, TodaLaxForm form,
                                             const GridSpec& chart_grid, int n_lo, int n_hi,
                                             double h, const TodaLaxOptions& options) {
    prm.validate();
    TodaLaxContext ctx{prm,
                       single_wave(prm.k, prm.p),
                       single_wave(prm.k, prm.q_linked()),
                       toda_seed_fn(prm),
                       toda_seed_partials(prm),
                       options,
                       h};
    const bool hat = form == TodaLaxForm::conjugate || form == TodaLaxForm::transformed_conjugate
                     || form == TodaLaxForm::ex1_conjugate;

    std::function<Cx(const Point&, int)> line1, line2;

    switch (form) {
        case TodaLaxForm::original:
        case TodaLaxForm::conjugate: {
            // psi over the lattice plane: pull the chart point back through
            // the inverse map and differentiate in (X, Y)
            const auto lattice_psi = [ctx, hat](double X, double Y, int n) {
                const auto xy = toda_chart_from_XY(ctx.prm, X, Y);
                return hat ? ctx.psi_hat(xy[0], xy[1], n) : ctx.psi(xy[0], xy[1], n);
            };
            line1 = [ctx, hat, lattice_psi](const Point& pt, int n) {
                const auto XY = toda_transform(ctx.prm, pt[0], pt[1]);
                const Field slice = [&](const Point& q) { return lattice_psi(q[0], q[1], n); };
                const Point at{XY.X, XY.Y, 0.0};
                const Cx dX = diff(slice, at, {1, 0, 0}, ctx.h);
                const Cx here = lattice_psi(XY.X, XY.Y, n);
                Cx r;
                if (!hat)
                    r = dX + ctx.u_X(XY.X, XY.Y, n) * here - lattice_psi(XY.X, XY.Y, n + 1);
                else
                    r = dX - ctx.u_X(XY.X, XY.Y, n) * here + lattice_psi(XY.X, XY.Y, n - 1);
                return r / norm_scale(here);
            };
            line2 = [ctx, hat, lattice_psi](const Point& pt, int n) {
                const auto XY = toda_transform(ctx.prm, pt[0], pt[1]);
                const Field slice = [&](const Point& q) { return lattice_psi(q[0], q[1], n); };
                const Point at{XY.X, XY.Y, 0.0};
                const Cx dY = diff(slice, at, {0, 1, 0}, ctx.h);
                const Cx here = lattice_psi(XY.X, XY.Y, n);
                Cx r;
                if (!hat)
                    r = dY + ctx.background_w(XY.X, XY.Y, n - 1) * lattice_psi(XY.X, XY.Y, n - 1);
                else
                    r = dY - ctx.background_w(XY.X, XY.Y, n) * lattice_psi(XY.X, XY.Y, n + 1);
                return r / norm_scale(here);
            };
            break;
        }
        case TodaLaxForm::transformed:
        case TodaLaxForm::transformed_conjugate: {
            // chart derivatives matched against the jacobian combination of
            // the lattice right-hand sides
            const auto rhs = [ctx, hat](double x, double y, int n, Cx& lat_X, Cx& lat_Y) {
                const auto XY = toda_transform(ctx.prm, x, y);
                const Cx here = hat ? ctx.psi_hat(x, y, n) : ctx.psi(x, y, n);
                if (!hat) {
                    lat_X = -ctx.u_X(XY.X, XY.Y, n) * here + ctx.psi(x, y, n + 1);
                    lat_Y = -ctx.background_w(XY.X, XY.Y, n - 1) * ctx.psi(x, y, n - 1);
                } else {
                    lat_X = ctx.u_X(XY.X, XY.Y, n) * here - ctx.psi_hat(x, y, n - 1);
                    lat_Y = ctx.background_w(XY.X, XY.Y, n) * ctx.psi_hat(x, y, n + 1);
                }
                return here;
            };
            line1 = [ctx, hat, rhs](const Point& pt, int n) {
                const Jacobian jac = toda_transform(ctx.prm, pt[0], pt[1]).jac;
                Cx lat_X, lat_Y;
                const Cx here = rhs(pt[0], pt[1], n, lat_X, lat_Y);
                const Field slice = [&](const Point& q) {
                    return hat ? ctx.psi_hat(q[0], q[1], n) : ctx.psi(q[0], q[1], n);
                };
                const Cx dx = diff(slice, pt, {1, 0, 0}, ctx.h);
                // x_chart partial: psi_x = (f22 lat_X - f12 lat_Y) / Delta
                const Cx r = dx - (jac.f22 * lat_X - jac.f12 * lat_Y) / jac.delta;
                return r / norm_scale(here);
            };
            line2 = [ctx, hat, rhs](const Point& pt, int n) {
                const Jacobian jac = toda_transform(ctx.prm, pt[0], pt[1]).jac;
                Cx lat_X, lat_Y;
                const Cx here = rhs(pt[0], pt[1], n, lat_X, lat_Y);
                const Field slice = [&](const Point& q) {
                    return hat ? ctx.psi_hat(q[0], q[1], n) : ctx.psi(q[0], q[1], n);
                };
                const Cx dy = diff(slice, pt, {0, 1, 0}, ctx.h);
                // y_chart partial: psi_y = (-f21 lat_X + f11 lat_Y) / Delta
                const Cx r = dy - (-jac.f21 * lat_X + jac.f11 * lat_Y) / jac.delta;
                return r / norm_scale(here);
            };
            break;
        }
        case TodaLaxForm::ex1:
        case TodaLaxForm::ex1_conjugate: {
            if (!(prm.example == TodaExample::ex1 || prm.example == TodaExample::ex3))
                raise("invalid-config", "explicit chart lines cover the exponential family");
            const auto chart_u = [ctx](double x, double y, int n, Cx& ux, Cx& uy) {
                const auto f = ctx.forward(x, y);
                const Cx uX = ctx.parts.u_X(f.X, f.Y, n);  // sign flip not applied here:
                const Cx uY = ctx.parts.u_Y(f.X, f.Y, n);  // these lines use chart partials
                ux = uX * f.X_x + uY * f.Y_x;
                uy = uX * f.X_y + uY * f.Y_y;
            };
            line1 = [ctx, hat, chart_u](const Point& pt, int n) {
                const auto f = ctx.forward(pt[0], pt[1]);
                const double c = ctx.prm.c;
                Cx ux, uy;
                chart_u(pt[0], pt[1], n, ux, uy);
                const Cx mix = 0.5 * (ux + f.ad * uy / f.bd);
                const Field slice = [&](const Point& q) {
                    return hat ? ctx.psi_hat(q[0], q[1], n) : ctx.psi(q[0], q[1], n);
                };
                const Cx dx = diff(slice, pt, {1, 0, 0}, ctx.h);
                const Cx here = hat ? ctx.psi_hat(pt[0], pt[1], n) : ctx.psi(pt[0], pt[1], n);
                Cx r;
                if (!hat) {
                    r = dx - f.ad * f.X * ctx.psi(pt[0], pt[1], n + 1) + mix * here
                        + c * f.ad * f.Y * ctx.background_w(f.X, f.Y, n - 1)
                              * ctx.psi(pt[0], pt[1], n - 1);
                } else {
                    r = dx - c * f.ad * f.Y * ctx.background_w(f.X, f.Y, n)
                            * ctx.psi_hat(pt[0], pt[1], n + 1)
                        - mix * here + f.ad * f.X * ctx.psi_hat(pt[0], pt[1], n - 1);
                }
                return r / norm_scale(here);
            };
            line2 = [ctx, hat, chart_u](const Point& pt, int n) {
                const auto f = ctx.forward(pt[0], pt[1]);
                const double c = ctx.prm.c;
                Cx ux, uy;
                chart_u(pt[0], pt[1], n, ux, uy);
                const Cx mix = (f.bd / (2.0 * f.ad)) * (ux + f.ad * uy / f.bd);
                const Field slice = [&](const Point& q) {
                    return hat ? ctx.psi_hat(q[0], q[1], n) : ctx.psi(q[0], q[1], n);
                };
                const Cx dy = diff(slice, pt, {0, 1, 0}, ctx.h);
                const Cx here = hat ? ctx.psi_hat(pt[0], pt[1], n) : ctx.psi(pt[0], pt[1], n);
                Cx r;
                if (!hat) {
                    r = dy - f.bd * f.X * ctx.psi(pt[0], pt[1], n + 1) + mix * here
                        - c * f.bd * f.Y * ctx.background_w(f.X, f.Y, n - 1)
                              * ctx.psi(pt[0], pt[1], n - 1);
                } else {
                    r = dy + c * f.bd * f.Y * ctx.background_w(f.X, f.Y, n)
                            * ctx.psi_hat(pt[0], pt[1], n + 1)
                        - mix * here + f.bd * f.X * ctx.psi_hat(pt[0], pt[1], n - 1);
                }
                return r / norm_scale(here);
            };
            break;
        }
    }

    return {lattice_residual_scan(line1, chart_grid, n_lo, n_hi, h),
            lattice_residual_scan(line2, chart_grid, n_lo, n_hi, h)};
}

ResidualReport check_definition1_toda(const TodaParams& prm, const Axis& y_axis, int n_lo,
                                      int n_hi) {
    prm.validate();
    const GridSpec grid = make_grid({y_axis});
    const auto residual = [prm](const Point& pt, int n) {
        const double y = pt[0];
        const auto tp = toda_transform(prm, prm.x0, y);
        const Cx psi = toda_psi(prm, single_wave(prm.k, prm.p), prm.x0, y, n);
        const Cx psih = toda_psi_hat(prm, single_wave(prm.k, prm.q_linked()), prm.x0, y, n);
        const Cx u0n = toda_seed(prm, tp.X, tp.Y, n);
        const Cx B = toda_multiplier_B(n, tp.jac, u0n, Cx{1.0});
        return (psih - B * psi) / norm_scale(psi);
    };
    return lattice_residual_scan(residual, grid, n_lo, n_hi, 0.0);
}

namespace {

std::string describe_report(const ResidualReport& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "max %.3e rms %.3e at %s n=%d", r.max_abs, r.rms,
                  format_point(r.argmax_point).c_str(), r.argmax_n);
    return buf;
}

}  // namespace

CheckOutcome run_check(const Check& c) {
    CheckOutcome out;
    out.name = c.name;
    out.relation = c.relation;
    out.threshold = c.threshold;
    out.require_min = c.require_min;

    try {
        if (!c.expect_error.empty()) {
            try {
                (void)c.run(c.h);
                out.pass = false;
                out.note = "expected error " + c.expect_error + ", none raised";
            } catch (const EvalError& e) {
                out.pass = e.code() == c.expect_error;
                out.note = "raised " + std::string(e.code());
            }
            return out;
        }

        out.report = c.run(c.h);
        out.note = describe_report(out.report);

        if (c.variant) {
            const ResidualReport var = c.variant(c.h);
            out.ratio = var.max_abs / std::max(out.report.max_abs, kTinyNorm);
            out.pass = out.ratio >= c.min_ratio;
            out.note += "; variant max " + std::to_string(var.max_abs);
            return out;
        }

        if (c.require_min > 0.0) {
            out.pass = out.report.max_abs >= c.require_min;
            return out;
        }

        out.pass = out.report.max_abs <= c.threshold;
        if (c.probe_order && c.probe_h > 0.0) {
            const ResidualReport coarse = c.run(c.probe_h);
            const ResidualReport fine = c.run(c.probe_h / 2.0);
            out.order_probed = true;
            if (std::max(coarse.max_abs, fine.max_abs) <= c.order_floor) {
                out.order_at_floor = true;  // below measurement noise: waived
            } else {
                out.order = std::log2(coarse.max_abs / std::max(fine.max_abs, kTinyNorm));
                if (out.order < c.min_order) out.pass = false;
            }
            char buf[120];
            std::snprintf(buf, sizeof buf, "; probe %.3e -> %.3e", coarse.max_abs, fine.max_abs);
            out.note += buf;
        }
        return out;
    } catch (const EvalError& e) {
        out.pass = false;
        out.note = std::string("unexpected error: ") + e.what();
        return out;
    }
}

SuiteOutcome run_suite(const CheckSuite& suite) {
    SuiteOutcome out;
    out.name = suite.name;
    const auto start = std::chrono::steady_clock::now();
    out.pass = true;
    for (const auto& c : suite.checks) {
        out.outcomes.push_back(run_check(c));
        if (!out.outcomes.back().pass) out.pass = false;
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace solibound
