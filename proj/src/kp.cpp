#include "solibound/kp.hpp"

#include <cmath>

namespace solibound {

namespace {

constexpr double kTinyT = 1e-12;
constexpr double kTinyDenom = 1e-12;
constexpr double kParamTol = 1e-12;

bool is_unit_or_imag(Cx alpha) {
    return std::abs(alpha - Cx{1.0}) <= kParamTol || std::abs(alpha - Cx{0.0, 1.0}) <= kParamTol;
}

/* Shared evaluation core, instantiated for double and long double. */
template <class C, class R>
struct KPCore {
    C alpha;
    R y0;

    static C widen(Cx z) { return C(static_cast<R>(z.real()), static_cast<R>(z.imag())); }

    void need_regular_T(R T) const {
        if (!(std::abs(T) > kTinyT))
            raise("singular-T", "field evaluation at T = 0");
    }

    C seed_u(R, R Y, R T) const {
        const C a2 = alpha * alpha;
        return a2 * Y * y0 * y0 / (R(18) * T * T * T);
    }

    C seed_w(R x, R Y, R T) const {
        const C a2 = alpha * alpha;
        const R y02 = y0 * y0;
        const R T2 = T * T, T3 = T2 * T, T4 = T2 * T2, T6 = T3 * T3;
        return a2 * x * y02 / (R(18) * T3) + Y * Y * y02 / (R(36) * T4)
               - R(23) * y02 * y02 * y02 / (R(648) * T6);
    }

    C tau(R x, R Y, R T, C p, TauYCoefficient yc) const {
        const C a2 = alpha * alpha;
        const R y02 = y0 * y0;
        const R T2 = T * T, T3 = T2 * T;
        const R ycoef = (yc == TauYCoefficient::sixth) ? R(6) : R(4);
        return -p * x + a2 * Y * y02 * p / (ycoef * T2) - a2 * y02 * y02 * p / (R(36) * T3)
               + R(4) * T * p * p * p + std::log(R(2) * p) / R(2);
    }

    C dressed_u(R x, R Y, R T, C p, TauYCoefficient yc) const {
        const C ch = std::cosh(tau(x, Y, T, p, yc));
        if (!(std::abs(ch) > R(1e-8)))
            raise("solution-pole", "cosh tau vanishes at " + std::to_string((double)x));
        return seed_u(x, Y, T) - R(2) * p * p / (ch * ch);
    }

    C dressed_w(R x, R Y, R T, C p, TauYCoefficient yc) const {
        const C a2 = alpha * alpha;
        const R y02 = y0 * y0;
        const R T2 = T * T, T3 = T2 * T, T4 = T2 * T2, T6 = T3 * T3;
        const C ch = std::cosh(tau(x, Y, T, p, yc));
        if (!(std::abs(ch) > R(1e-8)))
            raise("solution-pole", "cosh tau vanishes at " + std::to_string((double)x));
        return a2 * x * y02 / (R(18) * T3) + a2 * y02 * p * p / (R(3) * T2 * ch * ch)
               + Y * Y * y02 / (R(36) * T4) - R(23) * y02 * y02 * y02 / (R(648) * T6);
    }
};

using CoreD = KPCore<Cx, double>;
using CoreL = KPCore<CxL, long double>;

CoreD core_d(const KPParams& prm) { return CoreD{prm.alpha, prm.y0}; }
CoreL core_l(const KPParams& prm) { return CoreL{CoreL::widen(prm.alpha), (long double)prm.y0}; }

}  // namespace

void validate_waves(const WaveSum& waves) {
    if (waves.empty())
        raise("invalid-config", "wavefunction needs at least one term");
    for (const auto& t : waves) {
        require_finite(t.amplitude, "invalid-config", "wave amplitude");
        require_finite(t.spectral, "invalid-config", "wave spectral parameter");
    }
    for (std::size_t i = 0; i < waves.size(); ++i)
        for (std::size_t j = i + 1; j < waves.size(); ++j)
            if (std::abs(waves[i].spectral - waves[j].spectral) <= kParamTol)
                raise("invalid-config", "wave spectral parameters must be distinct");
}

void KPParams::validate() const {
    if (!is_unit_or_imag(alpha))
        raise("invalid-config", "alpha must be 1 or i");
    if (!std::isfinite(y0) || y0 < 0.0)
        raise("invalid-config", "y0 must be finite and nonnegative");
    require_finite(p, "invalid-config", "p");
    require_finite(q, "invalid-config", "q");
    require_finite(d, "invalid-config", "d");
    require_finite(l, "invalid-config", "l");
    require_finite(g, "invalid-config", "g");
    if (std::abs(g) <= kParamTol)
        raise("invalid-config", "gauge g must be nonzero");
}

void KPParams::validate_dressing() const {
    validate();
    if (std::abs(p) <= kParamTol)
        raise("invalid-config", "dressing needs p != 0");
    if (!(p.real() > 0.0))
        raise("invalid-config", "dressing needs Re p > 0");
    if (std::abs(q - p) > kParamTol * (1.0 + std::abs(p)))
        raise("invalid-config", "dressing needs q = p");
    if (std::abs(d * l - Cx{1.0}) > kParamTol)
        raise("invalid-config", "dressing needs d*l = 1");
}

TransformPoint hyperbolic_transform(double y, double t) {
    if (std::abs(y) <= kTinyDenom || std::abs(t) <= kTinyDenom)
        raise("degenerate-transform", "hyperbolic chart needs y != 0 and t != 0");
    const Cx f11{1.0 / (2.0 * t)};
    const Cx f12{1.0 / (2.0 * y)};
    const Cx f21{t / 2.0};
    const Cx f22{-t * t / (2.0 * y)};
    return TransformPoint{y * t, y / t, Jacobian::make(f11, f12, f21, f22)};
}

KPJacobianFamily hyperbolic_family() {
    KPJacobianFamily fam;
    fam.jac = [](double y, double t) { return hyperbolic_transform(y, t).jac; };
    fam.ratio_dt = [](double, double t) { return Cx{2.0 * t}; };  // d/dt (f21/f11) = (t^2)'
    fam.dlog_g_dt = [](double) { return Cx{0.0}; };
    fam.map = [](double y, double t) {
        if (std::abs(t) <= kTinyDenom)
            raise("degenerate-transform", "hyperbolic chart needs t != 0");
        return std::array<double, 2>{y * t, y / t};
    };
    return fam;
}

Cx multiplier_B(double x, double /*t*/, const Jacobian& jac, Cx alpha, Cx g) {
    return g * std::exp(x * jac.f21 / (6.0 * alpha * jac.f11));
}

Cx generic_boundary_residual(double x, double t, const FieldPair& fields,
                             const KPJacobianFamily& family, const KPParams& prm) {
    prm.validate();
    const Jacobian jac = family.jac(prm.y0, t);
    const auto YT = family.map(prm.y0, t);
    const Point pt{x, YT[0], YT[1]};
    const Cx u = fields.u(pt), w = fields.w(pt);
    const Cx a = prm.alpha;
    const Cx f11 = jac.f11, f21 = jac.f21, delta = jac.delta;
    return delta * family.dlog_g_dt(t) + x * delta / (6.0 * a) * family.ratio_dt(prm.y0, t)
           + f21 * u / a + 6.0 * a * f11 * w - f21 * f21 * f21 / (108.0 * a * a * a * f11 * f11);
}

Cx kp_constraint_value(const Point& pt, const FieldPair& fields, const KPParams& prm) {
    const double x = pt[0], Y = pt[1], T = pt[2];
    if (!(std::abs(T) > kTinyT))
        raise("singular-T", "constraint at T = 0");
    if (!(std::abs(Y) > kTinyT))
        raise("invalid-config", "constraint needs Y != 0");
    const Cx a2 = prm.alpha * prm.alpha;
    const Cx u = fields.u(pt), w = fields.w(pt);
    return -x / (3.0 * T) + u + 6.0 * a2 * (T / Y) * w - a2 / 108.0 * (Y / T) * (Y / T);
}

Cx kp_boundary_residual(const Point& pt, const FieldPair& fields, const KPParams& prm,
                        double contour_tol) {
    const double level = pt[1] * pt[2];
    const double want = prm.y0 * prm.y0;
    if (std::abs(level - want) > contour_tol)
        raise("off-contour", "Y*T = " + std::to_string(level) + ", contour at "
                                 + std::to_string(want));
    return kp_constraint_value(pt, fields, prm);
}

KPSeed kp_seed(const Point& pt, const KPParams& prm) {
    prm.validate();
    const auto core = core_d(prm);
    core.need_regular_T(pt[2]);
    return KPSeed{core.seed_u(pt[0], pt[1], pt[2]), core.seed_w(pt[0], pt[1], pt[2])};
}

FieldPair kp_seed_fields(const KPParams& prm) {
    prm.validate();
    const auto core = core_d(prm);
    FieldPair f;
    f.u = [core](const Point& pt) {
        core.need_regular_T(pt[2]);
        return core.seed_u(pt[0], pt[1], pt[2]);
    };
    f.w = [core](const Point& pt) {
        core.need_regular_T(pt[2]);
        return core.seed_w(pt[0], pt[1], pt[2]);
    };
    return f;
}

FieldPairL kp_seed_fields_ld(const KPParams& prm) {
    prm.validate();
    const auto core = core_l(prm);
    FieldPairL f;
    f.u = [core](const PointL& pt) {
        core.need_regular_T((double)pt[2]);
        return core.seed_u(pt[0], pt[1], pt[2]);
    };
    f.w = [core](const PointL& pt) {
        core.need_regular_T((double)pt[2]);
        return core.seed_w(pt[0], pt[1], pt[2]);
    };
    return f;
}

namespace {

/* Exponent of one wavefunction term. hat = false: theta(p); hat = true:
   theta_hat(q). The time term is cubic except for the regression variant. */
Cx kp_exponent(const Point& pt, Cx spec, const KPParams& prm, bool hat, TimeTerm tt) {
    const double x = pt[0], Y = pt[1], T = pt[2];
    const Cx a = prm.alpha;
    const Cx a2 = a * a;
    const double y02 = prm.y0 * prm.y0;
    const double T2 = T * T, T3 = T2 * T, T5 = T3 * T2;
    const Cx s = y02 / (12.0 * a * T2);
    const double sgn = hat ? -1.0 : 1.0;
    const Cx shifted = hat ? spec + s : spec - s;
    const Cx time_term = (tt == TimeTerm::cubic) ? -4.0 * T * spec * spec * spec
                                                 : -4.0 * T * spec * spec;
    return x * shifted + sgn * (Y / a) * shifted * shifted
           - sgn * a * Y * Y * y02 / (36.0 * T3) + sgn * a * y02 * y02 * y02 / (48.0 * T5)
           + a2 * y02 * y02 * spec / (36.0 * T3) - sgn * y02 * spec * spec / (a * T)
           + time_term;
}

Cx wave_sum(const Point& pt, const WaveSum& waves, const KPParams& prm, bool hat, TimeTerm tt) {
    prm.validate();
    validate_waves(waves);
    if (!(std::abs(pt[2]) > kTinyT))
        raise("singular-T", "wavefunction at T = 0");
    Cx sum{0.0};
    for (const auto& w : waves)
        sum += w.amplitude * std::exp(kp_exponent(pt, w.spectral, prm, hat, tt));
    if (!finite(sum))
        raise("non-finite-sample", "wavefunction overflow at " + format_point(pt));
    return sum;
}

}  // namespace

Cx kp_psi(const Point& pt, const WaveSum& waves, const KPParams& prm, TimeTerm tt) {
    return wave_sum(pt, waves, prm, false, tt);
}

Cx kp_psi_hat(const Point& pt, const WaveSum& waves, const KPParams& prm) {
    return wave_sum(pt, waves, prm, true, TimeTerm::cubic);
}

Cx kp_kernel_closed(const Point& pt, const KPParams& prm) {
    prm.validate_dressing();
    const double x = pt[0], Y = pt[1], T = pt[2];
    if (!(std::abs(T) > kTinyT))
        raise("singular-T", "kernel at T = 0");
    const Cx a2 = prm.alpha * prm.alpha;
    const Cx p = prm.p;
    const double y02 = prm.y0 * prm.y0;
    const double T2 = T * T, T3 = T2 * T;
    const Cx chi = std::exp(-2.0 * x * p + a2 * Y * y02 * p / (3.0 * T2)
                            - a2 * y02 * y02 * p / (18.0 * T3) + 8.0 * T * p * p * p);
    const Cx denom = 1.0 / (2.0 * p) + chi;
    if (std::abs(denom) <= kTinyDenom * (1.0 + std::abs(chi)))
        raise("kernel-pole", "kernel denominator vanishes at " + format_point(pt));
    return -1.0 / denom;
}

KPDressed kp_dressed(const Point& pt, const KPParams& prm, TauYCoefficient yc) {
    prm.validate_dressing();
    const auto core = core_d(prm);
    core.need_regular_T(pt[2]);
    const double x = pt[0], Y = pt[1], T = pt[2];
    return KPDressed{core.dressed_u(x, Y, T, prm.p, yc), core.dressed_w(x, Y, T, prm.p, yc),
                     core.tau(x, Y, T, prm.p, yc)};
}

FieldPair kp_dressed_fields(const KPParams& prm, TauYCoefficient yc) {
    prm.validate_dressing();
    const auto core = core_d(prm);
    const Cx p = prm.p;
    FieldPair f;
    f.u = [core, p, yc](const Point& pt) {
        core.need_regular_T(pt[2]);
        return core.dressed_u(pt[0], pt[1], pt[2], p, yc);
    };
    f.w = [core, p, yc](const Point& pt) {
        core.need_regular_T(pt[2]);
        return core.dressed_w(pt[0], pt[1], pt[2], p, yc);
    };
    return f;
}

FieldPairL kp_dressed_fields_ld(const KPParams& prm, TauYCoefficient yc) {
    prm.validate_dressing();
    const auto core = core_l(prm);
    const CxL p = CoreL::widen(prm.p);
    FieldPairL f;
    f.u = [core, p, yc](const PointL& pt) {
        core.need_regular_T((double)pt[2]);
        return core.dressed_u(pt[0], pt[1], pt[2], p, yc);
    };
    f.w = [core, p, yc](const PointL& pt) {
        core.need_regular_T((double)pt[2]);
        return core.dressed_w(pt[0], pt[1], pt[2], p, yc);
    };
    return f;
}

Cx kdv_soliton(double x, double T, Cx p) {
    const Cx arg = -p * x + 4.0 * T * p * p * p + std::log(2.0 * p) / 2.0;
    const Cx ch = std::cosh(arg);
    if (!(std::abs(ch) > 1e-8))
        raise("solution-pole", "cosh vanishes at x = " + std::to_string(x));
    return -2.0 * p * p / (ch * ch);
}

}  // namespace solibound
