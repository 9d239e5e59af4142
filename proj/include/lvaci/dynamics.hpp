#pragma once

#include "lvaci/errors.hpp"
#include "lvaci/laurent.hpp"
#include "lvaci/lv_system.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

namespace lvaci {

// 80-bit extended precision keeps the conservation-drift floor well below the
// RK4 truncation error, so convergence-order checks stay measurable.
using Real = long double;
using RealVec3 = Vec3<Real>;

struct RealLV {
    Real a, b, c;
    explicit RealLV(const LVSystem& s) : a(to_long_double(s.a())), b(to_long_double(s.b())), c(to_long_double(s.c())) {}

    RealVec3 operator()(const RealVec3& x) const { return vector_field(a, b, c, x); }
};

struct Trajectory {
    std::vector<Real> times;
    std::vector<RealVec3> states;
    Real step = 0;
    std::string_view method = "rk4";
    enum class Halt { None, Ceiling, NonFinite };
    Halt halt = Halt::None;
    std::optional<Real> blow_up_time;  // last regular time before the halt

    bool regular() const { return halt == Halt::None; }
};

namespace detail {

inline RealVec3 rk4_step(const RealLV& f, const RealVec3& x, Real h) {
    const RealVec3 k1 = f(x);
    const RealVec3 k2 = f(add(x, scale(h / 2, k1)));
    const RealVec3 k3 = f(add(x, scale(h / 2, k2)));
    const RealVec3 k4 = f(add(x, scale(h, k3)));
    RealVec3 out = x;
    for (int i = 0; i < 3; ++i) out[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

inline bool finite(const RealVec3& x) {
    return std::isfinite(static_cast<double>(x[0])) && std::isfinite(static_cast<double>(x[1])) &&
           std::isfinite(static_cast<double>(x[2]));
}

}  // namespace detail

/// Classical fixed-step RK4. Halts early with a blow-up marker once any
/// component exceeds the ceiling or turns non-finite.
inline Trajectory integrate(const LVSystem& s, const RealVec3& x0, Real t_end, Real h, Real ceiling = 1e12L) {
    if (h <= 0 || t_end <= 0) throw std::invalid_argument("integrate: need h > 0 and t_end > 0");
    const RealLV f(s);
    Trajectory traj;
    traj.step = h;
    Real t = 0;
    RealVec3 x = x0;
    traj.times.push_back(t);
    traj.states.push_back(x);
    while (t < t_end - h * 1e-9L) {
        const Real hh = std::min(h, t_end - t);
        const RealVec3 next = detail::rk4_step(f, x, hh);
        if (!detail::finite(next)) {
            traj.halt = Trajectory::Halt::NonFinite;
            traj.blow_up_time = t;
            return traj;
        }
        if (std::max({std::fabs(next[0]), std::fabs(next[1]), std::fabs(next[2])}) > ceiling) {
            traj.halt = Trajectory::Halt::Ceiling;
            traj.blow_up_time = t;
            return traj;
        }
        t += hh;
        x = next;
        traj.times.push_back(t);
        traj.states.push_back(x);
    }
    return traj;
}

struct DriftReport {
    Real h_drift = 0;          // max relative |H(t) - H(0)| / |H(0)|
    Real f_drift = 0;          // same for the Casimir F, positive-orthant prefix
    bool valid_region = true;  // whole trajectory stayed componentwise positive
};

inline DriftReport drift_report(const LVSystem& s, const Trajectory& traj) {
    if (!traj.regular()) throw std::invalid_argument("drift_report: trajectory halted by blow-up");
    DriftReport rep;
    const Real h0 = hamiltonian(traj.states.front());
    const Real h_scale = h0 != 0 ? std::fabs(h0) : 1;
    Real f0 = 0;
    bool have_f0 = false;
    for (const RealVec3& x : traj.states) {
        rep.h_drift = std::max(rep.h_drift, std::fabs(hamiltonian(x) - h0) / h_scale);
        if (x[0] > 0 && x[1] > 0 && x[2] > 0) {
            if (rep.valid_region) {
                const Real fv = casimir(s, x);
                if (!have_f0) {
                    f0 = fv;
                    have_f0 = true;
                }
                const Real f_scale = f0 != 0 ? std::fabs(f0) : 1;
                rep.f_drift = std::max(rep.f_drift, std::fabs(fv - f0) / f_scale);
            }
        } else {
            rep.valid_region = false;
        }
    }
    return rep;
}

/// Richardson estimate of the RK4 error at t_end: |x_h - x_{h/2}| * 16/15.
inline Real richardson_error(const LVSystem& s, const RealVec3& x0, Real t_end, Real h) {
    const Trajectory full = integrate(s, x0, t_end, h);
    const Trajectory half = integrate(s, x0, t_end, h / 2);
    if (!full.regular() || !half.regular()) return std::numeric_limits<Real>::infinity();
    const RealVec3 d = sub(full.states.back(), half.states.back());
    return std::sqrt(static_cast<double>(dot(d, d))) * 16.0L / 15.0L;
}

/// Exact solution of the b = a + c system (a, a+c, c) on the level H = k:
///   x1 = k C1 e^{akt} / D,  x3 = k a e^{-ckt} / D,  x2 = k - x1 - x3,
/// with D = C1 e^{akt} + a e^{-ckt} - C2.
inline RealVec3 closed_form_solution(Real a, Real c, Real k, Real c1, Real c2, Real t) {
    const Real ea = std::exp(a * k * t);
    const Real ec = std::exp(-c * k * t);
    const Real den = c1 * ea + a * ec - c2;
    if (den == 0) throw PoleAtError(t);
    const Real x1 = k * c1 * ea / den;
    const Real x3 = k * a * ec / den;
    return {x1, k - x1 - x3, x3};
}

/// Truncated Laurent series x(t) = sum_k x^(k) t^(k-1) evaluated in floating
/// point after pinning the free parameters.
inline RealVec3 eval_series(const std::vector<RatVec3>& coeffs, Real t) {
    RealVec3 acc{0, 0, 0};
    Real tk = 1 / t;
    for (const RatVec3& c : coeffs) {
        for (int i = 0; i < 3; ++i) acc[i] += to_long_double(c[i]) * tk;
        tk *= t;
    }
    return acc;
}

/// Validates a balance against the flow: seed RK4 at an anchor close to the
/// pole (where the truncated series is most accurate), integrate out to each
/// offset, and compare. Returns the max relative discrepancy.
inline Real laurent_vs_numeric(const LVSystem& s, const Balance& bal, const std::vector<Rational>& params,
                               std::vector<Real> t_offsets) {
    if (bal.obstructed_at) throw std::invalid_argument("laurent_vs_numeric: obstructed balance");
    const std::vector<RatVec3> coeffs = instantiate(bal, params);
    std::sort(t_offsets.begin(), t_offsets.end());
    const Real anchor = t_offsets.front() / 5;
    const RealLV f(s);
    RealVec3 x = eval_series(coeffs, anchor);
    Real t = anchor;
    Real worst = 0;
    for (const Real target : t_offsets) {
        const int steps = 4000;
        const Real h = (target - t) / steps;
        if (h > 0) {
            for (int i = 0; i < steps; ++i) x = detail::rk4_step(f, x, h);
            t = target;
        }
        const RealVec3 series = eval_series(coeffs, target);
        for (int i = 0; i < 3; ++i) {
            const Real denom = std::max(std::fabs(x[i]), 1e-12L);
            worst = std::max(worst, std::fabs(series[i] - x[i]) / denom);
        }
    }
    return worst;
}

/// Lax pair of the periodic KM system (a,b,c) = (-1,1,-1):
///   L = [[0,x1,1],[1,0,x2],[x3,1,0]],  B = [[0,0,x1x2],[x2x3,0,0],[0,x1x3,0]].
/// Returns Ldot - (LB - BL) with xdot = f(x) substituted entrywise; the
/// identity makes it the exact zero matrix at every rational state.
inline RatMat3 lax_residual_km(const RatVec3& x) {
    const LVSystem km(-1, 1, -1);
    const RatVec3 f = vector_field(km, x);
    const Rational zero(0), one(1);
    const RatMat3 l = {{{zero, x[0], one}, {one, zero, x[1]}, {x[2], one, zero}}};
    const RatMat3 b = {{{zero, zero, x[0] * x[1]}, {x[1] * x[2], zero, zero}, {zero, x[0] * x[2], zero}}};
    const RatMat3 ldot = {{{zero, f[0], zero}, {zero, zero, f[1]}, {f[2], zero, zero}}};
    return matsub(ldot, matsub(matmul(l, b), matmul(b, l)));
}

/// H3 = 1 + x1 x2 x3 = trace(L^3)/3, conserved along the (-1,1,-1) flow.
inline Rational km_h3(const RatVec3& x) { return Rational(1) + x[0] * x[1] * x[2]; }

inline Real km_h3(const RealVec3& x) { return 1 + x[0] * x[1] * x[2]; }

/// Diagnostic only: least-squares slope of log|x| against log(t* - t) over
/// the tail of a trajectory that halted at a blow-up. A slope near -1 is the
/// simple-pole signature; this never feeds classification.
inline std::optional<Real> estimate_pole_order(const Trajectory& traj, int tail = 64) {
    if (traj.regular() || static_cast<int>(traj.states.size()) < tail + 2) return std::nullopt;
    const Real t_star = *traj.blow_up_time + traj.step;  // one step past the last regular state
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = traj.states.size() - static_cast<size_t>(tail); i < traj.states.size(); ++i) {
        const Real gap = t_star - traj.times[i];
        const Real mag = std::max({std::fabs(traj.states[i][0]), std::fabs(traj.states[i][1]),
                                   std::fabs(traj.states[i][2])});
        if (gap <= 0 || mag <= 0) continue;
        const Real lx = std::log(gap), ly = std::log(mag);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::nullopt;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace lvaci
