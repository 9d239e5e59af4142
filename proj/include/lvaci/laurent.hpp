#pragma once

#include "lvaci/balances.hpp"
#include "lvaci/errors.hpp"
#include "lvaci/param_poly.hpp"

#include <optional>
#include <vector>

namespace lvaci {

/// A free parameter of a Laurent balance. Step 0 is the position along an
/// indicial line; steps >= 1 are kernel directions of singular resonance
/// systems. The basis is constant except for the step-1 kernel along a line,
/// which varies polynomially with the line parameter.
struct FreeParameter {
    int step = 0;
    int param_index = 0;  // ParamPoly variable slot
    PolyVec3 basis{};
};

/// One indicial component with its Laurent expansion carried symbolically in
/// the free parameters.
struct Balance {
    IndicialComponent component{};
    std::vector<PolyVec3> coefficients;  // index k = 0..truncation_order
    std::vector<FreeParameter> free_parameters;
    std::optional<int> obstructed_at;
    int truncation_order = 0;

    int param_count() const { return static_cast<int>(free_parameters.size()); }
    std::vector<int> param_steps() const {
        std::vector<int> steps;
        for (const auto& fp : free_parameters) steps.push_back(fp.step);
        return steps;
    }
};

/// R^(k)_i = sum_{l=1}^{k-1} x_i^(l) (A x^(k-l))_i — the resonance right-hand
/// side, with the l = 0 and l = k terms of the series convolution absorbed
/// into (k Id - K). Verified against brute-force series substitution in the
/// test suite.
inline PolyVec3 step_rhs(const LVSystem& s, const std::vector<PolyVec3>& coeffs, int k) {
    if (static_cast<int>(coeffs.size()) < k) throw MissingCoefficientsError("step_rhs: need coefficients 0..k-1");
    const RatMat3 a = s.interaction_matrix();
    PolyVec3 r{};
    for (int l = 1; l < k; ++l) {
        const PolyVec3& xl = coeffs[static_cast<size_t>(l)];
        const PolyVec3& xr = coeffs[static_cast<size_t>(k - l)];
        for (int i = 0; i < 3; ++i) {
            ParamPoly ax;
            for (int j = 0; j < 3; ++j) ax += ParamPoly(a[i][j]) * xr[j];
            r[i] += xl[i] * ax;
        }
    }
    return r;
}

namespace detail {

inline PolyMat3 poly_kowalevski(const LVSystem& s, const PolyVec3& x0) {
    const ParamPoly a(s.a()), b(s.b()), c(s.c());
    return {{{a * x0[1] + b * x0[2] + ParamPoly(1), a * x0[0], b * x0[0]},
             {-(a * x0[1]), -(a * x0[0]) + c * x0[2] + ParamPoly(1), c * x0[1]},
             {-(b * x0[2]), -(c * x0[2]), -(b * x0[0]) - c * x0[1] + ParamPoly(1)}}};
}

inline ParamPoly poly_det(const PolyMat3& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])  //
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline PolyMat3 poly_adjugate(const PolyMat3& m) {
    PolyMat3 adj{};
    adj[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    adj[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
    adj[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
    adj[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    adj[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    adj[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
    adj[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    adj[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
    adj[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return adj;
}

inline PolyVec3 poly_cross(const PolyVec3& u, const PolyVec3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline bool poly_vec_zero(const PolyVec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

// Resonant step with a constant (rational) matrix: eliminate on [M | R] with
// exact row operations, R carried as polynomials. Zero rows of M must match
// identically-zero polynomial entries, otherwise the step is obstructed.
struct ResonantStep {
    bool compatible = false;
    PolyVec3 particular{};
    std::vector<RatVec3> kernel;
};

inline ResonantStep solve_resonant(const RatMat3& m, const PolyVec3& rhs) {
    std::array<std::array<Rational, 3>, 3> a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = m[i][j];
    std::array<ParamPoly, 3> r = {rhs[0], rhs[1], rhs[2]};

    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < 3 && row < 3; ++col) {
        int sel = -1;
        for (int i = row; i < 3; ++i)
            if (a[i][col] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(a[sel], a[row]);
        std::swap(r[sel], r[row]);
        const Rational pivot = a[row][col];
        for (int j = col; j < 3; ++j) a[row][j] /= pivot;
        r[row] = r[row].divided_by(pivot);
        for (int i = 0; i < 3; ++i) {
            if (i == row || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (int j = col; j < 3; ++j) a[i][j] -= f * a[row][j];
            r[i] -= ParamPoly(f) * r[row];
        }
        pivots.push_back(col);
        ++row;
    }

    ResonantStep out;
    for (size_t i = pivots.size(); i < 3; ++i) {
        if (!r[i].is_zero()) return out;  // polynomial obstruction
    }
    out.compatible = true;
    out.particular = {ParamPoly(0), ParamPoly(0), ParamPoly(0)};
    for (size_t i = 0; i < pivots.size(); ++i) out.particular[static_cast<size_t>(pivots[i])] = r[i];
    out.kernel = kernel(m);
    return out;
}

}  // namespace detail

/// Expands the Laurent solution anchored at one indicial component to the
/// given order, introducing a fresh symbolic parameter per kernel direction
/// at each compatible resonant step. A Line component contributes its
/// parameter at step 0 and keeps the whole expansion polynomial in it: the
/// spectrum is constant along the line, so every nonresonant step matrix has
/// a constant nonzero determinant.
inline Balance expand(const LVSystem& s, const IndicialComponent& comp, int order) {
    Balance bal;
    bal.component = comp;
    bal.truncation_order = order;

    const bool is_line = comp.kind == IndicialComponent::Kind::Line;
    int next_param = 0;

    PolyVec3 x0 = to_poly(comp.point.coords);
    if (is_line) {
        const ParamPoly u0 = ParamPoly::variable(0);
        for (int i = 0; i < 3; ++i) x0[i] += u0 * ParamPoly(comp.direction[i]);
        bal.free_parameters.push_back({0, 0, to_poly(comp.direction)});
        next_param = 1;
    }

    const PolyMat3 k_poly = detail::poly_kowalevski(s, x0);

    // spectrum: the characteristic polynomial must not depend on the line
    // parameter (it cannot, for this family)
    const ParamPoly tr = k_poly[0][0] + k_poly[1][1] + k_poly[2][2];
    const ParamPoly min2 = k_poly[0][0] * k_poly[1][1] - k_poly[0][1] * k_poly[1][0]  //
                           + k_poly[0][0] * k_poly[2][2] - k_poly[0][2] * k_poly[2][0]
                           + k_poly[1][1] * k_poly[2][2] - k_poly[1][2] * k_poly[2][1];
    const ParamPoly det_k = detail::poly_det(k_poly);
    if (!tr.is_constant() || !min2.is_constant() || !det_k.is_constant())
        throw std::logic_error("expand: Kowalevski spectrum varies along the indicial line");
    const Polynomial cp({-det_k.constant_value(), min2.constant_value(), -tr.constant_value(), Rational(1)});
    const RationalRoots roots = rational_roots(cp);
    if (!roots.fully_factored) throw DomainError("expand: non-rational Kowalevski spectrum");
    Rational k_p(0);
    for (const Rational& r : roots.roots)
        if (r > k_p) k_p = r;
    if (!is_integer(k_p)) throw DomainError("expand: non-integer positive Kowalevski exponent");
    const int max_exp = numerator(k_p).convert_to<int>();
    if (order < max_exp) throw OrderTooSmallError("expand: order below largest positive Kowalevski exponent");

    bal.coefficients.push_back(x0);
    for (int k = 1; k <= order; ++k) {
        const PolyVec3 rhs = step_rhs(s, bal.coefficients, k);
        PolyMat3 m = k_poly;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                m[i][j] = -m[i][j];
                if (i == j) m[i][j] += ParamPoly(Rational(k));
            }
        const ParamPoly det = detail::poly_det(m);

        if (det.is_zero()) {
            if (k > max_exp) throw std::logic_error("expand: resonance beyond the largest exponent");
            if (detail::poly_vec_zero(rhs) && is_line) {
                // kernel direction varies along the line: cross product of two
                // independent rows stays polynomial in the line parameter
                PolyVec3 w{};
                const std::array<std::pair<int, int>, 3> pairs = {{{0, 1}, {0, 2}, {1, 2}}};
                for (const auto& [i, j] : pairs) {
                    const PolyVec3 ri = {m[i][0], m[i][1], m[i][2]};
                    const PolyVec3 rj = {m[j][0], m[j][1], m[j][2]};
                    const PolyVec3 cand = detail::poly_cross(ri, rj);
                    if (!detail::poly_vec_zero(cand)) { w = cand; break; }
                }
                if (detail::poly_vec_zero(w)) throw std::logic_error("expand: degenerate step kernel on line");
                const ParamPoly p = ParamPoly::variable(next_param);
                bal.free_parameters.push_back({k, next_param, w});
                ++next_param;
                bal.coefficients.push_back({p * w[0], p * w[1], p * w[2]});
                continue;
            }
            // constant-matrix resonance
            RatMat3 m_rat{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (!m[i][j].is_constant())
                        throw std::logic_error("expand: parameter-dependent resonant step with nonzero rhs");
                    m_rat[i][j] = m[i][j].constant_value();
                }
            const detail::ResonantStep step = detail::solve_resonant(m_rat, rhs);
            if (!step.compatible) {
                bal.obstructed_at = k;
                return bal;
            }
            PolyVec3 x = step.particular;
            for (const RatVec3& kv : step.kernel) {
                const ParamPoly p = ParamPoly::variable(next_param);
                bal.free_parameters.push_back({k, next_param, to_poly(kv)});
                ++next_param;
                for (int i = 0; i < 3; ++i) x[i] += p * ParamPoly(kv[i]);
            }
            bal.coefficients.push_back(x);
        } else {
            if (!det.is_constant())
                throw std::logic_error("expand: nonconstant, nonzero step determinant along the line");
            const Rational d = det.constant_value();
            const PolyMat3 adj = detail::poly_adjugate(m);
            PolyVec3 x{};
            for (int i = 0; i < 3; ++i) {
                ParamPoly acc;
                for (int j = 0; j < 3; ++j) acc += adj[i][j] * rhs[j];
                x[i] = acc.divided_by(d);
            }
            bal.coefficients.push_back(x);
        }
    }
    return bal;
}

/// Laurent coefficients with the free parameters pinned to concrete values
/// (indexed by parameter slot).
inline std::vector<RatVec3> instantiate(const Balance& bal, const std::vector<Rational>& values) {
    std::vector<RatVec3> out;
    out.reserve(bal.coefficients.size());
    for (const PolyVec3& c : bal.coefficients) out.push_back(eval(c, values));
    return out;
}

/// Substitutes the truncated series x(t) = t^-1 sum x^(k) t^k into
/// xdot - f(x) by direct series convolution and checks that every
/// coefficient through t^(upto-2) vanishes exactly.
inline bool residual_check(const LVSystem& s, const Balance& bal, int upto, const std::vector<Rational>& values);

/// Same check with the free parameters pinned at fixed pseudo-random
/// rationals derived from the balance shape.
inline bool residual_check(const LVSystem& s, const Balance& bal, int upto) {
    std::vector<Rational> values;
    std::uint64_t state = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(bal.truncation_order);
    for (int i = 0; i < bal.param_count(); ++i) {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        values.push_back(make_rational(static_cast<long long>(state % 19) - 9,
                                       static_cast<long long>(state >> 32 & 7) + 1));
    }
    return residual_check(s, bal, upto, values);
}

inline bool residual_check(const LVSystem& s, const Balance& bal, int upto, const std::vector<Rational>& values) {
    if (bal.obstructed_at && *bal.obstructed_at <= upto) return false;
    const std::vector<RatVec3> x = instantiate(bal, values);
    if (static_cast<int>(x.size()) <= upto) return false;
    const RatMat3 a = s.interaction_matrix();
    for (int k = 0; k <= upto; ++k) {
        for (int i = 0; i < 3; ++i) {
            Rational conv(0);
            for (int l = 0; l <= k; ++l) {
                const RatVec3 ax = matvec(a, x[static_cast<size_t>(k - l)]);
                conv += x[static_cast<size_t>(l)][i] * ax[i];
            }
            if (Rational(k - 1) * x[static_cast<size_t>(k)][i] - conv != 0) return false;
        }
    }
    return true;
}

struct ComponentSummary {
    IndicialComponent component{};
    KowalevskiSpectrum spectrum{};
    std::vector<int> free_parameter_steps;
    std::optional<int> obstructed_at;
    int free_parameter_count = 0;
};

struct ACIVerdict {
    bool is_aci = false;
    std::optional<Balance> witness;
    int free_param_total = 0;
    bool all_integer_exponents = false;
    std::vector<ComponentSummary> report;
};

/// Default truncation: largest positive exponent plus two safety steps, so
/// the no-further-resonance claim is exercised.
inline int default_order(const KowalevskiSpectrum& spec) {
    Rational k_p(1);
    for (const Rational& e : spec.exponents)
        if (e > k_p) k_p = e;
    return numerator(k_p).convert_to<int>() + 2;
}

/// The a.c.i. verdict: integer exponents everywhere, and some indicial
/// component carries an unobstructed balance with exactly n-1 = 2 free
/// parameters. Non-integer spectra fail immediately. min_order raises the
/// truncation order of every expansion.
inline ACIVerdict aci_test(const LVSystem& s, int min_order = 0) {
    ACIVerdict verdict;
    const IntegralityReport ir = integrality_report(s);
    verdict.all_integer_exponents = ir.all_integer;

    const std::vector<IndicialComponent> locus = indicial_locus(s);
    size_t spec_idx = 0;
    for (const IndicialComponent& comp : locus) {
        if (comp.kind == IndicialComponent::Kind::Point && comp.point.is_trivial) continue;
        ComponentSummary summary;
        summary.component = comp;
        summary.spectrum = ir.spectra[spec_idx++];
        if (ir.all_integer) {
            Balance bal = expand(s, comp, std::max(default_order(summary.spectrum), min_order));
            summary.free_parameter_steps = bal.param_steps();
            summary.obstructed_at = bal.obstructed_at;
            summary.free_parameter_count = bal.param_count();
            if (!bal.obstructed_at && bal.param_count() == 2 && !verdict.witness) {
                verdict.witness = std::move(bal);
            }
            verdict.free_param_total = std::max(verdict.free_param_total, summary.free_parameter_count);
        }
        verdict.report.push_back(std::move(summary));
    }
    verdict.is_aci = verdict.witness.has_value() && verdict.free_param_total == 2;
    if (!verdict.is_aci) verdict.witness.reset();
    return verdict;
}

}  // namespace lvaci
