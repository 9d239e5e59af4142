#pragma once

#include "lvaci/errors.hpp"
#include "lvaci/linalg.hpp"
#include "lvaci/lv_system.hpp"

#include <optional>
#include <vector>

namespace lvaci {

/// A solution of the indicial equation x_i + f_i(x) = 0 (weight vector (1,1,1)).
struct IndicialPoint {
    RatVec3 coords{};
    bool is_trivial = false;  // origin only

    std::array<bool, 3> support() const { return {coords[0] != 0, coords[1] != 0, coords[2] != 0}; }
};

/// One component of the indicial locus: an isolated point, or the affine line
/// of full-support solutions that appears exactly when a - b + c = 0.
struct IndicialComponent {
    enum class Kind { Point, Line };
    Kind kind = Kind::Point;
    IndicialPoint point{};   // base point for a Line
    RatVec3 direction{};     // zero unless kind == Line

    IndicialPoint at(const Rational& t) const { return {add(point.coords, scale(t, direction)), false}; }
};

inline bool satisfies_indicial(const LVSystem& s, const RatVec3& x) {
    const RatVec3 f = vector_field(s, x);
    return x[0] + f[0] == 0 && x[1] + f[1] == 0 && x[2] + f[2] == 0;
}

/// Enumerates the indicial locus by support: the origin, one point per
/// nonzero coefficient (b, c, a order), and the full-support line when
/// a - b + c = 0. Points whose defining coefficient vanishes are absent.
inline std::vector<IndicialComponent> indicial_locus(const LVSystem& s) {
    std::vector<IndicialComponent> comps;
    comps.push_back({IndicialComponent::Kind::Point, {{Rational(0), Rational(0), Rational(0)}, true}, {}});
    if (s.b() != 0) {
        const Rational ib = Rational(1) / s.b();
        comps.push_back({IndicialComponent::Kind::Point, {{ib, Rational(0), -ib}, false}, {}});
    }
    if (s.c() != 0) {
        const Rational ic = Rational(1) / s.c();
        comps.push_back({IndicialComponent::Kind::Point, {{Rational(0), ic, -ic}, false}, {}});
    }
    if (s.a() != 0) {
        const Rational ia = Rational(1) / s.a();
        comps.push_back({IndicialComponent::Kind::Point, {{ia, -ia, Rational(0)}, false}, {}});
    }
    if (s.casimir_degree() == 0) {
        // full-support family: the affine solution set of A x = -(1,1,1)
        const RatVec3 minus_ones = {Rational(-1), Rational(-1), Rational(-1)};
        const LinearSolution sol = solve_linear(s.interaction_matrix(), minus_ones);
        if (sol.kind == LinearSolution::Kind::Affine && sol.kernel_basis.size() == 1) {
            comps.push_back({IndicialComponent::Kind::Line, {sol.particular, false}, sol.kernel_basis[0]});
        }
    }
    return comps;
}

/// Kowalevski matrix K = Jacobian(f) + Id at an indicial point.
inline RatMat3 kowalevski_matrix(const LVSystem& s, const IndicialPoint& p) {
    if (!satisfies_indicial(s, p.coords)) throw NotIndicialError("point does not satisfy the indicial equation");
    const Rational &a = s.a(), &b = s.b(), &c = s.c();
    const Rational &x1 = p.coords[0], &x2 = p.coords[1], &x3 = p.coords[2];
    return {{{a * x2 + b * x3 + 1, a * x1, b * x1},
             {-a * x2, -a * x1 + c * x3 + 1, c * x2},
             {-b * x3, -c * x3, -b * x1 - c * x2 + 1}}};
}

struct KowalevskiSpectrum {
    IndicialPoint point{};
    RatMat3 matrix{};
    std::vector<Rational> exponents;  // ascending with multiplicity; valid iff all_rational
    bool all_rational = false;
};

inline KowalevskiSpectrum kowalevski_exponents(const LVSystem& s, const IndicialPoint& p) {
    KowalevskiSpectrum spec;
    spec.point = p;
    spec.matrix = kowalevski_matrix(s, p);
    const RationalRoots rr = rational_roots(char_poly(spec.matrix));
    spec.all_rational = rr.fully_factored;
    if (spec.all_rational) spec.exponents = rr.roots;
    return spec;
}

/// K(m) m = -m: the weight vector (1,1,1) makes the point itself the
/// eigenvector for the guaranteed eigenvalue -1.
inline bool minus_one_eigenvector_check(const LVSystem& s, const IndicialPoint& p) {
    if (p.is_trivial) throw TrivialPointError("the origin carries no pole data");
    const RatVec3 km = matvec(kowalevski_matrix(s, p), p.coords);
    return km[0] == -p.coords[0] && km[1] == -p.coords[1] && km[2] == -p.coords[2];
}

/// Spectrum of a component; a Line is sampled at base and base +/- direction
/// and base + 2*direction, and the multisets must agree.
inline KowalevskiSpectrum component_spectrum(const LVSystem& s, const IndicialComponent& comp) {
    if (comp.kind == IndicialComponent::Kind::Point) return kowalevski_exponents(s, comp.point);
    KowalevskiSpectrum base = kowalevski_exponents(s, comp.point);
    for (int t : {1, -1, 2}) {
        const KowalevskiSpectrum sample = kowalevski_exponents(s, comp.at(Rational(t)));
        if (sample.all_rational != base.all_rational || sample.exponents != base.exponents)
            throw std::logic_error("Kowalevski spectrum varies along the indicial line");
    }
    return base;
}

struct IntegralityReport {
    bool all_integer = false;
    std::vector<KowalevskiSpectrum> spectra;  // nontrivial components, locus order
};

/// Necessary condition for a.c.i.: every Kowalevski exponent at every
/// nontrivial indicial component is an integer.
inline IntegralityReport integrality_report(const LVSystem& s) {
    IntegralityReport rep;
    rep.all_integer = true;
    for (const IndicialComponent& comp : indicial_locus(s)) {
        if (comp.kind == IndicialComponent::Kind::Point && comp.point.is_trivial) continue;
        KowalevskiSpectrum spec = component_spectrum(s, comp);
        if (!spec.all_rational) {
            rep.all_integer = false;
        } else {
            for (const Rational& e : spec.exponents)
                if (!is_integer(e)) rep.all_integer = false;
        }
        rep.spectra.push_back(std::move(spec));
    }
    return rep;
}

}  // namespace lvaci
