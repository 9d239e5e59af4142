#pragma once

#include "lvaci/errors.hpp"
#include "lvaci/rational.hpp"

#include <cmath>

namespace lvaci {

/// The three-dimensional Lotka-Volterra system
///   x1' = a x1 x2 + b x1 x3
///   x2' = -a x1 x2 + c x2 x3
///   x3' = -b x1 x3 - c x2 x3
/// determined by the skew-symmetric interaction matrix
///   A = [[0, a, b], [-a, 0, c], [-b, -c, 0]].
class LVSystem {
public:
    LVSystem(Rational a, Rational b, Rational c) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
        if (a_ == 0 && b_ == 0 && c_ == 0) throw std::invalid_argument("the zero system (0,0,0) has no dynamics");
    }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }

    RatMat3 interaction_matrix() const {
        return {{{Rational(0), a_, b_}, {-a_, Rational(0), c_}, {-b_, -c_, Rational(0)}}};
    }

    int zero_count() const { return (a_ == 0 ? 1 : 0) + (b_ == 0 ? 1 : 0) + (c_ == 0 ? 1 : 0); }

    /// Total degree of the Casimir F = x1^c x2^(-b) x3^a.
    Rational casimir_degree() const { return a_ - b_ + c_; }

    bool operator==(const LVSystem& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }

private:
    Rational a_, b_, c_;
};

// Written once over a generic scalar so the exact and floating layers share
// the defining equations.
template <class S>
Vec3<S> vector_field(const S& a, const S& b, const S& c, const Vec3<S>& x) {
    return {a * x[0] * x[1] + b * x[0] * x[2],   //
            -a * x[0] * x[1] + c * x[1] * x[2],  //
            -b * x[0] * x[2] - c * x[1] * x[2]};
}

inline RatVec3 vector_field(const LVSystem& s, const RatVec3& x) {
    return vector_field(s.a(), s.b(), s.c(), x);
}

template <class S>
S hamiltonian(const Vec3<S>& x) {
    return x[0] + x[1] + x[2];
}

/// Quadratic Poisson structure pi(x); the equations of motion are pi * grad H.
inline RatMat3 poisson_matrix(const LVSystem& s, const RatVec3& x) {
    const Rational p12 = s.a() * x[0] * x[1];
    const Rational p13 = s.b() * x[0] * x[2];
    const Rational p23 = s.c() * x[1] * x[2];
    return {{{Rational(0), p12, p13}, {-p12, Rational(0), p23}, {-p13, -p23, Rational(0)}}};
}

/// Floating-point evaluation of the Casimir F = x1^c x2^(-b) x3^a.
/// Throws DomainError when a base is <= 0 and its exponent is not a
/// non-negative integer.
inline long double casimir(const LVSystem& s, const Vec3<long double>& x) {
    const Rational exps[3] = {s.c(), -s.b(), s.a()};
    long double out = 1.0L;
    for (int i = 0; i < 3; ++i) {
        const Rational& e = exps[i];
        if (x[i] <= 0.0L && !(is_integer(e) && e >= 0)) {
            throw DomainError("casimir: nonpositive component with non-natural exponent");
        }
        if (is_integer(e)) {
            // integer powers keep exact sign handling for nonpositive bases
            long long n = numerator(e).convert_to<long long>();
            long double base = x[i], acc = 1.0L;
            bool invert = n < 0;
            for (long long k = 0; k < (invert ? -n : n); ++k) acc *= base;
            out *= invert ? 1.0L / acc : acc;
        } else {
            out *= std::pow(x[i], to_long_double(e));
        }
    }
    return out;
}

/// Exact Casimir identity pi(x) * grad log F == 0 with
/// grad log F = (c/x1, -b/x2, a/x3). Holds for every system and every
/// nonzero rational point.
inline bool casimir_gradient_check(const LVSystem& s, const RatVec3& x) {
    if (x[0] == 0 || x[1] == 0 || x[2] == 0) throw ZeroComponentError("casimir_gradient_check: zero component");
    const RatVec3 grad_log = {s.c() / x[0], -s.b() / x[1], s.a() / x[2]};
    return is_zero_vec(matvec(poisson_matrix(s, x), grad_log));
}

}  // namespace lvaci
