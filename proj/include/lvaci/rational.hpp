#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <stdexcept>
#include <string>

namespace lvaci {

using Int = boost::multiprecision::cpp_int;

// Always reduced, denominator > 0; equality is structural.
using Rational = boost::multiprecision::cpp_rational;

template <class S>
using Vec3 = std::array<S, 3>;

template <class S>
using Mat3 = std::array<std::array<S, 3>, 3>;

using RatVec3 = Vec3<Rational>;
using RatMat3 = Mat3<Rational>;

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(num) / Rational(den);
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline long double to_long_double(const Rational& r) { return r.convert_to<long double>(); }

// Renders "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (!is_integer(r)) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

// Accepts "p" or "p/q" with optional leading sign.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        const Int num(text.substr(0, slash));
        const Int den(text.substr(slash + 1));
        return make_rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("cannot parse rational: '" + text + "'");
    }
}

template <class S>
Vec3<S> add(const Vec3<S>& u, const Vec3<S>& v) {
    return {u[0] + v[0], u[1] + v[1], u[2] + v[2]};
}

template <class S>
Vec3<S> sub(const Vec3<S>& u, const Vec3<S>& v) {
    return {u[0] - v[0], u[1] - v[1], u[2] - v[2]};
}

template <class S, class T>
Vec3<S> scale(const T& t, const Vec3<S>& v) {
    return {t * v[0], t * v[1], t * v[2]};
}

template <class S>
S dot(const Vec3<S>& u, const Vec3<S>& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

template <class S>
Vec3<S> matvec(const Mat3<S>& m, const Vec3<S>& v) {
    Vec3<S> r{};
    for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return r;
}

template <class S>
Mat3<S> matmul(const Mat3<S>& a, const Mat3<S>& b) {
    Mat3<S> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return r;
}

template <class S>
Mat3<S> matsub(const Mat3<S>& a, const Mat3<S>& b) {
    Mat3<S> r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

template <class S>
bool is_zero_vec(const Vec3<S>& v) {
    return v[0] == S(0) && v[1] == S(0) && v[2] == S(0);
}

template <class S>
bool is_zero_mat(const Mat3<S>& m) {
    for (const auto& row : m)
        for (const auto& e : row)
            if (!(e == S(0))) return false;
    return true;
}

}  // namespace lvaci
