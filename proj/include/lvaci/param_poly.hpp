#pragma once

#include "lvaci/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace lvaci {

/// Polynomial in up to four free parameters u0..u3 with exact rational
/// coefficients. u0 is reserved for a step-0 line parameter; resonance
/// parameters take the following slots. Laurent coefficients live here so
/// compatibility at later resonances can be checked as polynomial identities.
class ParamPoly {
public:
    static constexpr int kMaxVars = 4;
    using Monomial = std::array<std::uint16_t, kMaxVars>;

    ParamPoly() = default;
    ParamPoly(Rational c) {  // NOLINT: implicit by design
        if (c != 0) terms_.emplace(Monomial{}, std::move(c));
    }
    ParamPoly(int c) : ParamPoly(Rational(c)) {}

    static ParamPoly variable(int index) {
        ParamPoly p;
        Monomial m{};
        m[static_cast<size_t>(index)] = 1;
        p.terms_.emplace(m, Rational(1));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("ParamPoly: not a constant");
        return terms_.begin()->second;
    }

    int total_degree() const {
        int deg = 0;
        for (const auto& [m, c] : terms_) {
            int d = 0;
            for (auto e : m) d += e;
            deg = std::max(deg, d);
        }
        return deg;
    }

    ParamPoly& operator+=(const ParamPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    ParamPoly& operator-=(const ParamPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }

    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { return a += b; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { return a -= b; }

    friend ParamPoly operator-(const ParamPoly& a) {
        ParamPoly r;
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly r;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m{};
                for (int i = 0; i < kMaxVars; ++i) m[static_cast<size_t>(i)] = static_cast<std::uint16_t>(
                        ma[static_cast<size_t>(i)] + mb[static_cast<size_t>(i)]);
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

    /// Exact division by a nonzero rational.
    ParamPoly divided_by(const Rational& d) const {
        ParamPoly r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, c / d);
        return r;
    }

    Rational eval(std::span<const Rational> values) const {
        Rational acc(0);
        for (const auto& [m, c] : terms_) {
            Rational term = c;
            for (int i = 0; i < kMaxVars; ++i) {
                for (int e = 0; e < m[static_cast<size_t>(i)]; ++e) {
                    term *= static_cast<size_t>(i) < values.size() ? values[static_cast<size_t>(i)] : Rational(0);
                }
            }
            acc += term;
        }
        return acc;
    }

    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            const bool neg = c < 0;
            const Rational mag = neg ? Rational(-c) : c;
            if (!out.empty()) out += neg ? " - " : " + ";
            else if (neg) out += "-";
            std::string mono;
            for (int i = 0; i < kMaxVars; ++i) {
                if (m[static_cast<size_t>(i)] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "u" + std::to_string(i);
                if (m[static_cast<size_t>(i)] > 1) mono += "^" + std::to_string(m[static_cast<size_t>(i)]);
            }
            if (mono.empty()) out += lvaci::to_string(mag);
            else if (mag == 1) out += mono;
            else out += lvaci::to_string(mag) + "*" + mono;
        }
        return out;
    }

private:
    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::map<Monomial, Rational> terms_;
};

using PolyVec3 = Vec3<ParamPoly>;
using PolyMat3 = Mat3<ParamPoly>;

inline PolyVec3 to_poly(const RatVec3& v) { return {ParamPoly(v[0]), ParamPoly(v[1]), ParamPoly(v[2])}; }

inline RatVec3 eval(const PolyVec3& v, std::span<const Rational> values) {
    return {v[0].eval(values), v[1].eval(values), v[2].eval(values)};
}

}  // namespace lvaci
