#pragma once

#include "lvaci/rational.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace lvaci {

/// Solution set of a 3x3 rational linear system.
struct LinearSolution {
    enum class Kind { Unique, Affine, Inconsistent };
    Kind kind = Kind::Inconsistent;
    RatVec3 particular{};                 // meaningless when Inconsistent
    std::vector<RatVec3> kernel_basis{};  // empty when Unique
};

namespace detail {

// Reduced row echelon form of a 3x(3+w) augmented matrix, leftmost-pivot
// convention. Returns the pivot column (into the first 3 columns) of each
// nonzero row, in order.
template <int W>
inline std::vector<int> rref(std::array<std::array<Rational, 3 + W>, 3>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < 3 && row < 3; ++col) {
        int sel = -1;
        for (int r = row; r < 3; ++r)
            if (m[r][col] != 0) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(m[sel], m[row]);
        const Rational inv = Rational(1) / m[row][col];
        for (int j = col; j < 3 + W; ++j) m[row][j] *= inv;
        for (int r = 0; r < 3; ++r) {
            if (r == row || m[r][col] == 0) continue;
            const Rational f = m[r][col];
            for (int j = col; j < 3 + W; ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

inline int rank(const RatMat3& m) {
    std::array<std::array<Rational, 3>, 3> work;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) work[i][j] = m[i][j];
    return static_cast<int>(detail::rref<0>(work).size());
}

/// Basis of {v : Mv = 0}, deterministic (RREF free columns, ascending).
inline std::vector<RatVec3> kernel(const RatMat3& m) {
    std::array<std::array<Rational, 3>, 3> work;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) work[i][j] = m[i][j];
    const std::vector<int> pivots = detail::rref<0>(work);
    std::vector<RatVec3> basis;
    for (int col = 0; col < 3; ++col) {
        if (std::find(pivots.begin(), pivots.end(), col) != pivots.end()) continue;
        RatVec3 v{Rational(0), Rational(0), Rational(0)};
        v[col] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work[r][col];
        basis.push_back(v);
    }
    return basis;
}

/// Exact Gaussian elimination over the rationals.
inline LinearSolution solve_linear(const RatMat3& m, const RatVec3& rhs) {
    std::array<std::array<Rational, 4>, 3> work;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) work[i][j] = m[i][j];
        work[i][3] = rhs[i];
    }
    const std::vector<int> pivots = detail::rref<1>(work);
    LinearSolution sol;
    for (size_t r = pivots.size(); r < 3; ++r) {
        if (work[r][3] != 0) {
            sol.kind = LinearSolution::Kind::Inconsistent;
            return sol;
        }
    }
    sol.particular = {Rational(0), Rational(0), Rational(0)};
    for (size_t r = 0; r < pivots.size(); ++r) sol.particular[pivots[r]] = work[r][3];
    sol.kernel_basis = kernel(m);
    sol.kind = sol.kernel_basis.empty() ? LinearSolution::Kind::Unique : LinearSolution::Kind::Affine;
    return sol;
}

/// Dense univariate polynomial, coefficients lowest-degree first.
/// The zero polynomial has an empty coefficient list.
struct Polynomial {
    std::vector<Rational> coeffs;

    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> c) : coeffs(std::move(c)) { trim(); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    Rational eval(const Rational& x) const {
        Rational acc(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    bool operator==(const Polynomial& o) const { return coeffs == o.coeffs; }
};

/// Monic characteristic polynomial det(rho*I - M), degree exactly 3.
inline Polynomial char_poly(const RatMat3& m) {
    const Rational tr = m[0][0] + m[1][1] + m[2][2];
    const Rational minors = m[0][0] * m[1][1] - m[0][1] * m[1][0]    //
                            + m[0][0] * m[2][2] - m[0][2] * m[2][0]  //
                            + m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])  //
                         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return Polynomial({-det, minors, -tr, Rational(1)});
}

struct RationalRoots {
    std::vector<Rational> roots;  // ascending, with multiplicity
    bool fully_factored = false;  // product of found linear factors equals p
};

namespace detail {

inline std::vector<Int> divisors(Int n) {
    if (n < 0) n = -n;
    std::vector<Int> divs;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            if (d * d != n) divs.push_back(n / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

// Deflate p by (x - r); caller guarantees p(r) == 0.
inline Polynomial deflate(const Polynomial& p, const Rational& r) {
    const int n = p.degree();
    std::vector<Rational> q(static_cast<size_t>(n), Rational(0));
    Rational carry = p.coeffs[static_cast<size_t>(n)];
    for (int i = n - 1; i >= 0; --i) {
        q[static_cast<size_t>(i)] = carry;
        carry = p.coeffs[static_cast<size_t>(i)] + carry * r;
    }
    return Polynomial(std::move(q));
}

}  // namespace detail

/// All rational roots with multiplicity (rational root theorem on the
/// primitive integer form). Requires p nonzero.
inline RationalRoots rational_roots(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
    RationalRoots out;
    Polynomial work = p;

    // factor out powers of x
    size_t low = 0;
    while (low < work.coeffs.size() && work.coeffs[low] == 0) ++low;
    for (size_t i = 0; i < low; ++i) out.roots.push_back(Rational(0));
    if (low > 0) work = Polynomial(std::vector<Rational>(work.coeffs.begin() + static_cast<long>(low), work.coeffs.end()));

    while (work.degree() >= 1) {
        // clear denominators for candidate enumeration
        Int den_lcm = 1;
        for (const auto& c : work.coeffs) den_lcm = lcm(den_lcm, denominator(c));
        const Int a0 = numerator(Rational(work.coeffs.front() * den_lcm));
        const Int an = numerator(Rational(work.coeffs.back() * den_lcm));
        bool found = false;
        for (const Int& pnum : detail::divisors(a0)) {
            for (const Int& qden : detail::divisors(an)) {
                if (gcd(pnum, qden) != 1) continue;
                for (int sign : {1, -1}) {
                    const Rational cand = make_rational(sign * pnum, qden);
                    if (work.eval(cand) == 0) {
                        out.roots.push_back(cand);
                        work = detail::deflate(work, cand);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;
    }
    out.fully_factored = work.degree() <= 0;
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

}  // namespace lvaci
