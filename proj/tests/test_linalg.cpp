#include "lvaci/linalg.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace lvaci;

namespace {

Rational rnd_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    return make_rational(num(rng), den(rng));
}

RatMat3 rnd_matrix(std::mt19937_64& rng) {
    RatMat3 m{};
    for (auto& row : m)
        for (auto& e : row) e = rnd_rational(rng);
    return m;
}

const RatMat3 kIdentity = {{{Rational(1), Rational(0), Rational(0)},
                            {Rational(0), Rational(1), Rational(0)},
                            {Rational(0), Rational(0), Rational(1)}}};

RatMat3 diag(const Rational& a, const Rational& b, const Rational& c) {
    return {{{a, Rational(0), Rational(0)}, {Rational(0), b, Rational(0)}, {Rational(0), Rational(0), c}}};
}

}  // namespace

TEST_CASE("solve_linear identity and degenerate cases") {
    const RatVec3 rhs = {Rational(1), Rational(2), Rational(3)};
    const LinearSolution unique = solve_linear(kIdentity, rhs);
    REQUIRE(unique.kind == LinearSolution::Kind::Unique);
    CHECK(unique.particular == rhs);
    CHECK(unique.kernel_basis.empty());

    const RatMat3 zero{};
    const LinearSolution affine = solve_linear(zero, {Rational(0), Rational(0), Rational(0)});
    REQUIRE(affine.kind == LinearSolution::Kind::Affine);
    CHECK(affine.kernel_basis.size() == 3);

    const LinearSolution bad = solve_linear(diag(0, 1, 1), {Rational(1), Rational(0), Rational(0)});
    CHECK(bad.kind == LinearSolution::Kind::Inconsistent);
}

TEST_CASE("solve_linear exactness on random systems") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const RatMat3 m = rnd_matrix(rng);
        const RatVec3 rhs = {rnd_rational(rng), rnd_rational(rng), rnd_rational(rng)};
        const LinearSolution sol = solve_linear(m, rhs);
        if (sol.kind == LinearSolution::Kind::Inconsistent) continue;
        CHECK(matvec(m, sol.particular) == rhs);
        if (sol.kind == LinearSolution::Kind::Affine) {
            RatVec3 x = sol.particular;
            for (const RatVec3& v : sol.kernel_basis) x = add(x, scale(rnd_rational(rng), v));
            CHECK(matvec(m, x) == rhs);
        }
    }
}

TEST_CASE("kernel basics and rank-nullity") {
    CHECK(kernel(kIdentity).empty());
    CHECK(kernel(RatMat3{}).size() == 3);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const RatMat3 m = rnd_matrix(rng);
        CHECK(rank(m) + static_cast<int>(kernel(m).size()) == 3);
        for (const RatVec3& v : kernel(m)) CHECK(is_zero_vec(matvec(m, v)));
    }
}

TEST_CASE("char_poly closed cases") {
    const Polynomial rho3 = char_poly(RatMat3{});
    CHECK(rho3.coeffs == std::vector<Rational>{Rational(0), Rational(0), Rational(0), Rational(1)});

    // (rho+1)(rho-1)(rho-3) = rho^3 - 3 rho^2 - rho + 3
    const Polynomial p = char_poly(diag(-1, 1, 3));
    CHECK(p.coeffs == std::vector<Rational>{Rational(3), Rational(-1), Rational(-3), Rational(1)});
}

TEST_CASE("char_poly root evaluation is exactly zero") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const RatMat3 m = rnd_matrix(rng);
        const Polynomial p = char_poly(m);
        REQUIRE(p.degree() == 3);
        CHECK(p.coeffs.back() == 1);
        const RationalRoots rr = rational_roots(p);
        for (const Rational& r : rr.roots) CHECK(p.eval(r) == 0);
    }
}

TEST_CASE("rational_roots examples") {
    // rho^3 - 3 rho^2 - rho + 3 = (rho+1)(rho-1)(rho-3)
    const RationalRoots cubic = rational_roots(Polynomial({Rational(3), Rational(-1), Rational(-3), Rational(1)}));
    CHECK(cubic.fully_factored);
    CHECK(cubic.roots == std::vector<Rational>{Rational(-1), Rational(1), Rational(3)});

    const RationalRoots irr = rational_roots(Polynomial({Rational(-2), Rational(0), Rational(1)}));
    CHECK(irr.roots.empty());
    CHECK_FALSE(irr.fully_factored);

    const RationalRoots triple = rational_roots(Polynomial({Rational(0), Rational(0), Rational(0), Rational(1)}));
    CHECK(triple.fully_factored);
    CHECK(triple.roots == std::vector<Rational>{Rational(0), Rational(0), Rational(0)});

    // non-monic with fractional root: (2x - 1)(3x + 2) = 6x^2 + x - 2
    const RationalRoots frac = rational_roots(Polynomial({Rational(-2), Rational(1), Rational(6)}));
    CHECK(frac.fully_factored);
    CHECK(frac.roots == std::vector<Rational>{make_rational(-2, 3), make_rational(1, 2)});

    CHECK_THROWS_AS(rational_roots(Polynomial{}), std::invalid_argument);
}

TEST_CASE("rational parsing and rendering") {
    CHECK(parse_rational("3/6") == make_rational(1, 2));
    CHECK(parse_rational("-4/2") == Rational(-2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(make_rational(-1, 2)) == "-1/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(parse_rational("4/-6")) == "-2/3");
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}
