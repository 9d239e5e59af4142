#include "lvaci/laurent.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace lvaci;

namespace {

Rational rnd_rational(std::mt19937_64& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    Rational r = make_rational(num(rng), den(rng));
    while (nonzero && r == 0) r = make_rational(num(rng), den(rng));
    return r;
}

LVSystem rnd_system(std::mt19937_64& rng) {
    while (true) {
        const Rational a = rnd_rational(rng), b = rnd_rational(rng), c = rnd_rational(rng);
        if (a != 0 || b != 0 || c != 0) return LVSystem(a, b, c);
    }
}

const IndicialComponent& component_at(const std::vector<IndicialComponent>& comps, const RatVec3& coords) {
    for (const auto& c : comps)
        if (c.kind == IndicialComponent::Kind::Point && c.point.coords == coords) return c;
    throw std::logic_error("component not found");
}

// Brute-force oracle for the resonance right-hand side: the t^(k-2)
// coefficient of f(x) for the full truncated series, minus the Jacobian part
// (K - Id) x^(k) that the step matrix absorbs. Independent of step_rhs.
PolyVec3 brute_force_rhs(const LVSystem& s, const std::vector<PolyVec3>& coeffs, const PolyMat3& kmat, int k) {
    const RatMat3 a = s.interaction_matrix();
    PolyVec3 r{};
    for (int i = 0; i < 3; ++i) {
        ParamPoly conv;
        for (int l = 0; l <= k; ++l) {
            ParamPoly ax;
            for (int j = 0; j < 3; ++j) ax += ParamPoly(a[i][j]) * coeffs[static_cast<size_t>(k - l)][j];
            conv += coeffs[static_cast<size_t>(l)][i] * ax;
        }
        ParamPoly jac;  // ((K - Id) x^(k))_i
        for (int j = 0; j < 3; ++j) {
            ParamPoly kij = kmat[i][j];
            if (i == j) kij -= ParamPoly(1);
            jac += kij * coeffs[static_cast<size_t>(k)][j];
        }
        r[i] = conv - jac;
    }
    return r;
}

PolyMat3 poly_kowalevski_of(const LVSystem& s, const PolyVec3& x0) {
    const ParamPoly a(s.a()), b(s.b()), c(s.c());
    return {{{a * x0[1] + b * x0[2] + ParamPoly(1), a * x0[0], b * x0[0]},
             {-(a * x0[1]), -(a * x0[0]) + c * x0[2] + ParamPoly(1), c * x0[1]},
             {-(b * x0[2]), -(c * x0[2]), -(b * x0[0]) - c * x0[1] + ParamPoly(1)}}};
}

}  // namespace

TEST_CASE("step_rhs basics") {
    const LVSystem s(1, 0, 1);
    std::vector<PolyVec3> coeffs = {to_poly({Rational(0), Rational(1), Rational(-1)})};
    // R^(1) is the empty convolution
    CHECK(step_rhs(s, coeffs, 1) == PolyVec3{});
    CHECK_THROWS_AS(step_rhs(s, coeffs, 2), MissingCoefficientsError);

    coeffs.push_back(to_poly({Rational(0), Rational(0), Rational(0)}));
    CHECK(step_rhs(s, coeffs, 2) == PolyVec3{});
}

TEST_CASE("closed-form rhs equals brute-force series substitution") {
    // identity in the coefficients: test on random coefficient lists, not
    // just recursion output
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 50; ++trial) {
        const LVSystem s = rnd_system(rng);
        std::vector<PolyVec3> coeffs;
        for (int k = 0; k <= 8; ++k) {
            coeffs.push_back(to_poly({rnd_rational(rng), rnd_rational(rng), rnd_rational(rng)}));
        }
        const PolyMat3 kmat = poly_kowalevski_of(s, coeffs[0]);
        for (int k = 1; k <= 8; ++k) {
            CHECK(step_rhs(s, coeffs, k) == brute_force_rhs(s, coeffs, kmat, k));
        }
    }
}

TEST_CASE("expand: open KM (1,0,1) at the c-point") {
    const LVSystem s(1, 0, 1);
    const auto comps = indicial_locus(s);
    const auto& cpt = component_at(comps, {Rational(0), Rational(1), Rational(-1)});

    CHECK_THROWS_AS(expand(s, cpt, 1), OrderTooSmallError);

    const Balance bal = expand(s, cpt, 4);
    REQUIRE_FALSE(bal.obstructed_at.has_value());
    CHECK(bal.param_steps() == std::vector<int>{1, 2});
    REQUIRE(bal.free_parameters.size() == 2);
    // kernel directions: (0,1,1) at step 1, (-3,2,1) at step 2 (x3 slot free)
    CHECK(bal.free_parameters[0].basis == to_poly({Rational(0), Rational(1), Rational(1)}));
    CHECK(bal.free_parameters[1].basis == to_poly({Rational(-3), Rational(2), Rational(1)}));

    // frozen from the independent recursion oracle at (p1, p2) = (1/2, -1/3)
    const std::vector<Rational> vals = {make_rational(1, 2), make_rational(-1, 3)};
    const std::vector<RatVec3> x = instantiate(bal, vals);
    REQUIRE(x.size() == 5);
    CHECK(x[1] == RatVec3{Rational(0), make_rational(1, 2), make_rational(1, 2)});
    CHECK(x[2] == RatVec3{make_rational(3, 4), make_rational(-5, 12), make_rational(-1, 3)});
    CHECK(x[3] == RatVec3{make_rational(3, 8), make_rational(-3, 8), Rational(0)});
    CHECK(x[4] == RatVec3{make_rational(-1, 16), make_rational(29, 720), make_rational(1, 45)});

    CHECK(residual_check(s, bal, 4, vals));
}

TEST_CASE("expand: periodic KM pattern (1,-1,1), steps {1,3}") {
    const LVSystem s(1, -1, 1);
    const auto comps = indicial_locus(s);
    const auto& bpt = component_at(comps, {Rational(-1), Rational(0), Rational(1)});
    const Balance bal = expand(s, bpt, 5);
    REQUIRE_FALSE(bal.obstructed_at.has_value());
    CHECK(bal.param_steps() == std::vector<int>{1, 3});
    CHECK(bal.free_parameters[0].basis == to_poly({Rational(1), Rational(0), Rational(1)}));
    CHECK(bal.free_parameters[1].basis == to_poly({Rational(1), Rational(-2), Rational(1)}));
    CHECK(residual_check(s, bal, 5, {make_rational(2, 3), make_rational(-1, 7)}));
}

TEST_CASE("expand: line component of (1,2,1) gives step-0 and step-1 parameters") {
    const LVSystem s(1, 2, 1);
    const auto comps = indicial_locus(s);
    REQUIRE(comps.back().kind == IndicialComponent::Kind::Line);
    const Balance bal = expand(s, comps.back(), 3);
    REQUIRE_FALSE(bal.obstructed_at.has_value());
    CHECK(bal.param_steps() == std::vector<int>{0, 1});
    // step-0 basis is the line direction (c, -b, a)
    CHECK(bal.free_parameters[0].basis == to_poly({Rational(1), Rational(-2), Rational(1)}));
    // step-1 kernel varies along the line, x1 slot generically free
    CHECK_FALSE(bal.free_parameters[1].basis[0].is_constant());

    // residual vanishes for several line positions and kernel values
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        const std::vector<Rational> vals = {rnd_rational(rng), rnd_rational(rng)};
        CHECK(residual_check(s, bal, 3, vals));
    }
}

TEST_CASE("residual_check detects a perturbed coefficient") {
    const LVSystem s(1, 0, 1);
    const auto comps = indicial_locus(s);
    const auto& cpt = component_at(comps, {Rational(0), Rational(1), Rational(-1)});
    Balance bal = expand(s, cpt, 4);
    bal.coefficients[3][1] += ParamPoly(make_rational(1, 7));
    CHECK_FALSE(residual_check(s, bal, 4, {Rational(1), Rational(1)}));
}

TEST_CASE("residual vanishes for random systems through order 8") {
    std::mt19937_64 rng(211);
    int tested = 0;
    for (int trial = 0; trial < 200 && tested < 50; ++trial) {
        const LVSystem s = rnd_system(rng);
        for (const auto& comp : indicial_locus(s)) {
            if (comp.kind == IndicialComponent::Kind::Point && comp.point.is_trivial) continue;
            const KowalevskiSpectrum spec = component_spectrum(s, comp);
            if (!spec.all_rational) continue;
            Rational kp(1);
            for (const Rational& e : spec.exponents)
                if (e > kp) kp = e;
            if (!is_integer(kp) || kp > 8) continue;
            Balance bal = expand(s, comp, 8);
            if (bal.obstructed_at) continue;
            std::vector<Rational> vals;
            for (int i = 0; i < bal.param_count(); ++i) vals.push_back(rnd_rational(rng));
            CHECK(residual_check(s, bal, 8, vals));
            ++tested;
        }
    }
    CHECK(tested >= 50);
}

TEST_CASE("free parameters appear only at steps equal to positive exponents") {
    std::mt19937_64 rng(307);
    for (int trial = 0; trial < 100; ++trial) {
        const LVSystem s = rnd_system(rng);
        if (!integrality_report(s).all_integer) continue;
        const ACIVerdict v = aci_test(s);
        for (const auto& summary : v.report) {
            for (int step : summary.free_parameter_steps) {
                if (step == 0) {
                    CHECK(summary.component.kind == IndicialComponent::Kind::Line);
                } else {
                    CHECK(std::count(summary.spectrum.exponents.begin(), summary.spectrum.exponents.end(),
                                     Rational(step)) > 0);
                }
            }
        }
    }
}

TEST_CASE("aci_test on the six classes and a non-example") {
    CHECK(aci_test(LVSystem(1, -2, 3)).is_aci);
    CHECK(aci_test(LVSystem(1, 1, 5)).is_aci);
    CHECK(aci_test(LVSystem(1, 1, -4)).is_aci);
    CHECK(aci_test(LVSystem(1, 0, 1)).is_aci);
    CHECK(aci_test(LVSystem(1, -1, 1)).is_aci);
    CHECK(aci_test(LVSystem(1, -1, 2)).is_aci);
    CHECK(aci_test(LVSystem(1, 3, 2)).is_aci);  // b = a + c, mu = 2

    const ACIVerdict bad = aci_test(LVSystem(2, 3, 7));
    CHECK_FALSE(bad.is_aci);
    CHECK_FALSE(bad.all_integer_exponents);
    CHECK_FALSE(bad.witness.has_value());

    const ACIVerdict v = aci_test(LVSystem(1, -1, 1));
    REQUIRE(v.witness.has_value());
    CHECK(v.free_param_total == 2);
    CHECK_FALSE(v.witness->obstructed_at.has_value());
}

TEST_CASE("no resonance beyond the largest exponent") {
    // expand runs k_p + 2 steps; a singular step past k_p would throw
    for (auto [a, b, c] : {std::array<int, 3>{1, -2, 3}, {1, 1, 5}, {1, 0, 1}, {1, 2, 1}}) {
        const LVSystem s(a, b, c);
        for (const auto& comp : indicial_locus(s)) {
            if (comp.kind == IndicialComponent::Kind::Point && comp.point.is_trivial) continue;
            const KowalevskiSpectrum spec = component_spectrum(s, comp);
            CHECK_NOTHROW(expand(s, comp, default_order(spec)));
        }
    }
}

TEST_CASE("residual_check self-instantiating overload") {
    const LVSystem s(1, -1, 1);
    const Balance bal = expand(s, indicial_locus(s)[1], 5);
    CHECK(residual_check(s, bal, 5));
}
