#pragma once

#include "lvaci/errors.hpp"
#include "lvaci/lv_system.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lvaci {

/// The six coordinate permutations, fixed enumeration order.
enum class Permutation { Id, Swap12, Swap13, Swap23, Cycle123, Cycle132 };

inline constexpr std::array<Permutation, 6> kAllPermutations = {
    Permutation::Id,     Permutation::Swap12,   Permutation::Swap13,
    Permutation::Swap23, Permutation::Cycle123, Permutation::Cycle132};

/// sigma as 0-based images: images[i] = sigma(i+1) - 1.
inline std::array<int, 3> perm_images(Permutation p) {
    switch (p) {
        case Permutation::Id: return {0, 1, 2};
        case Permutation::Swap12: return {1, 0, 2};
        case Permutation::Swap13: return {2, 1, 0};
        case Permutation::Swap23: return {0, 2, 1};
        case Permutation::Cycle123: return {1, 2, 0};  // 1->2, 2->3, 3->1
        case Permutation::Cycle132: return {2, 0, 1};  // 1->3, 3->2, 2->1
    }
    return {0, 1, 2};
}

inline const char* perm_name(Permutation p) {
    switch (p) {
        case Permutation::Id: return "id";
        case Permutation::Swap12: return "(1 2)";
        case Permutation::Swap13: return "(1 3)";
        case Permutation::Swap23: return "(2 3)";
        case Permutation::Cycle123: return "(1 2 3)";
        case Permutation::Cycle132: return "(1 3 2)";
    }
    return "id";
}

/// Coordinate relabeling X_i = x_{sigma(i)} followed by the uniform rescaling
/// u_i = scale * x_i, acting on the interaction matrix as
/// A'_{im} = A_{sigma(i) sigma(m)} / scale.
struct GroupElement {
    Permutation sigma = Permutation::Id;
    Rational scale = Rational(1);
};

namespace detail {

inline std::array<Rational, 3> permute_triple(Permutation p, const LVSystem& s) {
    const RatMat3 a = s.interaction_matrix();
    const std::array<int, 3> im = perm_images(p);
    RatMat3 ap{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            ap[i][j] = a[static_cast<size_t>(im[static_cast<size_t>(i)])][static_cast<size_t>(im[static_cast<size_t>(j)])];
    return {ap[0][1], ap[0][2], ap[1][2]};
}

inline bool lex_less(const std::array<Rational, 3>& u, const std::array<Rational, 3>& v) {
    for (int i = 0; i < 3; ++i) {
        if (u[static_cast<size_t>(i)] < v[static_cast<size_t>(i)]) return true;
        if (u[static_cast<size_t>(i)] > v[static_cast<size_t>(i)]) return false;
    }
    return false;
}

}  // namespace detail

inline LVSystem apply_group(const GroupElement& g, const LVSystem& s) {
    if (g.scale == 0) throw ZeroScaleError("apply_group: zero scale");
    const std::array<Rational, 3> t = detail::permute_triple(g.sigma, s);
    return LVSystem(t[0] / g.scale, t[1] / g.scale, t[2] / g.scale);
}

/// act(compose(g1, g2), s) == act(g1, act(g2, s)).
inline GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
    const std::array<int, 3> im1 = perm_images(g1.sigma);
    const std::array<int, 3> im2 = perm_images(g2.sigma);
    std::array<int, 3> comp{};
    for (int i = 0; i < 3; ++i)
        comp[static_cast<size_t>(i)] = im2[static_cast<size_t>(im1[static_cast<size_t>(i)])];
    for (Permutation p : kAllPermutations) {
        if (perm_images(p) == comp) return {p, g1.scale * g2.scale};
    }
    throw std::logic_error("compose: permutation table is closed");  // unreachable
}

struct NormalForm {
    LVSystem rep;
    GroupElement g;  // apply_group(g, input) == rep
};

/// Canonical orbit representative: lexicographically smallest of the six
/// permutation images after scaling each so its first nonzero entry is 1.
inline NormalForm normalize(const LVSystem& s) {
    std::optional<std::array<Rational, 3>> best;
    GroupElement best_g;
    for (Permutation p : kAllPermutations) {
        const std::array<Rational, 3> image = detail::permute_triple(p, s);
        Rational t(0);
        for (const Rational& e : image)
            if (e != 0) { t = e; break; }
        const std::array<Rational, 3> cand = {image[0] / t, image[1] / t, image[2] / t};
        if (!best || detail::lex_less(cand, *best)) {
            best = cand;
            best_g = {p, t};
        }
    }
    return {LVSystem((*best)[0], (*best)[1], (*best)[2]), best_g};
}

inline bool is_isomorphic(const LVSystem& s1, const LVSystem& s2) {
    return normalize(s1).rep == normalize(s2).rep;
}

using PairSet = std::set<std::pair<long long, long long>>;

/// Brute force for (x + y) / (xy - x - y) in Z over 1 <= x <= y <= bound.
inline PairSet lemma1_solutions(long long bound) {
    PairSet out;
    for (long long x = 1; x <= bound; ++x)
        for (long long y = x; y <= bound; ++y) {
            const long long den = x * y - x - y;
            if (den != 0 && (x + y) % den == 0) out.emplace(x, y);
        }
    return out;
}

inline PairSet lemma1_closed_form(long long bound) {
    PairSet out;
    for (long long l = 1; l <= bound; ++l) out.emplace(1, l);
    for (auto [x, y] : {std::pair<long long, long long>{2, 3}, {2, 4}, {2, 6}, {3, 3}, {3, 6}, {4, 4}})
        if (y <= bound) out.emplace(x, y);
    return out;
}

/// Brute force for (x - y) / (xy + y - x) in Z over 1 <= x, y <= bound.
inline PairSet lemma2_solutions(long long bound) {
    PairSet out;
    for (long long x = 1; x <= bound; ++x)
        for (long long y = 1; y <= bound; ++y) {
            const long long den = x * y + y - x;  // positive for x, y >= 1
            if ((x - y) % den == 0) out.emplace(x, y);
        }
    return out;
}

inline PairSet lemma2_closed_form(long long bound) {
    PairSet out;
    for (long long l = 1; l <= bound; ++l) {
        out.emplace(l, 1);
        out.emplace(l, l);
    }
    return out;
}

/// The one-parameter family with prescribed exponents k1 = D/a, k2 = D/c:
/// (a, (k1 + k2 - k1 k2)/k2 * a, k1/k2 * a), with k3 = -D/b when b != 0.
struct ExponentFamily {
    Rational b_over_a;
    Rational c_over_a;
    std::optional<long long> k3;  // absent for the open KM case (2,2)

    LVSystem at(const Rational& a) const { return LVSystem(a, b_over_a * a, c_over_a * a); }
};

inline ExponentFamily family_from_exponents(long long k1, long long k2) {
    if (k1 == 0 || k2 == 0) throw std::invalid_argument("family_from_exponents: zero exponent");
    const long long den = k1 * k2 - k1 - k2;
    ExponentFamily fam;
    fam.b_over_a = make_rational(k1 + k2 - k1 * k2, k2);
    fam.c_over_a = make_rational(k1, k2);
    if (den == 0) {
        if (k1 == 2 && k2 == 2) return fam;  // b = 0: no third point, no k3
        throw NonIntegralK3Error("family_from_exponents: k1 k2 = k1 + k2 away from (2,2)");
    }
    if ((k1 * k2) % den != 0) throw NonIntegralK3Error("family_from_exponents: k3 not an integer");
    fam.k3 = k1 * k2 / den;
    return fam;
}

enum class ClassKind { L2, L3, L4, L6, LLambda, LZero, NotACI, Degenerate };

inline const char* class_name(ClassKind k) {
    switch (k) {
        case ClassKind::L2: return "l2";
        case ClassKind::L3: return "l3";
        case ClassKind::L4: return "l4";
        case ClassKind::L6: return "l6";
        case ClassKind::LLambda: return "l_lambda";
        case ClassKind::LZero: return "l0";
        case ClassKind::NotACI: return "not_aci";
        case ClassKind::Degenerate: return "degenerate";
    }
    return "?";
}

struct ClassLabel {
    ClassKind kind = ClassKind::NotACI;
    std::optional<long long> lambda;          // LLambda
    std::optional<Rational> mu;               // LZero, largest over the orbit
    std::optional<GroupElement> witness;      // maps the input onto the representative
    std::vector<Rational> mu_orbit;           // all (1, 1+mu, mu) readings of the orbit
    std::string note;
};

/// The named representative of each a.c.i. class.
inline LVSystem class_representative(ClassKind kind, long long lambda = 0, const Rational& mu = Rational(0)) {
    switch (kind) {
        case ClassKind::L2: return LVSystem(1, 0, 1);
        case ClassKind::L3: return LVSystem(1, -1, 1);
        case ClassKind::L4: return LVSystem(1, -1, 2);
        case ClassKind::L6: return LVSystem(1, -2, 3);
        case ClassKind::LLambda: return LVSystem(1, 1, lambda);
        case ClassKind::LZero: return LVSystem(1, 1 + mu, mu);
        default: throw std::invalid_argument("class_representative: no representative");
    }
}

namespace detail {

// First (sigma, scale) with permute(sigma, s)/scale == rep, if any.
inline std::optional<GroupElement> witness_onto(const LVSystem& s, const LVSystem& rep) {
    const std::array<Rational, 3> r = {rep.a(), rep.b(), rep.c()};
    int first = 0;
    while (r[static_cast<size_t>(first)] == 0) ++first;
    for (Permutation p : kAllPermutations) {
        const std::array<Rational, 3> image = permute_triple(p, s);
        if (image[static_cast<size_t>(first)] == 0) continue;
        const Rational t = image[static_cast<size_t>(first)] / r[static_cast<size_t>(first)];
        if (image[0] == t * r[0] && image[1] == t * r[1] && image[2] == t * r[2]) return GroupElement{p, t};
    }
    return std::nullopt;
}

}  // namespace detail

/// Six-class classifier. Orbits with two vanishing coefficients decouple a
/// species and sit outside the six-class case analysis; they are labeled
/// Degenerate rather than forced into a.c.i./not-a.c.i.
inline ClassLabel classify(const LVSystem& s) {
    ClassLabel label;

    if (s.zero_count() >= 2) {
        label.kind = ClassKind::Degenerate;
        label.witness = normalize(s).g;
        label.note = "two interaction coefficients vanish: one species decouples; "
                     "outside the six-class case analysis";
        return label;
    }

    if (s.casimir_degree() == 0) {
        // b = a + c up to the group action; read mu off every image of the
        // shape (1, 1+mu, mu) and report the largest (orbit-invariant)
        std::set<Rational> mus;
        for (Permutation p : kAllPermutations) {
            const std::array<Rational, 3> image = detail::permute_triple(p, s);
            if (image[0] == 0) continue;
            const Rational mu = image[2] / image[0];
            if (mu != 0) mus.insert(mu);
        }
        if (mus.empty()) throw std::logic_error("classify: a - b + c = 0 orbit without a (1,1+mu,mu) reading");
        label.kind = ClassKind::LZero;
        label.mu_orbit.assign(mus.begin(), mus.end());
        label.mu = *mus.rbegin();
        label.witness = detail::witness_onto(s, class_representative(ClassKind::LZero, 0, *label.mu));
        bool boundary = false;
        for (Permutation p : kAllPermutations) {
            const std::array<Rational, 3> image = detail::permute_triple(p, s);
            if (image[0] != 0 && image[2] == 0) boundary = true;
        }
        if (boundary)
            label.note = "orbit touches the mu = 0 boundary shape (1,1,0); identified with the "
                         "nonzero mu reading";
        return label;
    }

    const std::array<std::pair<ClassKind, LVSystem>, 4> exceptional = {{
        {ClassKind::L2, class_representative(ClassKind::L2)},
        {ClassKind::L3, class_representative(ClassKind::L3)},
        {ClassKind::L4, class_representative(ClassKind::L4)},
        {ClassKind::L6, class_representative(ClassKind::L6)},
    }};
    for (const auto& [kind, rep] : exceptional) {
        if (const auto w = detail::witness_onto(s, rep)) {
            label.kind = kind;
            label.witness = w;
            return label;
        }
    }

    // the infinite family (1, 1, lambda), lambda a nonzero integer; the first
    // matching image fixes the reported sign (lambda and -lambda share an orbit)
    for (Permutation p : kAllPermutations) {
        const std::array<Rational, 3> image = detail::permute_triple(p, s);
        if (image[0] == 0 || image[0] != image[1]) continue;
        const Rational lam = image[2] / image[0];
        if (lam == 0 || !is_integer(lam)) continue;
        label.kind = ClassKind::LLambda;
        label.lambda = numerator(lam).convert_to<long long>();
        label.witness = GroupElement{p, image[0]};
        if (*label.lambda == 2 || *label.lambda == 3 || *label.lambda == 4 || *label.lambda == 6)
            label.note = "Casimir degree coincides with an exceptional class; orbits remain distinct";
        return label;
    }

    label.kind = ClassKind::NotACI;
    label.witness = normalize(s).g;
    return label;
}

/// Certificate (k_2, ..., k_n) of non-negative integers with
/// sum k_j rho_j = m and sum k_j <= m, if one exists (exhaustive search).
inline std::optional<std::vector<long long>> degree_relation_check(const std::vector<long long>& exponents,
                                                                   long long m) {
    if (m < 0) throw std::invalid_argument("degree_relation_check: negative degree");
    // smallest sum k_j first, so minimal certificates are preferred
    for (long long total = 0; total <= m; ++total) {
        std::vector<long long> ks(exponents.size(), 0);
        while (true) {
            long long sum = 0, weighted = 0;
            for (size_t i = 0; i < ks.size(); ++i) {
                sum += ks[i];
                weighted += ks[i] * exponents[i];
            }
            if (sum == total && weighted == m) return ks;
            size_t pos = 0;
            while (pos < ks.size()) {
                if (++ks[pos] > total) {
                    ks[pos] = 0;
                    ++pos;
                } else {
                    break;
                }
            }
            if (pos == ks.size()) break;
        }
    }
    return std::nullopt;
}

}  // namespace lvaci
