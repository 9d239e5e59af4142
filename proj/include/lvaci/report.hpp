#pragma once

#include "lvaci/classify.hpp"
#include "lvaci/dynamics.hpp"
#include "lvaci/laurent.hpp"

#include <json.hpp>

namespace lvaci {

// nlohmann::json objects are map-backed, so dumps come out with sorted keys;
// exact values render as "p/q" strings, numeric values as round-trip decimals.
using Json = nlohmann::json;

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const RatVec3& v) { return Json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

inline double round_trip(Real x) { return static_cast<double>(x); }

inline Json to_json(const GroupElement& g) {
    return Json{{"sigma", perm_name(g.sigma)}, {"scale", to_string(g.scale)}};
}

inline Json to_json(const ClassLabel& label) {
    Json j;
    j["kind"] = class_name(label.kind);
    j["lambda"] = label.lambda ? Json(*label.lambda) : Json(nullptr);
    j["mu"] = label.mu ? to_json(*label.mu) : Json(nullptr);
    j["witness"] = label.witness ? to_json(*label.witness) : Json(nullptr);
    Json orbit = Json::array();
    for (const Rational& m : label.mu_orbit) orbit.push_back(to_json(m));
    j["mu_orbit"] = orbit;
    j["note"] = label.note;
    return j;
}

inline Json to_json(const IndicialComponent& comp) {
    Json j;
    if (comp.kind == IndicialComponent::Kind::Point) {
        j["kind"] = "point";
        j["coords"] = to_json(comp.point.coords);
        j["trivial"] = comp.point.is_trivial;
    } else {
        j["kind"] = "line";
        j["base"] = to_json(comp.point.coords);
        j["direction"] = to_json(comp.direction);
    }
    return j;
}

inline Json to_json(const KowalevskiSpectrum& spec) {
    Json j;
    j["all_rational"] = spec.all_rational;
    Json exps = Json::array();
    for (const Rational& e : spec.exponents) exps.push_back(to_json(e));
    j["exponents"] = exps;
    return j;
}

inline Json balance_summary_json(const ComponentSummary& summary) {
    Json j;
    j["component"] = to_json(summary.component);
    j["spectrum"] = to_json(summary.spectrum);
    j["free_parameter_count"] = summary.free_parameter_count;
    j["free_parameter_steps"] = summary.free_parameter_steps;
    j["obstructed_at"] = summary.obstructed_at ? Json(*summary.obstructed_at) : Json(nullptr);
    return j;
}

inline Json free_parameters_json(const Balance& bal) {
    Json arr = Json::array();
    for (const FreeParameter& fp : bal.free_parameters) {
        Json basis = Json::array();
        for (int i = 0; i < 3; ++i) basis.push_back(fp.basis[i].to_string());
        arr.push_back(Json{{"step", fp.step}, {"basis", basis}});
    }
    return arr;
}

struct AnalyzeResult {
    ClassLabel label;
    ACIVerdict verdict;
    Json report;
};

inline AnalyzeResult analyze(const LVSystem& s, int min_order = 0) {
    AnalyzeResult out;
    out.label = classify(s);
    out.verdict = aci_test(s, min_order);

    Json j;
    j["input"] = Json{{"a", to_string(s.a())}, {"b", to_string(s.b())}, {"c", to_string(s.c())}};
    j["casimir_degree"] = to_json(s.casimir_degree());
    Json locus = Json::array();
    for (const IndicialComponent& comp : indicial_locus(s)) locus.push_back(to_json(comp));
    j["indicial_locus"] = locus;
    j["integrality"] = Json{{"all_integer", out.verdict.all_integer_exponents}};
    Json balances = Json::array();
    for (const ComponentSummary& summary : out.verdict.report) balances.push_back(balance_summary_json(summary));
    j["balances"] = balances;
    j["aci"] = Json{{"is_aci", out.verdict.is_aci}, {"free_parameter_total", out.verdict.free_param_total}};
    if (out.verdict.witness) j["aci"]["witness_free_parameters"] = free_parameters_json(*out.verdict.witness);
    j["class"] = to_json(out.label);
    out.report = std::move(j);
    return out;
}

inline RatVec3 key_to_vec(const std::array<Rational, 3>& key) { return {key[0], key[1], key[2]}; }

struct ScanRow {
    LVSystem rep;
    ClassLabel label;
    bool is_aci = false;
    bool agrees = true;
    int orbit_size_in_box = 0;
    Json json;
};

struct ScanResult {
    std::vector<ScanRow> rows;  // sorted by representative triple
    std::map<std::string, int> histogram;
    int triples_seen = 0;
    bool all_agree = true;
    Json report;
};

/// Exhaustive classification over integer triples |a|,|b|,|c| <= max_abs,
/// one row per orbit (dedup by normal form). Every orbit cross-checks the
/// classifier against the Laurent engine; Degenerate orbits sit outside the
/// six-class case split and are exempt from the agreement requirement.
inline ScanResult scan(int max_abs) {
    ScanResult out;
    std::map<std::array<Rational, 3>, int> seen;  // rep triple -> row index
    for (int a = -max_abs; a <= max_abs; ++a) {
        for (int b = -max_abs; b <= max_abs; ++b) {
            for (int c = -max_abs; c <= max_abs; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                ++out.triples_seen;
                const LVSystem s(a, b, c);
                const NormalForm nf = normalize(s);
                const std::array<Rational, 3> key = {nf.rep.a(), nf.rep.b(), nf.rep.c()};
                auto it = seen.find(key);
                if (it != seen.end()) {
                    ++out.rows[static_cast<size_t>(it->second)].orbit_size_in_box;
                    continue;
                }
                ScanRow row{nf.rep, classify(nf.rep), false, true, 1, Json()};
                const ACIVerdict verdict = aci_test(nf.rep);
                row.is_aci = verdict.is_aci;
                const bool classified_aci = row.label.kind != ClassKind::NotACI &&
                                            row.label.kind != ClassKind::Degenerate;
                row.agrees = row.label.kind == ClassKind::Degenerate || classified_aci == verdict.is_aci;

                Json j;
                j["representative"] = to_json(key_to_vec(key));
                j["class"] = to_json(row.label);
                j["is_aci"] = row.is_aci;
                j["agrees"] = row.agrees;
                Json spectra = Json::array();
                for (const ComponentSummary& summary : verdict.report) spectra.push_back(balance_summary_json(summary));
                j["components"] = spectra;
                row.json = std::move(j);

                seen.emplace(key, static_cast<int>(out.rows.size()));
                out.rows.push_back(std::move(row));
            }
        }
    }
    std::sort(out.rows.begin(), out.rows.end(), [](const ScanRow& l, const ScanRow& r) {
        const std::array<Rational, 3> a = {l.rep.a(), l.rep.b(), l.rep.c()};
        const std::array<Rational, 3> b = {r.rep.a(), r.rep.b(), r.rep.c()};
        return a < b;
    });
    Json rows = Json::array();
    for (ScanRow& row : out.rows) {
        row.json["orbit_size_in_box"] = row.orbit_size_in_box;
        ++out.histogram[class_name(row.label.kind)];
        if (!row.agrees) out.all_agree = false;
        rows.push_back(row.json);
    }
    Json j;
    j["max"] = max_abs;
    j["triples"] = out.triples_seen;
    j["orbits"] = static_cast<int>(out.rows.size());
    j["histogram"] = out.histogram;
    j["all_agree"] = out.all_agree;
    j["rows"] = rows;
    out.report = std::move(j);
    return out;
}

}  // namespace lvaci
