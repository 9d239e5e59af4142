// lv3: exact algebraic-integrability analysis of three-dimensional
// skew-symmetric Lotka-Volterra systems, with numeric cross-checks.
//
// Exit codes: 0 success / a.c.i., 2 argument error, 3 not a.c.i.,
// 4 degenerate system, 5 blow-up inside the verification window,
// 1 internal consistency failure.

#include "lvaci/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace {

using namespace lvaci;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitArgs = 2;
constexpr int kExitNotAci = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitBlowUp = 5;

bool log_enabled() {
    const char* v = std::getenv("LV_LOG");
    return v != nullptr && std::string(v) != "0" && std::string(v) != "";
}

void log_line(const std::string& msg) {
    if (log_enabled()) std::cerr << "[lv3] " << msg << "\n";
}

LVSystem parse_system(const std::vector<std::string>& abc) {
    return LVSystem(parse_rational(abc[0]), parse_rational(abc[1]), parse_rational(abc[2]));
}

void emit(const Json& report, bool json_mode, const std::string& out_file, const std::string& text) {
    std::string payload = json_mode ? report.dump(2) + "\n" : text;
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) throw std::runtime_error("cannot open output file: " + out_file);
        f << payload;
    } else {
        std::cout << payload;
    }
}

std::string exponents_text(const KowalevskiSpectrum& spec) {
    if (!spec.all_rational) return "(irrational spectrum)";
    std::string out;
    for (const Rational& e : spec.exponents) {
        if (!out.empty()) out += ", ";
        out += to_string(e);
    }
    return out;
}

std::string label_text(const ClassLabel& label) {
    std::string out = class_name(label.kind);
    if (label.lambda) out += " (lambda = " + std::to_string(*label.lambda) + ")";
    if (label.mu) out += " (mu = " + to_string(*label.mu) + ")";
    if (label.witness)
        out += "  via sigma = " + std::string(perm_name(label.witness->sigma)) + ", scale " +
               to_string(label.witness->scale);
    return out;
}

int cmd_analyze(const std::vector<std::string>& abc, int order, bool json_mode, const std::string& out_file) {
    const LVSystem s = parse_system(abc);
    log_line("analyzing (" + to_string(s.a()) + ", " + to_string(s.b()) + ", " + to_string(s.c()) + ")");
    const AnalyzeResult res = analyze(s, order);

    std::ostringstream text;
    text << "system (" << to_string(s.a()) << ", " << to_string(s.b()) << ", " << to_string(s.c()) << ")\n";
    text << "casimir degree a-b+c: " << to_string(s.casimir_degree()) << "\n";
    text << "class: " << label_text(res.label) << "\n";
    if (!res.label.note.empty()) text << "note: " << res.label.note << "\n";
    text << "integer exponents: " << (res.verdict.all_integer_exponents ? "yes" : "no") << "\n";
    for (const ComponentSummary& summary : res.verdict.report) {
        if (summary.component.kind == IndicialComponent::Kind::Line) {
            text << "  line through (" << to_string(summary.component.point.coords[0]) << ", "
                 << to_string(summary.component.point.coords[1]) << ", "
                 << to_string(summary.component.point.coords[2]) << ")";
        } else {
            text << "  point (" << to_string(summary.component.point.coords[0]) << ", "
                 << to_string(summary.component.point.coords[1]) << ", "
                 << to_string(summary.component.point.coords[2]) << ")";
        }
        text << "  exponents {" << exponents_text(summary.spectrum) << "}";
        if (res.verdict.all_integer_exponents) {
            text << "  free parameters at steps {";
            for (size_t i = 0; i < summary.free_parameter_steps.size(); ++i)
                text << (i ? ", " : "") << summary.free_parameter_steps[i];
            text << "}";
            if (summary.obstructed_at) text << "  OBSTRUCTED at step " << *summary.obstructed_at;
        }
        text << "\n";
    }
    text << (res.verdict.is_aci ? "algebraically completely integrable (2 free parameters)\n"
                                : "not algebraically completely integrable\n");
    emit(res.report, json_mode, out_file, text.str());

    if (res.label.kind == ClassKind::Degenerate) return kExitDegenerate;
    return res.verdict.is_aci ? kExitOk : kExitNotAci;
}

int cmd_scan(int max_abs, bool json_mode, const std::string& out_file) {
    log_line("scanning integer triples up to " + std::to_string(max_abs));
    const ScanResult res = scan(max_abs);

    std::ostringstream text;
    text << "triples: " << res.triples_seen << ", orbits: " << res.rows.size() << "\n";
    for (const ScanRow& row : res.rows) {
        text << "  (" << to_string(row.rep.a()) << ", " << to_string(row.rep.b()) << ", "
             << to_string(row.rep.c()) << ")  " << label_text(row.label) << "  aci=" << (row.is_aci ? "yes" : "no")
             << (row.agrees ? "" : "  DISAGREEMENT") << "\n";
    }
    text << "histogram:";
    for (const auto& [k, v] : res.histogram) text << " " << k << "=" << v;
    text << "\n";
    emit(res.report, json_mode, out_file, text.str());

    if (!res.all_agree) {
        std::cerr << "classifier and Laurent engine disagree on at least one orbit\n";
        return kExitFail;
    }
    return kExitOk;
}

int cmd_verify(const std::vector<std::string>& abc, const std::string& x0_str, double t_end, double h,
               double drift_tol, bool json_mode, const std::string& out_file) {
    const LVSystem s = parse_system(abc);
    RealVec3 x0{};
    {
        std::stringstream ss(x0_str);
        std::string tok;
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ss, tok, ',')) throw std::invalid_argument("--x0 expects v1,v2,v3");
            x0[static_cast<size_t>(i)] = std::stold(tok);  // throws on garbage
        }
    }
    log_line("integrating to t=" + std::to_string(t_end) + " with h=" + std::to_string(h));

    Json j;
    j["input"] = Json{{"a", to_string(s.a())}, {"b", to_string(s.b())}, {"c", to_string(s.c())}};
    j["x0"] = Json::array({round_trip(x0[0]), round_trip(x0[1]), round_trip(x0[2])});
    j["t_end"] = t_end;
    j["h"] = h;
    std::ostringstream text;
    bool pass = true;

    const Trajectory traj = integrate(s, x0, static_cast<Real>(t_end), static_cast<Real>(h));
    if (!traj.regular()) {
        j["blow_up_time"] = round_trip(*traj.blow_up_time);
        if (const auto slope = estimate_pole_order(traj)) j["pole_order_estimate"] = round_trip(-*slope);
        text << "blow-up at t = " << static_cast<double>(*traj.blow_up_time) << "\n";
        emit(j, json_mode, out_file, text.str());
        return kExitBlowUp;
    }

    const DriftReport drift = drift_report(s, traj);
    j["drift"] = Json{{"h_drift", round_trip(drift.h_drift)},
                      {"f_drift", round_trip(drift.f_drift)},
                      {"valid_region", drift.valid_region}};
    j["richardson_error"] = round_trip(richardson_error(s, x0, static_cast<Real>(t_end), static_cast<Real>(h)));
    text << "H drift: " << static_cast<double>(drift.h_drift) << "\n";
    text << "F drift: " << static_cast<double>(drift.f_drift)
         << (drift.valid_region ? "" : " (left the positive orthant)") << "\n";
    if (drift.h_drift > drift_tol || (drift.valid_region && drift.f_drift > drift_tol)) pass = false;

    const ACIVerdict verdict = aci_test(s, 8);
    if (verdict.is_aci) {
        std::vector<Rational> params(static_cast<size_t>(verdict.witness->param_count()), Rational(1));
        const Real err = laurent_vs_numeric(s, *verdict.witness, params, {1e-2L, 2e-2L});
        j["laurent"] = Json{{"max_rel_error", round_trip(err)},
                            {"order", verdict.witness->truncation_order},
                            {"offsets", Json::array({1e-2, 2e-2})}};
        text << "laurent-vs-numeric max rel error: " << static_cast<double>(err) << "\n";
        if (err > 1e-3L) pass = false;
    }

    if (s.a() == -1 && s.b() == 1 && s.c() == -1) {
        // periodic KM extras: exact Lax identity and the H3 invariant
        bool lax_zero = true;
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
        for (int trial = 0; trial < 16; ++trial) {
            const RatVec3 x = {make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)),
                               make_rational(num(rng), den(rng))};
            if (!is_zero_mat(lax_residual_km(x))) lax_zero = false;
        }
        Real h3_drift = 0;
        const Real h3_0 = km_h3(traj.states.front());
        for (const RealVec3& x : traj.states)
            h3_drift = std::max(h3_drift, std::fabs(km_h3(x) - h3_0) / std::max(std::fabs(h3_0), Real(1)));
        j["km_lax"] = Json{{"residual_zero", lax_zero}, {"h3_drift", round_trip(h3_drift)}};
        text << "KM Lax residual identically zero: " << (lax_zero ? "yes" : "no") << "\n";
        text << "H3 drift: " << static_cast<double>(h3_drift) << "\n";
        if (!lax_zero || h3_drift > drift_tol) pass = false;
    }

    if (s.b() == s.a() + s.c() && s.a() != 0 && x0[2] != 0) {
        // b = a + c: compare against the closed-form solution fitted at t = 0
        const Real ar = to_long_double(s.a()), cr = to_long_double(s.c());
        const Real k = x0[0] + x0[1] + x0[2];
        if (k != 0) {
            const Real c1 = ar * x0[0] / x0[2];
            const Real c2 = c1 + ar - k * ar / x0[2];
            Real worst = 0;
            bool hit_pole = false;
            for (size_t i = 0; i < traj.states.size(); ++i) {
                try {
                    const RealVec3 cf = closed_form_solution(ar, cr, k, c1, c2, traj.times[i]);
                    for (int d = 0; d < 3; ++d)
                        worst = std::max(worst, std::fabs(traj.states[i][static_cast<size_t>(d)] - cf[static_cast<size_t>(d)]) /
                                                    std::max(std::fabs(cf[static_cast<size_t>(d)]), Real(1e-12L)));
                } catch (const PoleAtError&) {
                    hit_pole = true;
                }
            }
            j["closed_form"] = Json{{"max_rel_error", round_trip(worst)}, {"hit_pole", hit_pole}};
            text << "closed-form max rel error: " << static_cast<double>(worst) << "\n";
            if (hit_pole || worst > 1e-6L) pass = false;
        }
    }

    j["pass"] = pass;
    j["drift_tolerance"] = drift_tol;
    text << (pass ? "PASS\n" : "FAIL\n");
    emit(j, json_mode, out_file, text.str());
    return pass ? kExitOk : kExitFail;
}

int cmd_lemmas(long long bound, bool json_mode, const std::string& out_file) {
    const PairSet l1 = lemma1_solutions(bound), l1c = lemma1_closed_form(bound);
    const PairSet l2 = lemma2_solutions(bound), l2c = lemma2_closed_form(bound);
    const bool ok = l1 == l1c && l2 == l2c;

    auto pairs_json = [](const PairSet& ps) {
        Json arr = Json::array();
        for (const auto& [x, y] : ps) arr.push_back(Json::array({x, y}));
        return arr;
    };
    Json j;
    j["bound"] = bound;
    j["lemma1"] = pairs_json(l1);
    j["lemma2"] = pairs_json(l2);
    j["matches_closed_form"] = ok;

    std::ostringstream text;
    text << "lemma 1, (x+y)/(xy-x-y) integer, 1 <= x <= y <= " << bound << ":\n ";
    for (const auto& [x, y] : l1) text << " (" << x << "," << y << ")";
    text << "\nlemma 2, (x-y)/(xy+y-x) integer, 1 <= x,y <= " << bound << ":\n ";
    for (const auto& [x, y] : l2) text << " (" << x << "," << y << ")";
    text << "\nclosed forms " << (ok ? "match" : "MISMATCH") << "\n";
    emit(j, json_mode, out_file, text.str());
    return ok ? kExitOk : kExitFail;
}

int cmd_normalize(const std::vector<std::string>& abc, bool json_mode, const std::string& out_file) {
    const LVSystem s = parse_system(abc);
    const NormalForm nf = normalize(s);
    Json j;
    j["input"] = Json{{"a", to_string(s.a())}, {"b", to_string(s.b())}, {"c", to_string(s.c())}};
    j["representative"] = to_json(RatVec3{nf.rep.a(), nf.rep.b(), nf.rep.c()});
    j["witness"] = to_json(nf.g);
    std::ostringstream text;
    text << "(" << to_string(nf.rep.a()) << ", " << to_string(nf.rep.b()) << ", " << to_string(nf.rep.c())
         << ")  via sigma = " << perm_name(nf.g.sigma) << ", scale " << to_string(nf.g.scale) << "\n";
    emit(j, json_mode, out_file, text.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebraic complete integrability of 3D skew Lotka-Volterra systems"};
    app.require_subcommand(1);

    std::vector<std::string> abc;
    int order = 0;
    bool json_mode = false;
    std::string out_file;

    auto* analyze_cmd = app.add_subcommand("analyze", "exact pipeline for one system (a b c)");
    analyze_cmd->add_option("abc", abc, "coefficients a b c as integers or p/q")->expected(3)->required();
    analyze_cmd->add_option("--order", order, "minimum Laurent truncation order");
    analyze_cmd->add_flag("--json", json_mode, "machine-readable report");
    analyze_cmd->add_option("--out", out_file, "write the report to a file");

    int max_abs = 3;
    auto* scan_cmd = app.add_subcommand("scan", "classify all integer triples |a|,|b|,|c| <= M");
    scan_cmd->add_option("--max", max_abs, "box half-width M")->check(CLI::PositiveNumber);
    scan_cmd->add_flag("--json", json_mode, "machine-readable report");
    scan_cmd->add_option("--out", out_file, "write the report to a file");

    std::string x0_str = "1,2,3";
    double t_end = 10.0, h = 1e-3, drift_tol = 1e-8;
    auto* verify_cmd = app.add_subcommand("verify", "numeric conservation and series checks");
    verify_cmd->set_help_flag("--help", "print help");  // frees -h for the step size
    verify_cmd->add_option("abc", abc, "coefficients a b c")->expected(3)->required();
    verify_cmd->add_option("--x0", x0_str, "initial state v1,v2,v3");
    verify_cmd->add_option("--t", t_end, "integration time")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--h", h, "RK4 step")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--tol", drift_tol, "drift tolerance");
    verify_cmd->add_flag("--json", json_mode, "machine-readable report");
    verify_cmd->add_option("--out", out_file, "write the report to a file");

    long long bound = 200;
    auto* lemmas_cmd = app.add_subcommand("lemmas", "Diophantine lemma solution sets");
    lemmas_cmd->add_option("--bound", bound, "search bound")->check(CLI::PositiveNumber);
    lemmas_cmd->add_flag("--json", json_mode, "machine-readable report");
    lemmas_cmd->add_option("--out", out_file, "write the report to a file");

    auto* normalize_cmd = app.add_subcommand("normalize", "canonical orbit representative");
    normalize_cmd->add_option("abc", abc, "coefficients a b c")->expected(3)->required();
    normalize_cmd->add_flag("--json", json_mode, "machine-readable report");
    normalize_cmd->add_option("--out", out_file, "write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitArgs;
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(abc, order, json_mode, out_file);
        if (scan_cmd->parsed()) return cmd_scan(max_abs, json_mode, out_file);
        if (verify_cmd->parsed()) return cmd_verify(abc, x0_str, t_end, h, drift_tol, json_mode, out_file);
        if (lemmas_cmd->parsed()) return cmd_lemmas(bound, json_mode, out_file);
        if (normalize_cmd->parsed()) return cmd_normalize(abc, json_mode, out_file);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitArgs;
}
