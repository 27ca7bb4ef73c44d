#include "mcres/report.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "mcres/error.hpp"
#include "mcres/generate.hpp"
#include "mcres/resistance.hpp"
#include "mcres/rng.hpp"

namespace mcres {

namespace {

struct TolField {
    std::string_view name;
    double Tolerances::*field;
};

constexpr std::array kTolFields{
    TolField{"pivot", &Tolerances::pivot},
    TolField{"row_sum_input", &Tolerances::row_sum_input},
    TolField{"row_sum", &Tolerances::row_sum},
    TolField{"detailed_balance", &Tolerances::detailed_balance},
    TolField{"random_target", &Tolerances::random_target},
    TolField{"sinkhorn", &Tolerances::sinkhorn},
    TolField{"triangle", &Tolerances::triangle},
    TolField{"sum_rule_hypothesis", &Tolerances::sum_rule_hypothesis},
    TolField{"sum_rule", &Tolerances::sum_rule},
    TolField{"stationary", &Tolerances::stationary},
    TolField{"fundamental", &Tolerances::fundamental},
    TolField{"group_inverse_axioms", &Tolerances::group_inverse_axioms},
    TolField{"representation", &Tolerances::representation},
    TolField{"hitting_oracle", &Tolerances::hitting_oracle},
    TolField{"kirchhoff", &Tolerances::kirchhoff},
    TolField{"eigentime", &Tolerances::eigentime},
    TolField{"eigentime_imag", &Tolerances::eigentime_imag},
    TolField{"multiplicative", &Tolerances::multiplicative},
    TolField{"additive_bound", &Tolerances::additive_bound},
    TolField{"foster", &Tolerances::foster},
    TolField{"forest_pi", &Tolerances::forest_pi},
    TolField{"forest_hitting", &Tolerances::forest_hitting},
    TolField{"forest_omega", &Tolerances::forest_omega},
    TolField{"mc_sigmas", &Tolerances::mc_sigmas},
};

Json to_json(const DenseMatrix& m) {
    auto rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

std::vector<std::string> state_labels(const StochasticMatrix& p) {
    if (!p.labels().empty()) return p.labels();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < p.size(); ++i) labels.push_back(std::to_string(i + 1));
    return labels;
}

Json chain_json(const StochasticMatrix& p) {
    Json c;
    c["n"] = p.size();
    c["states"] = state_labels(p);
    c["P"] = to_json(p.matrix());
    return c;
}

Json ergodicity_json(const ErgodicityReport& e) {
    Json j;
    j["strongly_connected"] = e.strongly_connected;
    j["period"] = e.period;
    j["is_ergodic"] = e.is_ergodic;
    j["is_doubly_stochastic"] = e.is_doubly_stochastic;
    if (e.is_reversible) j["is_reversible"] = *e.is_reversible;
    return j;
}

Json metric_json(const MetricReport& m) {
    Json j;
    j["nonnegative"] = m.nonnegative;
    j["symmetric"] = m.symmetric;
    j["triangle_holds"] = m.triangle_holds;
    j["worst_triple"] = {m.worst_triple[0] + 1, m.worst_triple[1] + 1, m.worst_triple[2] + 1};
    j["worst_violation"] = m.worst_violation;
    return j;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

// Absolute tolerance for quantities of order one, relative beyond that.
Json make_scaled_check(double lhs, double rhs, double tolerance) {
    return make_check(lhs, rhs, tolerance * std::max(1.0, std::abs(rhs)));
}

bool is_check(const Json& j) {
    return j.is_object() && j.size() == 5 && j.contains("lhs") && j.contains("rhs") && j.contains("abs_err") &&
           j.contains("tolerance") && j.contains("pass");
}

Json chain_checks(const StochasticMatrix& p, const ChainAnalysis& a, const Tolerances& tol) {
    const ChainResiduals r = chain_residuals(p, a);
    Json c;
    c["stationary_balance"] = make_residual_check(r.stationary, tol.stationary);
    c["stationary_normalisation"] = make_residual_check(r.pi_sum, tol.stationary);
    c["fundamental_inverse"] = make_residual_check(r.fundamental_inverse, tol.fundamental);
    c["fundamental_is_pi_plus_group_inverse"] = make_residual_check(r.f_equals_pi_plus_d, tol.stationary);
    c["fundamental_row_sums"] = make_residual_check(r.f_row_sums, tol.fundamental);
    c["group_inverse_row_sums"] = make_residual_check(r.d_row_sums, tol.fundamental);
    c["pi_fundamental_is_pi"] = make_residual_check(r.pi_f, tol.fundamental);
    c["pi_group_inverse_is_zero"] = make_residual_check(r.pi_d, tol.fundamental);
    c["group_inverse_axiom_ada"] = make_residual_check(r.axiom_ada, tol.group_inverse_axioms);
    c["group_inverse_axiom_dad"] = make_residual_check(r.axiom_dad, tol.group_inverse_axioms);
    c["group_inverse_axiom_commute"] = make_residual_check(r.axiom_commute, tol.group_inverse_axioms);
    const double kemeny_scale = std::max(1.0, a.kemeny);
    c["random_target"] = make_residual_check(r.random_target, tol.random_target * kemeny_scale);
    c["kemeny_is_trace_group_inverse"] = make_check(a.kemeny, trace(a.group_inverse), tol.random_target * kemeny_scale);
    const DenseMatrix oracle = hitting_times_oracle(p, tol);
    c["hitting_times_vs_first_step_oracle"] = make_residual_check(
        max_abs_diff(a.hitting, oracle), tol.hitting_oracle * std::max(1.0, a.hitting.max_abs()));
    return c;
}

}  // namespace

Json make_check(double lhs, double rhs, double tolerance) {
    const double err = std::abs(lhs - rhs);
    Json c;
    c["lhs"] = lhs;
    c["rhs"] = rhs;
    c["abs_err"] = err;
    c["tolerance"] = tolerance;
    c["pass"] = err <= tolerance;
    return c;
}

Json make_residual_check(double residual, double tolerance) { return make_check(residual, 0.0, tolerance); }

Json make_bound_check(double lhs, double rhs, double tolerance) {
    const double excess = std::max(0.0, lhs - rhs);
    Json c;
    c["lhs"] = lhs;
    c["rhs"] = rhs;
    c["abs_err"] = excess;
    c["tolerance"] = tolerance;
    c["pass"] = excess <= tolerance;
    return c;
}

bool all_checks_pass(const Json& doc) {
    if (is_check(doc)) return doc["pass"].get<bool>();
    if (doc.is_object()) {
        if (doc.contains("error")) return false;
        return std::all_of(doc.begin(), doc.end(), [](const Json& v) { return all_checks_pass(v); });
    }
    if (doc.is_array()) return std::all_of(doc.begin(), doc.end(), [](const Json& v) { return all_checks_pass(v); });
    return true;
}

bool apply_tolerance_override(Tolerances& tol, std::string_view name, double value) {
    for (const auto& f : kTolFields) {
        if (f.name == name) {
            tol.*(f.field) = value;
            return true;
        }
    }
    return false;
}

std::vector<std::string_view> tolerance_names() {
    std::vector<std::string_view> names;
    for (const auto& f : kTolFields) names.push_back(f.name);
    return names;
}

Json analyze_report(const StochasticMatrix& p, const AnalyzeOptions& opts) {
    const Tolerances& tol = opts.tol;
    const std::size_t n = p.size();
    const double nd = static_cast<double>(n);

    const ErgodicityReport erg = check_ergodicity(p, tol);
    Json doc;
    doc["command"] = "analyze";
    doc["chain"] = chain_json(p);
    doc["ergodicity"] = ergodicity_json(erg);
    if (!erg.is_ergodic) {
        throw Error(ErrorKind::NotErgodic, erg.strongly_connected ? "chain has period " + std::to_string(erg.period)
                                                                  : std::string("chain is reducible"));
    }
    const bool reversible = erg.is_reversible.value_or(false);

    const ChainAnalysis a = analyze(p, tol);
    doc["pi"] = a.pi;
    doc["t_av"] = a.kemeny;
    doc["fundamental"] = to_json(a.fundamental);
    doc["group_inverse"] = to_json(a.group_inverse);
    doc["hitting_times"] = to_json(a.hitting);

    Json checks;
    checks["chain"] = chain_checks(p, a, tol);

    const ResistanceMatrix omega = omega_from_fundamental(a.fundamental);
    Json omegas;
    Json rep_checks;
    omegas["fundamental"] = to_json(omega.matrix());
    const auto compare = [&](const ResistanceMatrix& other) {
        omegas[std::string(to_string(other.method()))] = to_json(other.matrix());
        rep_checks[std::string(to_string(other.method())) + "_vs_fundamental"] =
            make_residual_check(max_abs_diff(other.matrix(), omega.matrix()), tol.representation);
    };
    compare(omega_from_group_inverse(a.group_inverse));
    compare(omega_from_hitting(a.hitting, a.pi));
    if (erg.is_doubly_stochastic) compare(omega_from_commute(a.hitting, true));
    if (n <= opts.forest_cap) compare(omega_from_forest(enumerate_forests(p, opts.forest_cap)));
    doc["omega"] = std::move(omegas);
    checks["representations"] = std::move(rep_checks);

    const MetricReport metric = metric_check(omega, tol);
    doc["metric"] = metric_json(metric);
    doc["sqrt_omega_metric"] = metric_json(metric_check(sqrt_entries(omega), tol));
    Json metric_checks;
    metric_checks["semimetric_positive_off_diagonal"] = make_residual_check(metric.nonnegative ? 0.0 : 1.0, 0.0);
    metric_checks["semimetric_symmetric"] = make_residual_check(metric.symmetric ? 0.0 : 1.0, 0.0);
    if (erg.is_doubly_stochastic) {
        metric_checks["triangle_inequality_doubly_stochastic"] =
            make_bound_check(metric.worst_violation, 0.0, tol.triangle);
    }
    checks["metric"] = std::move(metric_checks);

    const KirchhoffReport k = kirchhoff_indices(omega, a.pi, a.kemeny);
    Json kj;
    kj["kirchhoff"] = k.kirchhoff;
    kj["multiplicative"] = k.multiplicative;
    kj["additive"] = k.additive;
    kj["additive_lower"] = k.additive_lower;
    kj["additive_upper"] = k.additive_upper;
    doc["kirchhoff"] = std::move(kj);

    Json kc;
    kc["kirchhoff_is_2n_t_av"] = make_scaled_check(k.kirchhoff, 2.0 * nd * a.kemeny, tol.kirchhoff);
    if (opts.eigentime) {
        const ComplexSpectrum spectrum = eigenvalues(p.matrix(), tol);
        auto sj = Json::array();
        for (const auto& z : spectrum) sj.push_back({z.real(), z.imag()});
        doc["spectrum"] = std::move(sj);
        const std::complex<double> eig = eigentime_sum(spectrum);
        doc["eigentime_sum"] = {eig.real(), eig.imag()};
        kc["kirchhoff_eigentime"] = make_scaled_check(k.kirchhoff, 2.0 * nd * eig.real(), tol.eigentime);
        kc["eigentime_imaginary_residue"] = make_residual_check(std::abs(eig.imag()), tol.eigentime_imag);
    }
    kc["multiplicative_trace_formula"] = make_scaled_check(k.multiplicative, multiplicative_kirchhoff_trace(a), tol.multiplicative);
    kc["additive_lower_bound"] =
        make_bound_check(k.additive_lower, k.additive, tol.additive_bound * std::max(1.0, k.additive));
    kc["additive_upper_bound"] =
        make_bound_check(k.additive, k.additive_upper, tol.additive_bound * std::max(1.0, k.additive_upper));
    checks["kirchhoff"] = std::move(kc);

    Json sr;
    const SumRuleResult stat = sum_rule(stationary_sum_rule_pair(a), omega, a.fundamental, tol);
    sr["stationary_pair"] = make_check(stat.lhs, stat.rhs, tol.sum_rule * (1.0 + std::abs(stat.lhs)));
    checks["sum_rule"] = std::move(sr);

    if (reversible) {
        Json fc;
        for (unsigned m = 1; m <= 3; ++m) {
            const FosterResult fr = foster_sum(p, omega, m, a, tol);
            fc["trace_formula_m" + std::to_string(m)] = make_scaled_check(fr.lhs, fr.rhs, tol.foster);
            fc["index_order_m" + std::to_string(m)] = make_scaled_check(fr.lhs, fr.lhs_transposed, tol.foster);
        }
        if (erg.is_doubly_stochastic) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) s += p(i, j) * omega(i, j);
            fc["first_formula_2_n_minus_1"] = make_scaled_check(s, 2.0 * (nd - 1.0), tol.foster);
        }
        checks["foster"] = std::move(fc);
    } else {
        doc["foster_skipped"] = "chain is not reversible";
    }

    if (opts.simulation) {
        doc["simulation"] = simulate_report(p, {}, *opts.simulation, tol);
    }

    doc["checks"] = std::move(checks);
    doc["all_pass"] = all_checks_pass(doc);
    return doc;
}

Json sumrule_report(const StochasticMatrix& p, std::size_t trials, std::uint64_t seed, const Tolerances& tol) {
    const ErgodicityReport erg = check_ergodicity(p, tol);
    if (!erg.is_ergodic) throw Error(ErrorKind::NotErgodic, "sum rules need an ergodic chain");
    const ChainAnalysis a = analyze(p, tol);
    const ResistanceMatrix omega = omega_from_fundamental(a.fundamental);
    const std::size_t n = p.size();

    Json doc;
    doc["command"] = "sumrule";
    doc["chain"] = chain_json(p);
    doc["trials"] = trials;
    doc["seed"] = seed;

    const auto relative_check = [&](const SumRuleResult& r) {
        return make_check(r.lhs, r.rhs, tol.sum_rule * (1.0 + std::abs(r.lhs)));
    };

    Json checks;
    if (trials > 0) {
        double max_abs_err = 0.0;
        double worst_ratio = -1.0;
        std::size_t failures = 0;
        Json worst;
        for (std::size_t t = 0; t < trials; ++t) {
            const SumRulePair pair = make_sum_rule_pair(n, derive_seed(seed, t), tol);
            const SumRuleResult r = sum_rule(pair, omega, a.fundamental, tol);
            const double err = std::abs(r.lhs - r.rhs);
            const double bound = tol.sum_rule * (1.0 + std::abs(r.lhs));
            max_abs_err = std::max(max_abs_err, err);
            if (err > bound) ++failures;
            if (err / bound > worst_ratio) {
                worst_ratio = err / bound;
                worst = relative_check(r);
                doc["random_worst_trial"] = t;
            }
        }
        doc["random_max_abs_err"] = max_abs_err;
        doc["random_failures"] = failures;
        checks["random_pairs_worst"] = std::move(worst);
    }

    checks["stationary_pair"] = relative_check(sum_rule(stationary_sum_rule_pair(a), omega, a.fundamental, tol));
    if (erg.is_reversible.value_or(false)) {
        for (unsigned m = 1; m <= 3; ++m) {
            checks["power_pair_m" + std::to_string(m)] =
                relative_check(sum_rule(power_sum_rule_pair(p, a, m), omega, a.fundamental, tol));
        }
    } else {
        doc["power_pairs_skipped"] = "K = P^m needs a reversible chain for M(K - I) to be symmetric";
    }

    doc["checks"] = std::move(checks);
    doc["all_pass"] = all_checks_pass(doc);
    return doc;
}

Json forest_report(const StochasticMatrix& p, std::size_t cap, const Tolerances& tol) {
    const ForestWeights fw = enumerate_forests(p, cap);
    const ChainAnalysis a = analyze(p, tol);

    Json doc;
    doc["command"] = "forest-verify";
    doc["chain"] = chain_json(p);
    doc["q_roots"] = fw.q_roots;
    doc["q_total"] = fw.q_total;
    doc["f"] = to_json(fw.f);

    const ResistanceMatrix omega = omega_from_fundamental(a.fundamental);
    Json checks;
    checks["pi"] = make_residual_check(max_abs_diff(forest_stationary(fw), a.pi), tol.forest_pi);
    checks["hitting_times"] = make_residual_check(max_abs_diff(forest_hitting_times(fw), a.hitting), tol.forest_hitting);
    checks["omega"] = make_residual_check(max_abs_diff(omega_from_forest(fw).matrix(), omega.matrix()), tol.forest_omega);
    doc["checks"] = std::move(checks);
    doc["all_pass"] = all_checks_pass(doc);
    return doc;
}

Json simulate_report(const StochasticMatrix& p, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                     const SimConfig& cfg, const Tolerances& tol) {
    const ChainAnalysis a = analyze(p, tol);
    const ResistanceMatrix omega = omega_from_fundamental(a.fundamental);
    const std::size_t n = p.size();

    std::vector<std::pair<std::size_t, std::size_t>> todo = pairs;
    if (todo.empty()) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) todo.emplace_back(i, j);
    }

    Json doc;
    doc["command"] = "simulate";
    doc["chain"] = chain_json(p);
    doc["seed"] = cfg.seed;
    doc["replicas"] = cfg.replicas;
    doc["sigma_band"] = tol.mc_sigmas;

    auto items = Json::array();
    for (const auto& [i, j] : todo) {
        if (i >= n || j >= n) throw Error(ErrorKind::InvalidArgument, "pair index out of range");
        Json item;
        item["i"] = i + 1;
        item["j"] = j + 1;
        try {
            const HittingEstimate e = estimate_omega(p, i, j, a.pi, cfg);
            item["std_error"] = e.std_error;
            // i == j is exact: no simulation, zero band.
            item["check"] = make_check(e.mean, omega(i, j), tol.mc_sigmas * e.std_error);
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::MaxStepsExceeded) throw;
            item["error"] = err.what();
        }
        items.push_back(std::move(item));
    }
    doc["pairs"] = std::move(items);
    doc["all_pass"] = all_checks_pass(doc);
    return doc;
}

Json counterexample_report(const Tolerances& tol) {
    const StochasticMatrix p = birth_death_counterexample();
    const ChainAnalysis a = analyze(p, tol);
    const ResistanceMatrix omega = omega_from_fundamental(a.fundamental);
    const MetricReport metric = metric_check(omega, tol);

    const double split = omega(0, 1) + omega(1, 2);
    Json doc;
    doc["command"] = "counterexample";
    doc["chain"] = chain_json(p);
    doc["ergodicity"] = ergodicity_json(check_ergodicity(p, tol));
    doc["pi"] = a.pi;
    doc["omega"] = to_json(omega.matrix());
    doc["omega_13"] = omega(0, 2);
    doc["omega_12_plus_omega_23"] = split;
    doc["triangle_gap"] = omega(0, 2) - split;
    doc["metric"] = metric_json(metric);

    const std::vector<double> expected_pi{5.0 / 11.0, 1.0 / 11.0, 5.0 / 11.0};
    Json checks;
    checks["pi_is_5_1_5_over_11"] = make_residual_check(max_abs_diff(a.pi, expected_pi), 1e-12);
    checks["omega_13_is_20"] = make_check(omega(0, 2), 20.0, 1e-9);
    checks["omega_12_plus_23_is_140_over_11"] = make_check(split, 140.0 / 11.0, 1e-9);
    checks["triangle_gap_is_80_over_11"] = make_check(omega(0, 2) - split, 80.0 / 11.0, 1e-9);
    checks["worst_violation_is_80_over_11"] = make_check(metric.worst_violation, 80.0 / 11.0, 1e-9);
    doc["checks"] = std::move(checks);
    doc["all_pass"] = all_checks_pass(doc) && !metric.triangle_holds &&
                      metric.worst_triple == std::array<std::size_t, 3>{0, 1, 2};
    return doc;
}

namespace {

std::string fmt_number(const Json& v) {
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
    return buf;
}

std::string fmt_scalar(const Json& v) {
    if (v.is_number()) return fmt_number(v);
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

bool is_numeric_row(const Json& v) {
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_number(); });
}

bool is_matrix(const Json& v) {
    return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), is_numeric_row) && v.front().size() > 0;
}

std::string join_row(const Json& row) {
    std::string out;
    for (const auto& x : row) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%13s", fmt_number(x).c_str());
        out += buf;
    }
    return out;
}

void render(const Json& v, const std::string& key, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string label = key.empty() ? "" : key + ": ";
    if (is_check(v)) {
        out += pad + label + (v["pass"].get<bool>() ? "PASS" : "FAIL") + "  lhs=" + fmt_number(v["lhs"]) +
               " rhs=" + fmt_number(v["rhs"]) + " abs_err=" + fmt_number(v["abs_err"]) +
               " tol=" + fmt_number(v["tolerance"]) + "\n";
    } else if (is_matrix(v)) {
        out += pad + label + "\n";
        for (const auto& row : v) out += pad + "  " + join_row(row) + "\n";
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_structured(); })) {
        std::string items;
        for (const auto& x : v) items += (items.empty() ? "" : ", ") + fmt_scalar(x);
        out += pad + label + "[" + items + "]\n";
    } else if (v.is_array()) {
        out += pad + label + "\n";
        for (const auto& x : v) render(x, "-", depth + 1, out);
    } else if (v.is_object()) {
        if (!key.empty()) out += pad + key + ":\n";
        for (auto it = v.begin(); it != v.end(); ++it) render(it.value(), it.key(), key.empty() ? depth : depth + 1, out);
    } else {
        out += pad + label + fmt_scalar(v) + "\n";
    }
}

}  // namespace

std::string render_human(const Json& doc) {
    std::string out;
    render(doc, "", 0, out);
    return out;
}

}  // namespace mcres
