// Command-line experiment runner for the pbops library.  Each subcommand
// wraps one library operation, emits CSV/JSON with a config-echo header, and
// uses the exit-code convention: 0 success, 2 parameter error, 3 numerical
// budget exhausted.  "reproduce" exits 1 if any acceptance check fails.

#include <chrono>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbops/admissible.hpp"
#include "pbops/criteria.hpp"
#include "pbops/dense_operator.hpp"
#include "pbops/io.hpp"
#include "pbops/l1multiplier.hpp"
#include "pbops/seqdiag.hpp"
#include "pbops/series_ops.hpp"
#include "pbops/volterra.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

/// JSON config files: top-level keys map to long option names of the invoked
/// subcommand ("subcommand.key" also accepted).  Unknown keys are rejected by
/// the parser.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override {
        return "{}\n";
    }
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        input >> j;
        if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
        std::vector<CLI::ConfigItem> out;
        for (const auto& [key, value] : j.items()) {
            CLI::ConfigItem item;
            std::string rest = key;
            for (auto dot = rest.find('.'); dot != std::string::npos; dot = rest.find('.')) {
                item.parents.push_back(rest.substr(0, dot));
                rest = rest.substr(dot + 1);
            }
            item.name = rest;
            if (value.is_array())
                for (const auto& e : value)
                    item.inputs.push_back(e.is_string() ? e.get<std::string>() : e.dump());
            else if (value.is_string())
                item.inputs.push_back(value.get<std::string>());
            else
                item.inputs.push_back(value.dump());
            out.push_back(std::move(item));
        }
        return out;
    }
};

struct OutputSink {
    std::string path; // empty: stdout

    void write(const std::string& body) const {
        if (path.empty()) {
            std::cout << body;
            return;
        }
        std::filesystem::path p(path);
        if (p.is_relative()) {
            if (const char* dir = std::getenv("PBOPS_OUTPUT_DIR")) p = std::filesystem::path(dir) / p;
        }
        pbops::atomic_write(p, body);
        std::cerr << "wrote " << p.string() << "\n";
    }
};

pbops::HeaderMap base_header(const std::string& subcommand,
                             const std::chrono::steady_clock::time_point& start) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    return {{"tool", "pbops"},
            {"version", kVersion},
            {"subcommand", subcommand},
            {"wall_time_ms", std::to_string(ms)}};
}

struct FamilyArgs {
    std::string family;
    int n = 1;
    int m = 2;
    double s = 2.0;
    std::vector<std::string> custom;

    void attach(CLI::App* cmd, const std::string& prefix = "") {
        const std::string p = prefix.empty() ? "" : prefix + "-";
        cmd->add_option("--" + p + "family", family,
                        "function family: zexp|zpow|powdiff|expdiff|expsin|onepow|zexpm|custom")
            ->required();
        cmd->add_option("--" + p + "n", n, "integer parameter n");
        cmd->add_option("--" + p + "m", m, "integer parameter m");
        cmd->add_option("--" + p + "s", s, "real parameter s");
        cmd->add_option("--" + p + "coeffs", custom,
                        "custom polynomial coefficients (rationals, e.g. 0 1 -1/2)");
    }

    pbops::FunctionSpec build() const {
        using pbops::FunctionSpec;
        if (family == "zexp") return FunctionSpec::zexp();
        if (family == "zpow") return FunctionSpec::zpow(n);
        if (family == "powdiff") return FunctionSpec::powdiff(n, m);
        if (family == "expdiff") return FunctionSpec::expdiff(s);
        if (family == "expsin") return FunctionSpec::expsin(s);
        if (family == "onepow") return FunctionSpec::onepow(n);
        if (family == "zexpm") return FunctionSpec::zexpm(m);
        if (family == "custom") {
            std::vector<pbops::Rational> cs;
            for (const auto& c : custom) {
                const auto slash = c.find('/');
                if (slash == std::string::npos)
                    cs.emplace_back(pbops::Integer(c));
                else
                    cs.emplace_back(pbops::Integer(c.substr(0, slash)),
                                    pbops::Integer(c.substr(slash + 1)));
            }
            return FunctionSpec::custom(std::move(cs));
        }
        throw pbops::parameter_error("unknown family: " + family);
    }

    void echo(pbops::HeaderMap& h, const std::string& prefix = "") const {
        const std::string p = prefix.empty() ? "" : prefix + "_";
        h[p + "family"] = family;
        h[p + "n"] = std::to_string(n);
        h[p + "m"] = std::to_string(m);
        h[p + "s"] = pbops::format_double(s);
    }
};

/// Taylor coefficients for the auxiliary factor h of the fixed-point
/// inversion: named series with nonnegative coefficients, materialized as a
/// custom polynomial spec to the working order.
pbops::FunctionSpec build_h_spec(const std::string& name, int n, int order) {
    using pbops::Integer;
    using pbops::Rational;
    std::vector<Rational> cs(static_cast<std::size_t>(order) + 1, Rational(0));
    if (name == "one") {
        cs[0] = 1;
    } else if (name == "exp") {
        for (int k = 0; k <= order; ++k)
            cs[static_cast<std::size_t>(k)] = Rational(1, pbops::factorial(static_cast<unsigned>(k)));
    } else if (name == "geom") { // (1-z)^{-n}
        if (n < 1) throw pbops::parameter_error("h=geom needs n >= 1");
        for (int k = 0; k <= order; ++k)
            cs[static_cast<std::size_t>(k)] =
                Rational(pbops::binomial(Integer(n) + k - 1, static_cast<unsigned>(k)));
    } else {
        throw pbops::parameter_error("unknown h series: " + name + " (expected one|exp|geom)");
    }
    return pbops::FunctionSpec::custom(std::move(cs));
}

pbops::DenseOperator load_or_generate(const std::string& matrix_path, int dim, int n,
                                      std::uint64_t seed, double fraction,
                                      const std::string& norm) {
    pbops::NormKind kind = pbops::NormKind::induced_two;
    if (norm == "one") kind = pbops::NormKind::induced_one;
    else if (norm == "inf") kind = pbops::NormKind::induced_inf;
    else if (norm != "two") throw pbops::parameter_error("norm must be one|two|inf");

    if (!matrix_path.empty()) {
        std::ifstream in(matrix_path);
        if (!in) throw pbops::parameter_error("cannot read matrix file: " + matrix_path);
        std::stringstream ss;
        ss << in.rdbuf();
        pbops::DenseOperator op{pbops::matrix_from_csv(ss.str()), kind, false};
        return op;
    }
    std::mt19937_64 rng(seed);
    const pbops::Matrix upper = pbops::random_strict_upper(dim, rng);
    return pbops::scaled_esterle_instance(upper, n, fraction, kind);
}

std::string classification_name(pbops::ThetaClass c) {
    switch (c) {
        case pbops::ThetaClass::cond1: return "cond1";
        case pbops::ThetaClass::cond2: return "cond2";
        case pbops::ThetaClass::boundary: return "boundary";
        case pbops::ThetaClass::violation: return "violation";
    }
    return "?";
}

} // namespace

int main(int argc, char** argv) {
    using namespace pbops;
    CLI::App app{"pbops: numerical experiments around power-bounded operators"};
    app.require_subcommand(1);
    app.fallthrough(true); // let --output/--seed appear after the subcommand
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON config file; command-line flags take precedence");
    app.set_version_flag("--version", kVersion);

    const auto start = std::chrono::steady_clock::now();
    std::string output_path;
    std::uint64_t seed = 1;
    app.add_option("--output", output_path,
                   "output file (relative paths resolve under $PBOPS_OUTPUT_DIR); default stdout")
        ->configurable(true);
    app.add_option("--seed", seed, "seed for generated instances");

    int exit_code = 0;
    auto sink = [&] { return OutputSink{output_path}; };

    // ---- invert ----------------------------------------------------------
    auto* invert = app.add_subcommand("invert", "compositional inverse series of a family");
    FamilyArgs invert_fam;
    invert_fam.attach(invert);
    int invert_order = 64;
    bool invert_exact = false;
    invert->add_option("--order", invert_order, "truncation order");
    invert->add_flag("--exact", invert_exact, "exact rational coefficients");
    invert->callback([&] {
        const auto spec = invert_fam.build();
        auto header = base_header("invert", start);
        invert_fam.echo(header);
        header["order"] = std::to_string(invert_order);
        header["exact"] = invert_exact ? "true" : "false";
        if (invert_exact) {
            const auto phi = lagrange_invert(spec.taylor<Rational>(invert_order), invert_order);
            sink().write(series_to_csv(phi, header));
        } else {
            const auto phi = lagrange_invert(spec.taylor<double>(invert_order), invert_order);
            sink().write(series_to_csv(phi, header));
        }
    });

    // ---- fixed-point-invert ---------------------------------------------
    auto* fpi = app.add_subcommand("fixed-point-invert",
                                   "inverse of f/h via the contraction iteration");
    FamilyArgs fpi_f;
    fpi_f.attach(fpi, "f");
    std::string fpi_h = "exp";
    int fpi_hn = 1;
    int fpi_order = 16;
    double fpi_tol = 0.0;
    bool fpi_exact = true;
    fpi->add_option("--h-series", fpi_h, "auxiliary series h: one|exp|geom");
    fpi->add_option("--h-n", fpi_hn, "parameter n of h=geom ((1-z)^{-n})");
    fpi->add_option("--order", fpi_order, "truncation order");
    fpi->add_option("--tol", fpi_tol, "stabilization tolerance (floating mode)");
    fpi->add_flag("!--float", fpi_exact, "floating-point mode");
    fpi->callback([&] {
        const auto f = fpi_f.build();
        const auto h = build_h_spec(fpi_h, fpi_hn, fpi_order);
        auto header = base_header("fixed-point-invert", start);
        fpi_f.echo(header, "f");
        header["h_series"] = fpi_h;
        header["order"] = std::to_string(fpi_order);
        if (fpi_exact) {
            const auto psi = fixed_point_invert<Rational>(f, h, fpi_order, fpi_tol);
            sink().write(series_to_csv(psi, header));
        } else {
            const auto psi = fixed_point_invert<double>(f, h, fpi_order, fpi_tol);
            sink().write(series_to_csv(psi, header));
        }
    });

    // ---- admissible ------------------------------------------------------
    auto* adm = app.add_subcommand("admissible", "critical-point and radius report");
    FamilyArgs adm_fam;
    adm_fam.attach(adm);
    int adm_order = 10000;
    double adm_limit = 10.0;
    adm->add_option("--order", adm_order, "series order for the identity partial sum");
    adm->add_option("--search-limit", adm_limit, "critical-point search limit");
    adm->callback([&] {
        const auto spec = adm_fam.build();
        (void)find_critical_xi(spec, adm_limit); // validate the range first
        const auto rep = admissibility_report(spec, adm_order);
        nlohmann::json j{{"family", spec.name()},        {"order", adm_order},
                         {"xi", rep.xi},                 {"f_xi", rep.f_xi},
                         {"radius_est", rep.radius_est}, {"identity_partial", rep.identity_partial},
                         {"residual", rep.residual}};
        sink().write(j.dump(2) + "\n");
    });

    // ---- threshold -------------------------------------------------------
    auto* thr = app.add_subcommand("threshold", "sharp constants and their cross-checks");
    std::string thr_kind;
    int thr_n = 1, thr_m = 2;
    double thr_s = 2.0, thr_c = 2.0;
    bool thr_consistency = false;
    thr->add_option("--kind", thr_kind,
                    "esterle_n|esterle2|power_m|expdiff|sinclair_sin|gorin")
        ->required();
    thr->add_option("--n", thr_n, "parameter n");
    thr->add_option("--m", thr_m, "parameter m");
    thr->add_option("--s", thr_s, "parameter s");
    thr->add_option("--c", thr_c, "parameter c");
    thr->add_flag("--consistency", thr_consistency, "also report the cross-check residual");
    thr->callback([&] {
        ThresholdKind kind = [&] {
            if (thr_kind == "esterle_n") return ThresholdKind::esterle_n(thr_n);
            if (thr_kind == "esterle2") return ThresholdKind::esterle2(thr_n, thr_m);
            if (thr_kind == "power_m") return ThresholdKind::power_m(thr_m);
            if (thr_kind == "expdiff") return ThresholdKind::expdiff(thr_s);
            if (thr_kind == "sinclair_sin") return ThresholdKind::sinclair_sin(thr_s);
            if (thr_kind == "gorin") return ThresholdKind::gorin(thr_c);
            throw parameter_error("unknown threshold kind: " + thr_kind);
        }();
        nlohmann::json j{{"kind", thr_kind}, {"value", threshold(kind)}};
        if (thr_consistency) j["residual"] = threshold_consistency(kind);
        sink().write(j.dump(2) + "\n");
    });

    // ---- sinclair-scan ---------------------------------------------------
    auto* ssc = app.add_subcommand("sinclair-scan", "angular classification scan");
    FamilyArgs ssc_fam;
    ssc_fam.attach(ssc);
    int ssc_thetas = 1024, ssc_tcount = 400;
    double ssc_tmax = 50.0, ssc_margin = 1e-9;
    ssc->add_option("--theta-count", ssc_thetas, "angular grid size");
    ssc->add_option("--t-max", ssc_tmax, "radial grid upper end");
    ssc->add_option("--t-count", ssc_tcount, "radial grid size");
    ssc->add_option("--margin", ssc_margin, "strictness margin");
    ssc->callback([&] {
        const auto scan =
            sinclair_scan(ssc_fam.build(), ssc_thetas, ssc_tmax, ssc_tcount, ssc_margin);
        auto header = base_header("sinclair-scan", start);
        ssc_fam.echo(header);
        header["xi"] = format_double(scan.xi);
        header["f_xi"] = format_double(scan.f_xi);
        header["violations"] = std::to_string(scan.violations);
        header["boundary_count"] = std::to_string(scan.boundary_count);
        std::string body = header_block(header) + "theta,classification\n";
        for (const auto& [theta, cls] : scan.per_theta)
            body += format_double(theta) + "," + classification_name(cls) + "\n";
        sink().write(body);
    });

    // ---- gorin-scan ------------------------------------------------------
    auto* gsc = app.add_subcommand("gorin-scan", "lambda feasibility grid scan");
    int gsc_base = 2, gsc_kmax = 20, gsc_radii = 512, gsc_angles = 4096;
    double gsc_bound = 0.99, gsc_eps = 1e-3;
    std::vector<long long> gsc_q;
    gsc->add_option("--base", gsc_base, "exponents are base^k");
    gsc->add_option("--k-max", gsc_kmax, "largest k");
    gsc->add_option("--bound", gsc_bound, "bound b in |1-lambda^q| <= b");
    gsc->add_option("--q", gsc_q, "explicit exponent list (overrides --base/--k-max)");
    gsc->add_option("--radii", gsc_radii, "radial grid size");
    gsc->add_option("--angles", gsc_angles, "angular grid size");
    gsc->add_option("--eps", gsc_eps, "annulus half-width");
    gsc->callback([&] {
        std::vector<PowerNormConstraint> cs;
        if (!gsc_q.empty()) {
            for (long long q : gsc_q) cs.push_back({q, gsc_bound});
        } else {
            if (gsc_base < 2) throw parameter_error("gorin-scan: base must be >= 2");
            long long q = 1;
            for (int k = 0; k <= gsc_kmax; ++k) {
                cs.push_back({q, gsc_bound});
                q *= gsc_base;
            }
        }
        const auto scan = lambda_feasibility_scan(cs, gsc_radii, gsc_angles, gsc_eps);
        auto header = base_header("gorin-scan", start);
        header["bound"] = format_double(gsc_bound);
        header["feasible_count"] = std::to_string(scan.feasible.size());
        std::string body = header_block(header) + "re_lambda,im_lambda\n";
        for (const auto& lam : scan.feasible)
            body += format_double(lam.real()) + "," + format_double(lam.imag()) + "\n";
        sink().write(body);
    });

    // ---- esterle-verify --------------------------------------------------
    auto* esv = app.add_subcommand("esterle-verify",
                                   "sharp-bound implication check for T = I + nilpotent");
    std::string esv_matrix, esv_norm = "two";
    int esv_n = 1, esv_dim = 8;
    double esv_fraction = 0.9;
    esv->add_option("--matrix", esv_matrix, "matrix CSV (unit diagonal, upper triangular)");
    esv->add_option("--n", esv_n, "power n of the hypothesis");
    esv->add_option("--dim", esv_dim, "dimension of the generated instance");
    esv->add_option("--fraction", esv_fraction, "hypothesis scale for generated instances");
    esv->add_option("--norm", esv_norm, "one|two|inf");
    esv->callback([&] {
        const auto t = load_or_generate(esv_matrix, esv_dim, esv_n, seed, esv_fraction, esv_norm);
        const auto rep = esterle_verify(t, esv_n);
        nlohmann::json j{{"n", esv_n},
                         {"hypothesis_holds", rep.hypothesis_holds},
                         {"conclusion_holds", rep.conclusion_holds},
                         {"diff_norm", rep.diff_norm},
                         {"threshold", rep.threshold},
                         {"t_minus_i_norm", rep.t_minus_i_norm},
                         {"conclusion_bound", rep.conclusion_bound},
                         {"inversion_residual", rep.inversion_residual}};
        sink().write(j.dump(2) + "\n");
    });

    // ---- power-diag ------------------------------------------------------
    auto* pdg = app.add_subcommand("power-diag", "power-norm and scaled-difference sequences");
    std::string pdg_matrix, pdg_norm = "two";
    int pdg_nmax = 100, pdg_dim = 8, pdg_n = 1;
    pdg->add_option("--matrix", pdg_matrix, "matrix CSV; generated if omitted");
    pdg->add_option("--n-max", pdg_nmax, "largest power");
    pdg->add_option("--dim", pdg_dim, "dimension of the generated instance");
    pdg->add_option("--n", pdg_n, "hypothesis power for the generated instance");
    pdg->add_option("--norm", pdg_norm, "one|two|inf");
    pdg->callback([&] {
        const auto t = load_or_generate(pdg_matrix, pdg_dim, pdg_n, seed, 0.9, pdg_norm);
        const auto diag = power_diagnostics(t, pdg_nmax);
        auto header = base_header("power-diag", start);
        header["n_max"] = std::to_string(pdg_nmax);
        header["overflow_truncated"] = diag.overflow_truncated ? "true" : "false";
        std::string body = header_block(header) + "n,norm_Tn,n_diff_norm\n";
        for (std::size_t i = 0; i < diag.power_norms.points.size(); ++i)
            body += format_double(diag.power_norms.points[i].first) + "," +
                    format_double(diag.power_norms.points[i].second) + "," +
                    format_double(diag.scaled_diffs.points[i].second) + "\n";
        sink().write(body);
    });

    // ---- ritt ------------------------------------------------------------
    auto* rit = app.add_subcommand("ritt", "grid lower bound for the Ritt resolvent constant");
    std::string rit_matrix, rit_norm = "two";
    int rit_radii = 64, rit_angles = 256, rit_dim = 8, rit_n = 1;
    rit->add_option("--matrix", rit_matrix, "matrix CSV; generated if omitted");
    rit->add_option("--radii", rit_radii, "radial grid size");
    rit->add_option("--angles", rit_angles, "angular grid size");
    rit->add_option("--dim", rit_dim, "dimension of the generated instance");
    rit->add_option("--n", rit_n, "hypothesis power for the generated instance");
    rit->add_option("--norm", rit_norm, "one|two|inf");
    rit->callback([&] {
        const auto t = load_or_generate(rit_matrix, rit_dim, rit_n, seed, 0.9, rit_norm);
        const auto est = ritt_constant(t, rit_radii, rit_angles);
        nlohmann::json j{{"value", est.value},
                         {"excluded_points", est.excluded_points},
                         {"spectral_radius_warning", est.spectral_radius_warning}};
        sink().write(j.dump(2) + "\n");
    });

    // ---- volterra-limit --------------------------------------------------
    auto* vlm = app.add_subcommand("volterra-limit", "weighted symbol supremum");
    std::string vlm_symbol = "m_alpha";
    double vlm_alpha = 0.5, vlm_t = 1e4;
    vlm->add_option("--symbol", vlm_symbol, "m_alpha|h_composite|real_axis");
    vlm->add_option("--alpha", vlm_alpha, "order of the fractional symbol");
    vlm->add_option("--t", vlm_t, "semigroup time");
    vlm->callback([&] {
        SymbolKind kind = [&] {
            if (vlm_symbol == "m_alpha") return SymbolKind::m_alpha_kind(vlm_alpha);
            if (vlm_symbol == "h_composite") return SymbolKind::h_composite_kind();
            if (vlm_symbol == "real_axis") return SymbolKind::real_axis_kind();
            throw parameter_error("unknown symbol: " + vlm_symbol);
        }();
        const auto s = symbol_sup(kind, vlm_t);
        auto header = base_header("volterra-limit", start);
        header["symbol"] = vlm_symbol;
        header["t"] = format_double(vlm_t);
        std::string body = header_block(header) + "t,sup_value,argmax_xi,arg_at_argmax,boundary\n";
        body += format_double(vlm_t) + "," + format_double(s.sup_value) + "," +
                format_double(s.argmax_xi) + "," + format_double(s.arg_at_argmax) + "," +
                (s.boundary_flag ? "1" : "0") + "\n";
        sink().write(body);
    });

    // ---- volterra-kernel -------------------------------------------------
    auto* vkr = app.add_subcommand("volterra-kernel", "Nystrom kernel matrix");
    std::string vkr_kind = "j_alpha";
    double vkr_alpha = 0.5;
    int vkr_grid = 64;
    vkr->add_option("--kind", vkr_kind, "j_alpha|l_alpha|a_composite");
    vkr->add_option("--alpha", vkr_alpha, "fractional order");
    vkr->add_option("--grid", vkr_grid, "grid size (>= 8)");
    vkr->callback([&] {
        KernelKind kind = [&] {
            if (vkr_kind == "j_alpha") return KernelKind::j_alpha_kind(vkr_alpha);
            if (vkr_kind == "l_alpha") return KernelKind::l_alpha_kind(vkr_alpha);
            if (vkr_kind == "a_composite") return KernelKind::a_composite_kind();
            throw parameter_error("unknown kernel kind: " + vkr_kind);
        }();
        const auto op = build_kernel(kind, vkr_grid);
        auto header = base_header("volterra-kernel", start);
        header["kind"] = vkr_kind;
        header["grid"] = std::to_string(vkr_grid);
        sink().write(matrix_to_csv(op.op.mat, header));
    });

    // ---- semigroup-curve -------------------------------------------------
    auto* sgc = app.add_subcommand("semigroup-curve", "t ||K exp(tK)|| over a list of t");
    std::string sgc_kind = "a_composite", sgc_norm = "two";
    double sgc_alpha = 0.5;
    int sgc_grid = 128;
    std::vector<double> sgc_t{50.0, 100.0, 200.0, 500.0};
    sgc->add_option("--kind", sgc_kind, "j_alpha|l_alpha|a_composite");
    sgc->add_option("--alpha", sgc_alpha, "fractional order");
    sgc->add_option("--grid", sgc_grid, "grid size");
    sgc->add_option("--t", sgc_t, "time points");
    sgc->add_option("--norm", sgc_norm, "one|two|inf");
    sgc->callback([&] {
        KernelKind kind = [&] {
            if (sgc_kind == "j_alpha") return KernelKind::j_alpha_kind(sgc_alpha);
            if (sgc_kind == "l_alpha") return KernelKind::l_alpha_kind(sgc_alpha);
            if (sgc_kind == "a_composite") return KernelKind::a_composite_kind();
            throw parameter_error("unknown kernel kind: " + sgc_kind);
        }();
        NormKind nk = NormKind::induced_two;
        if (sgc_norm == "one") nk = NormKind::induced_one;
        else if (sgc_norm == "inf") nk = NormKind::induced_inf;
        const auto op = build_kernel(kind, sgc_grid, nk);
        const auto curve = semigroup_norm_curve(op, sgc_t);
        auto header = base_header("semigroup-curve", start);
        header["kind"] = sgc_kind;
        header["grid"] = std::to_string(sgc_grid);
        sink().write(experiment_to_csv(curve, "t", "t_norm_K_exp_tK", header));
    });

    // ---- l1-growth -------------------------------------------------------
    auto* lgr = app.add_subcommand("l1-growth", "L1 norms of the power kernels and log fit");
    std::vector<int> lgr_n{4, 16, 64, 256, 1024};
    double lgr_tol = 1e-3;
    lgr->add_option("--n", lgr_n, "kernel indices (increasing)");
    lgr->add_option("--tol", lgr_tol, "quadrature tolerance");
    lgr->callback([&] {
        const auto g = growth_study(lgr_n, lgr_tol);
        auto header = base_header("l1-growth", start);
        header["fit_slope"] = format_double(g.fit_slope);
        header["fit_intercept"] = format_double(g.fit_intercept);
        header["fit_max_residual"] = format_double(g.fit_max_residual);
        std::string body = header_block(header) + "n,l1_norm,slope_estimate\n";
        for (std::size_t i = 0; i < g.norms.points.size(); ++i) {
            body += format_double(g.norms.points[i].first) + "," +
                    format_double(g.norms.points[i].second) + ",";
            body += (i == 0 ? std::string("") : format_double(g.slope_estimates[i - 1]));
            body += "\n";
        }
        sink().write(body);
    });

    // ---- l1-diff ---------------------------------------------------------
    auto* ldf = app.add_subcommand("l1-diff", "n times the L1 norm of the difference kernels");
    std::vector<int> ldf_n{64, 128, 256, 512, 1024};
    double ldf_tol = 1e-3;
    ldf->add_option("--n", ldf_n, "kernel indices (increasing)");
    ldf->add_option("--tol", ldf_tol, "quadrature tolerance");
    ldf->callback([&] {
        const auto d = diff_study(ldf_n, ldf_tol);
        auto header = base_header("l1-diff", start);
        header["running_max"] = format_double(d.running_max());
        sink().write(experiment_to_csv(d, "n", "n_times_diff_norm", header));
    });

    // ---- seq-diff-bound --------------------------------------------------
    auto* sdb = app.add_subcommand("seq-diff-bound", "difference bound sum for one n");
    int sdb_n = 1;
    bool sdb_breakdown = false;
    sdb->add_option("--n", sdb_n, "index n")->required();
    sdb->add_flag("--breakdown", sdb_breakdown, "emit the per-k term breakdown");
    sdb->callback([&] {
        auto header = base_header("seq-diff-bound", start);
        header["n"] = std::to_string(sdb_n);
        if (sdb_breakdown) {
            TermBreakdown terms;
            const double total = diff_bound_sum(sdb_n, &terms);
            header["total"] = format_double(total);
            std::string body = header_block(header) + "k,term\n";
            for (const auto& [k, v] : terms.terms)
                body += std::to_string(k) + "," + format_double(v) + "\n";
            sink().write(body);
        } else {
            std::string body = header_block(header) + "n,value\n";
            body += std::to_string(sdb_n) + "," + format_double(diff_bound_sum(sdb_n)) + "\n";
            sink().write(body);
        }
    });

    // ---- seq-proj-bound --------------------------------------------------
    auto* spb = app.add_subcommand("seq-proj-bound", "projection bound sum for one n");
    int spb_n = 1;
    spb->add_option("--n", spb_n, "index n (<= 12)")->required();
    spb->callback([&] {
        auto header = base_header("seq-proj-bound", start);
        header["n"] = std::to_string(spb_n);
        std::string body = header_block(header) + "n,value\n";
        body += std::to_string(spb_n) + "," + format_double(projection_bound_sum(spb_n)) + "\n";
        sink().write(body);
    });

    // ---- reproduce -------------------------------------------------------
    auto* rep = app.add_subcommand("reproduce", "run the acceptance checks for a suite");
    std::string rep_suite = "all";
    rep->add_option("suite", rep_suite, "series|admissible|matrix|volterra|l1|seqdiag|all");
    rep->callback([&] {
        const auto results = run_suite(rep_suite);
        bool all_pass = true;
        for (const auto& c : results) {
            std::cout << (c.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
                      << "): " << c.detail << "\n";
            all_pass = all_pass && c.pass;
        }
        if (!all_pass) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
            e.get_name() == "CallForVersion")
            return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        std::cerr << "budget error: " << e.what() << " (partial value " << e.partial_value
                  << ")\n";
        return 3;
    } catch (const parameter_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
