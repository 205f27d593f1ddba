// Command-line interface to the Hellmann-potential bound-state toolkit.
//
// Exit codes: 0 success, 2 invalid parameters, 3 no bound state,
// 4 convergence failure, 5 golden-table tolerance failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hellmann/analysis.hpp"
#include "hellmann/analytic.hpp"
#include "hellmann/model.hpp"
#include "hellmann/numerov.hpp"
#include "hellmann/report.hpp"
#include "hellmann/rpm.hpp"
#include "hellmann/version.hpp"

using nlohmann::json;
using namespace hellmann;

namespace {

int exit_code_for(errc code)
{
    switch (code) {
        case errc::invalid_parameters:
        case errc::domain_error:
        case errc::unsupported_order:
        case errc::insufficient_coefficients:
        case errc::unnormalized_input:
            return 2;
        case errc::no_bound_state:
            return 3;
        case errc::convergence_failure:
        case errc::grid_too_coarse:
        case errc::state_mismatch:
        case errc::root_divergence:
            return 4;
    }
    return 2;
}

struct OutputOptions {
    std::string format = "json";
    std::string output_path;
    bool no_timestamp = false;
};

void add_output_options(CLI::App* cmd, OutputOptions& out)
{
    cmd->add_option("--format", out.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "md"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", out.output_path, "Write the document to a file instead of stdout");
    cmd->add_flag("--no-timestamp", out.no_timestamp,
                  "Suppress the timestamp field (byte-identical reruns)");
}

void write_text(const OutputOptions& opt, const std::string& text)
{
    if (opt.output_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') {
            std::cout << '\n';
        }
        return;
    }
    std::ofstream f(opt.output_path, std::ios::binary);
    if (!f) {
        fail(errc::invalid_parameters, "cannot open output file " + opt.output_path);
    }
    f << text;
}

/// Emit one document in the selected projection.  `table` supplies the
/// bespoke tabular CSV/Markdown when the payload has one.
void emit(const OutputOptions& opt, const std::string& schema, const json& config,
          const json& payload, const std::string& title, const SpectrumTable* table = nullptr)
{
    const json doc = report::make_document(schema, config, payload, !opt.no_timestamp);
    if (opt.format == "json") {
        write_text(opt, doc.dump(2) + "\n");
    } else if (opt.format == "csv") {
        write_text(opt, table ? report::spectrum_csv(*table) : report::to_csv(doc));
    } else {
        std::string md = report::to_markdown(doc, title);
        if (table) {
            md += "\n" + report::spectrum_markdown(*table);
        }
        write_text(opt, md);
    }
}

struct PhysicalInput {
    bool enabled = false;
    double A = 1.0;
    double B = 0.0;
    double C = 0.0;
    double hbar2_over_m = 1.0;
};

void add_physical_options(CLI::App* cmd, PhysicalInput& phys)
{
    cmd->add_flag("--physical", phys.enabled,
                  "Interpret input as physical (A, B, C, hbar^2/m); converted to scaled units");
    cmd->add_option("--A", phys.A, "Coulomb strength A (physical mode)");
    cmd->add_option("--B", phys.B, "Screened strength B (physical mode)");
    cmd->add_option("--C", phys.C, "Screening rate C (physical mode)");
    cmd->add_option("--hbar2-over-m", phys.hbar2_over_m, "hbar^2/m (physical mode)");
}

json physical_echo(const PhysicalInput& phys)
{
    return json{{"A", phys.A}, {"B", phys.B}, {"C", phys.C}, {"hbar2_over_m", phys.hbar2_over_m}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bound-state spectroscopy of the Hellmann potential and its exactly "
                 "solvable modified variant"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("hellmann ") + artifact_version);

    int precision_digits = 60;
    app.add_option("--precision-digits", precision_digits,
                   "Working precision for the Riccati-Pade engine")
        ->envname("HELLMANN_PRECISION_DIGITS")
        ->capture_default_str();

    // ---- solve ------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Solve one bound state");
    std::string model = "hellmann";
    std::string method = "numerov";
    double b = 1.0;
    double lambda = 0.01;
    int nu = 1;
    int l = 0;
    std::string state_str;
    double r_max = 0.0;
    int n_points = 0;
    int d_max = 15;
    int displacement = 0;
    double root_tol = 1e-13;
    double seed_energy = 0.0;
    bool have_seed = false;
    std::string rpm_history_path;
    std::string wavefunction_path;
    OutputOptions solve_out;
    PhysicalInput solve_phys;
    solve->add_option("--model", model, "Radial model")
        ->check(CLI::IsMember({"hellmann", "modified"}))
        ->capture_default_str();
    solve->add_option("--method", method, "Solver")
        ->check(CLI::IsMember({"numerov", "rpm", "closed-form", "arda-sever"}))
        ->capture_default_str();
    solve->add_option("--b", b, "Scaled screened strength b = 2B/A")->capture_default_str();
    solve->add_option("--lambda", lambda, "Scaled screening rate")->capture_default_str();
    solve->add_option("--nu", nu, "Principal quantum number")->capture_default_str();
    solve->add_option("--l", l, "Angular momentum")->capture_default_str();
    solve->add_option("--state", state_str, "Spectroscopic label like 2p (overrides --nu/--l)");
    solve->add_option("--r-max", r_max, "Grid override: box size");
    solve->add_option("--n-points", n_points, "Grid override: point count");
    solve->add_option("--rpm-dmax", d_max, "Largest Hankel dimension")->capture_default_str();
    solve->add_option("--rpm-d", displacement, "Hankel displacement d")->capture_default_str();
    solve->add_option("--rpm-root-tol", root_tol, "Relative root tolerance")->capture_default_str();
    solve->add_option("--seed-energy", seed_energy, "Riccati-Pade seed energy override")
        ->each([&](const std::string&) { have_seed = true; });
    solve->add_option("--rpm-history", rpm_history_path, "Write the (D, root, delta) history as CSV");
    solve->add_option("--wavefunction-out", wavefunction_path,
                      "Write the radial function as two-column text (r, R)");
    add_physical_options(solve, solve_phys);
    add_output_options(solve, solve_out);

    // ---- table1 -----------------------------------------------------------
    auto* table1 = app.add_subcommand(
        "table1", "Reproduce the ten-state golden table at b=1, lambda=0.01 (exit 5 on failure)");
    OutputOptions table1_out;
    add_output_options(table1, table1_out);

    // ---- audit ------------------------------------------------------------
    auto* audit = app.add_subcommand(
        "audit", "Run the quantization-condition and exponent sign audits");
    double a_b = 1.0, a_lambda = 0.01;
    int a_l = 0, a_n = 0;
    OutputOptions audit_out;
    audit->add_option("--b", a_b, "Scaled b")->capture_default_str();
    audit->add_option("--lambda", a_lambda, "Scaled lambda")->capture_default_str();
    audit->add_option("--l", a_l, "Angular momentum")->capture_default_str();
    audit->add_option("--n", a_n, "Polynomial degree in the termination condition")
        ->capture_default_str();
    add_output_options(audit, audit_out);

    // ---- census -----------------------------------------------------------
    auto* census = app.add_subcommand("census", "Enumerate the modified-model bound states");
    double c_b = 1.0, c_lambda = 0.01;
    int c_l = -1;
    OutputOptions census_out;
    census->add_option("--b", c_b, "Scaled b")->capture_default_str();
    census->add_option("--lambda", c_lambda, "Scaled lambda")->capture_default_str();
    census->add_option("--l", c_l, "Restrict to one angular momentum (default: all)");
    add_output_options(census, census_out);

    // ---- critical-lambda ----------------------------------------------------
    auto* crit = app.add_subcommand("critical-lambda",
                                    "Screening rate beyond which the modified model binds nothing");
    double k_b = 1.0;
    OutputOptions crit_out;
    crit->add_option("--b", k_b, "Scaled b")->capture_default_str();
    add_output_options(crit, crit_out);

    // ---- bounds -------------------------------------------------------------
    auto* bounds = app.add_subcommand("bounds", "Hellmann-Feynman Coulombic bounds for one nu");
    double bd_b = 1.0;
    int bd_nu = 1;
    OutputOptions bounds_out;
    bounds->add_option("--b", bd_b, "Scaled b")->capture_default_str();
    bounds->add_option("--nu", bd_nu, "Principal quantum number")->capture_default_str();
    add_output_options(bounds, bounds_out);

    // ---- sweep --------------------------------------------------------------
    auto* sweep = app.add_subcommand(
        "sweep", "Approximation error and census along an ascending lambda grid");
    double s_b = 1.0;
    std::vector<double> s_grid{0.001, 0.01, 0.1, 0.5};
    std::vector<std::string> s_labels{"1s"};
    OutputOptions sweep_out;
    sweep->add_option("--b", s_b, "Scaled b")->capture_default_str();
    sweep->add_option("--lambda-grid", s_grid, "Ascending lambda values")->delimiter(',');
    sweep->add_option("--labels", s_labels, "States to track, e.g. 1s,2p")->delimiter(',');
    add_output_options(sweep, sweep_out);

    // ---- hf-check -----------------------------------------------------------
    auto* hf = app.add_subcommand("hf-check",
                                  "Finite-difference check of dE/dlambda = -b <exp(-lambda r)>");
    double h_b = 1.0, h_lambda = 0.01, h_delta = 1e-4;
    int h_nu = 1, h_l = 0;
    OutputOptions hf_out;
    hf->add_option("--b", h_b, "Scaled b")->capture_default_str();
    hf->add_option("--lambda", h_lambda, "Scaled lambda")->capture_default_str();
    hf->add_option("--nu", h_nu, "Principal quantum number")->capture_default_str();
    hf->add_option("--l", h_l, "Angular momentum")->capture_default_str();
    hf->add_option("--delta-lambda", h_delta, "Central-difference step")->capture_default_str();
    add_output_options(hf, hf_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help / --version
        }
        json err{{"error", {{"code", "invalid-parameters"}, {"message", e.what()}, {"exit", 2}}}};
        std::cerr << err.dump(2) << '\n';
        return 2;
    }

    try {
        if (*solve) {
            if (!state_str.empty()) {
                const StateLabel s = parse_state_name(state_str);
                nu = s.nu;
                l = s.l;
            }
            ScaledParams p{b, lambda};
            json config{{"command", "solve"},    {"model", model},
                        {"method", method},      {"b", p.b},
                        {"lambda", p.lambda},    {"nu", nu},
                        {"l", l},                {"format", solve_out.format},
                        {"precision_digits", precision_digits}};
            if (solve_phys.enabled) {
                p = to_scaled(solve_phys.A, solve_phys.B, solve_phys.C, solve_phys.hbar2_over_m);
                config["physical"] = physical_echo(solve_phys);
                config["b"] = p.b;
                config["lambda"] = p.lambda;
            }
            const StateLabel label{nu, l};
            const ModelKind kind =
                model == "hellmann" ? ModelKind::TrueHellmann : ModelKind::Modified;
            std::optional<GridSpec> grid;
            if (r_max > 0.0 || n_points > 0) {
                GridSpec g = numerov::auto_grid(p, kind, label);
                if (r_max > 0.0) {
                    g.r_max = r_max;
                }
                if (n_points > 0) {
                    g.n_points = n_points + n_points % 2;
                }
                grid = g;
                config["grid"] = json{{"r_max", g.r_max}, {"n_points", g.n_points}};
            }

            json payload;
            if (method == "numerov") {
                const auto out = numerov::solve_state_full(p, kind, label, grid,
                                                           !wavefunction_path.empty());
                payload["result"] = report::eigen_json(out.eigen);
                payload["threshold"] = continuum_threshold(p, kind, label.l);
                if (!wavefunction_path.empty()) {
                    std::ostringstream txt;
                    txt.precision(17);
                    for (std::size_t i = 0; i < out.wavefunction.r.size(); ++i) {
                        txt << out.wavefunction.r[i] << ' ' << out.wavefunction.R[i] << '\n';
                    }
                    std::ofstream f(wavefunction_path, std::ios::binary);
                    if (!f) {
                        fail(errc::invalid_parameters,
                             "cannot open wavefunction file " + wavefunction_path);
                    }
                    f << txt.str();
                    payload["wavefunction_file"] = wavefunction_path;
                }
            } else if (method == "rpm") {
                if (kind == ModelKind::Modified) {
                    fail(errc::invalid_parameters,
                         "the Riccati-Pade engine targets the true Hellmann model; use "
                         "closed-form or numerov for the modified one");
                }
                rpm::RpmConfig cfg;
                cfg.precision_digits = precision_digits;
                cfg.D_max = d_max;
                cfg.d_displacement = displacement;
                cfg.root_tol = root_tol;
                if (have_seed) {
                    cfg.seed_energy = seed_energy;
                }
                config["rpm"] = json{{"D_max", cfg.D_max},
                                     {"d_displacement", cfg.d_displacement},
                                     {"root_tol", cfg.root_tol}};
                const rpm::RpmResult res = rpm::rpm_eigenvalue(p, label, cfg);
                payload["result"] = report::eigen_json(res.eigen);
                payload["history"] = report::rpm_history_json(res);
                if (!rpm_history_path.empty()) {
                    std::ofstream f(rpm_history_path, std::ios::binary);
                    if (!f) {
                        fail(errc::invalid_parameters,
                             "cannot open history file " + rpm_history_path);
                    }
                    f << rpm::history_csv(res);
                    payload["history_file"] = rpm_history_path;
                }
            } else if (method == "closed-form") {
                if (kind != ModelKind::Modified) {
                    fail(errc::invalid_parameters,
                         "the exact closed form exists for the modified model only");
                }
                EigenResult res;
                res.energy = analytic::modified_model_energy(p, label);
                res.label = label;
                res.method = Method::ClosedForm;
                res.est_error = std::abs(res.energy) * 1e-15;
                res.nodes = label.n_r();
                payload["result"] = report::eigen_json(res);
                payload["alpha"] = p.lambda > 0.0 ? analytic::modified_state_alpha(p, label) : 0.0;
                payload["threshold"] = continuum_threshold(p, ModelKind::Modified, label.l);
            } else { // arda-sever
                EigenResult res;
                if (solve_phys.enabled) {
                    res.energy = analytic::arda_sever_energy(solve_phys.A, solve_phys.B,
                                                             solve_phys.C, solve_phys.hbar2_over_m,
                                                             label.n_r(), label.l);
                } else {
                    res.energy =
                        analytic::arda_sever_energy(2.0, p.b, p.lambda, 2.0, label.n_r(), label.l);
                }
                res.label = label;
                res.method = Method::ArdaSever;
                res.est_error = std::abs(res.energy) * 1e-15;
                res.nodes = label.n_r();
                payload["result"] = report::eigen_json(res);
                payload["note"] = "published closed-form formula, evaluated as printed with "
                                  "n = nu - l - 1; audited against the reference table";
            }
            emit(solve_out, "hellmann.solve/v1", config, payload, "solve");
            return 0;
        }

        if (*table1) {
            const json config{{"command", "table1"},
                              {"b", 1.0},
                              {"lambda", 0.01},
                              {"format", table1_out.format},
                              {"precision_digits", precision_digits}};
            const analysis::Table1Report rep = analysis::reproduce_table1();
            emit(table1_out, "hellmann.table1/v1", config, report::table1_json(rep),
                 "golden table", &rep.table);
            return rep.golden_pass ? 0 : 5;
        }

        if (*audit) {
            const ScaledParams p{a_b, a_lambda};
            const json config{{"command", "audit"}, {"b", p.b},         {"lambda", p.lambda},
                              {"l", a_l},           {"n", a_n},         {"format", audit_out.format},
                              {"precision_digits", precision_digits}};
            json findings = json::array();
            findings.push_back(report::finding_json(analytic::quantization_audit(p, a_l, a_n)));
            const double e_sample = 0.5 * (analytic::hf_bounds(p, a_l + 1).lower +
                                           analytic::hf_bounds(p, a_l + 1).upper);
            findings.push_back(report::finding_json(analytic::exponent_sign_audit(p, a_l, e_sample)));
            emit(audit_out, "hellmann.audit/v1", config, json{{"findings", findings}}, "audit");
            return 0;
        }

        if (*census) {
            const ScaledParams p{c_b, c_lambda};
            json config{{"command", "census"},
                        {"b", p.b},
                        {"lambda", p.lambda},
                        {"format", census_out.format},
                        {"precision_digits", precision_digits}};
            std::optional<int> l_filter;
            if (c_l >= 0) {
                l_filter = c_l;
                config["l"] = c_l;
            }
            const analytic::Census c = analytic::modified_model_census(p, l_filter);
            emit(census_out, "hellmann.census/v1", config, report::census_json(c), "census");
            return 0;
        }

        if (*crit) {
            const json config{{"command", "critical-lambda"},
                              {"b", k_b},
                              {"format", crit_out.format},
                              {"precision_digits", precision_digits}};
            const analytic::CriticalLambda lc = analytic::critical_lambda(k_b);
            emit(crit_out, "hellmann.critical-lambda/v1", config,
                 json{{"critical_lambda", lc.value}, {"binds", lc.binds}}, "critical lambda");
            return 0;
        }

        if (*bounds) {
            const json config{{"command", "bounds"},
                              {"b", bd_b},
                              {"nu", bd_nu},
                              {"format", bounds_out.format},
                              {"precision_digits", precision_digits}};
            const auto interval = analytic::hf_bounds(ScaledParams{bd_b, 0.0}, bd_nu);
            emit(bounds_out, "hellmann.bounds/v1", config,
                 json{{"bounds", report::bounds_json(interval)}}, "bounds");
            return 0;
        }

        if (*sweep) {
            json config{{"command", "sweep"},
                        {"b", s_b},
                        {"lambda_grid", s_grid},
                        {"labels", s_labels},
                        {"format", sweep_out.format},
                        {"precision_digits", precision_digits}};
            std::vector<StateLabel> labels;
            for (const auto& name : s_labels) {
                labels.push_back(parse_state_name(name));
            }
            const auto rep = analysis::approximation_error_sweep(s_b, s_grid, labels);
            emit(sweep_out, "hellmann.sweep/v1", config, report::sweep_json(rep), "sweep");
            return 0;
        }

        if (*hf) {
            const ScaledParams p{h_b, h_lambda};
            const json config{{"command", "hf-check"}, {"b", p.b},
                              {"lambda", p.lambda},    {"nu", h_nu},
                              {"l", h_l},              {"delta_lambda", h_delta},
                              {"format", hf_out.format}, {"precision_digits", precision_digits}};
            const auto rep = analysis::hf_derivative_audit(p, StateLabel{h_nu, h_l}, h_delta);
            emit(hf_out, "hellmann.hf-check/v1", config, report::hf_json(rep), "hf-check");
            return 0;
        }
    } catch (const error& e) {
        const int code = exit_code_for(e.code());
        json err{{"error",
                  {{"code", errc_name(e.code())}, {"message", e.what()}, {"exit", code}}}};
        std::cerr << err.dump(2) << '\n';
        return code;
    } catch (const std::exception& e) {
        json err{{"error", {{"code", "internal"}, {"message", e.what()}, {"exit", 4}}}};
        std::cerr << err.dump(2) << '\n';
        return 4;
    }
    return 0;
}
