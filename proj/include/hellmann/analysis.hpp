#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hellmann/analytic.hpp"
#include "hellmann/errors.hpp"
#include "hellmann/model.hpp"
#include "hellmann/numerov.hpp"
#include "hellmann/reference_data.hpp"
#include "hellmann/rpm.hpp"
#include "hellmann/spectrum.hpp"

namespace hellmann::analysis {

using analytic::AuditFinding;
using analytic::AuditSubject;
using analytic::AuditVerdict;

// Tolerances used by the golden-table gate.  The reference columns are
// rounded prints, so the limits are half an ulp of the print; the small
// absolute guard absorbs binary representation error on differences that sit
// exactly at the half-ulp boundary.
inline constexpr double present_column_tol = 1e-8;  // 10/11-digit column
inline constexpr double as_column_tol = 5e-6 + 1e-12; // 5-decimal column
inline constexpr double five_decimal_guard = 1e-12;

// ---------------------------------------------------------------------------
// Ordering audit
// ---------------------------------------------------------------------------

enum class OrderingVerdict { AccurateOrder, OppositeOrder, Mixed };

inline const char* ordering_verdict_name(OrderingVerdict v)
{
    switch (v) {
        case OrderingVerdict::AccurateOrder: return "accurate-order";
        case OrderingVerdict::OppositeOrder: return "opposite-order";
        case OrderingVerdict::Mixed: return "mixed";
    }
    return "unknown";
}

struct OrderingRow {
    int nu;
    std::vector<std::pair<int, double>> energies; ///< (l, E) sorted by l
    OrderingVerdict verdict;
};

struct OrderingReport {
    std::string column;
    std::vector<OrderingRow> rows; ///< one per nu with at least two l values
};

/// Per-nu ordering of E against l in one column: AccurateOrder when the
/// energy strictly decreases with l, OppositeOrder when it strictly
/// increases, Mixed otherwise.
inline OrderingReport ordering_audit(const SpectrumTable& table, const std::string& column_id)
{
    const int col = table.column_index(column_id);
    std::map<int, std::vector<std::pair<int, double>>> by_nu;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& cell = table.cells[i][col];
        if (cell.energy) {
            by_nu[table.rows[i].nu].emplace_back(table.rows[i].l, *cell.energy);
        }
    }
    OrderingReport report;
    report.column = column_id;
    for (auto& [nu, energies] : by_nu) {
        if (energies.size() < 2) {
            continue;
        }
        std::sort(energies.begin(), energies.end());
        bool decreasing = true;
        bool increasing = true;
        for (std::size_t i = 1; i < energies.size(); ++i) {
            if (!(energies[i].second < energies[i - 1].second)) {
                decreasing = false;
            }
            if (!(energies[i].second > energies[i - 1].second)) {
                increasing = false;
            }
        }
        OrderingVerdict verdict = OrderingVerdict::Mixed;
        if (decreasing) {
            verdict = OrderingVerdict::AccurateOrder;
        } else if (increasing) {
            verdict = OrderingVerdict::OppositeOrder;
        }
        report.rows.push_back({nu, energies, verdict});
    }
    return report;
}

// ---------------------------------------------------------------------------
// Golden Table reproduction
// ---------------------------------------------------------------------------

struct Table1Report {
    SpectrumTable table;
    std::vector<AuditFinding> findings;
    OrderingReport ordering_accurate; ///< over the Numerov column
    OrderingReport ordering_modified; ///< over the closed-form column
    double max_numerov_diff = 0.0;    ///< vs the 10-digit reference column
    double max_rpm_diff = 0.0;
    double max_closed_form_diff = 0.0; ///< vs the 5-decimal approximation column
    bool golden_pass = false;
    std::vector<std::string> provenance;
};

/// Recomputes the whole reference table at b=1, lambda=0.01: four live
/// columns (Numerov and Riccati-Pade on the true model, the exact
/// modified-model spectrum, and the published closed-form formula evaluated
/// with a=2, hbar^2/m=2, n = nu-l-1) against the three embedded reference
/// columns, plus the findings the comparison supports.
inline Table1Report reproduce_table1()
{
    const ReferenceDataset& ref = reference_dataset();
    const ScaledParams p{ref.b, ref.lambda};

    Table1Report report;
    SpectrumTable& t = report.table;
    t.b = ref.b;
    t.lambda = ref.lambda;
    t.add_column({"present", Method::Reference, "embedded reference, 10-11 digits"});
    t.add_column({"adamowski", Method::Reference, "embedded reference, 5 decimals"});
    t.add_column({"arda-sever", Method::Reference, "embedded reference, 5 decimals"});
    t.add_column({"numerov", Method::Numerov, "Numerov shooting, true model"});
    t.add_column({"rpm", Method::RPM, "Riccati-Pade, true model, 60 digits"});
    t.add_column({"closed-form-modified", Method::ClosedForm,
                  "exact modified-model spectrum; reproduces the published approximation column "
                  "under this mapping (a hypothesis about that column, not its stated "
                  "convention)"});
    t.add_column({"arda-sever-eq10", Method::ArdaSever,
                  "published energy formula, a=2, hbar^2/m=2, n=nu-l-1"});

    for (const auto& entry : ref.entries) {
        const int row = t.add_row(entry.label);
        t.cells[row][0].energy = entry.present;
        t.cells[row][1].energy = entry.adamowski;
        t.cells[row][2].energy = entry.arda_sever;

        try {
            const EigenResult num = numerov::solve_state(p, ModelKind::TrueHellmann, entry.label);
            t.cells[row][3].energy = num.energy;
            t.cells[row][3].est_error = num.est_error;
        } catch (const error& e) {
            t.cells[row][3].note = e.what();
        }
        try {
            const rpm::RpmResult rp = rpm::rpm_eigenvalue(p, entry.label);
            t.cells[row][4].energy = rp.eigen.energy;
            t.cells[row][4].est_error = rp.eigen.est_error;
        } catch (const error& e) {
            t.cells[row][4].note = e.what();
        }
        try {
            t.cells[row][5].energy = analytic::modified_model_energy(p, entry.label);
        } catch (const error& e) {
            t.cells[row][5].note = e.what();
        }
        t.cells[row][6].energy = analytic::arda_sever_energy(
            2.0, p.b, p.lambda, 2.0, entry.label.n_r(), entry.label.l);
    }

    // Column-vs-reference spreads.
    bool all_present = true;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& entry = ref.at(t.rows[i]);
        if (t.cells[i][3].energy) {
            report.max_numerov_diff =
                std::max(report.max_numerov_diff, std::abs(*t.cells[i][3].energy - entry.present));
        } else {
            all_present = false;
        }
        if (t.cells[i][4].energy) {
            report.max_rpm_diff =
                std::max(report.max_rpm_diff, std::abs(*t.cells[i][4].energy - entry.present));
        } else {
            all_present = false;
        }
        if (t.cells[i][5].energy) {
            report.max_closed_form_diff = std::max(
                report.max_closed_form_diff, std::abs(*t.cells[i][5].energy - entry.arda_sever));
        } else {
            all_present = false;
        }
    }

    report.golden_pass = all_present && report.max_numerov_diff <= present_column_tol &&
                         report.max_rpm_diff <= present_column_tol &&
                         report.max_closed_form_diff <= as_column_tol;

    // Finding: accurate methods reproduce the 10-digit column.
    {
        AuditFinding f;
        f.subject = AuditSubject::FormulaVsTable;
        f.verdict = report.golden_pass ? AuditVerdict::Confirmed : AuditVerdict::Mismatch;
        f.detail = "Numerov and Riccati-Pade spectra against the 10-digit reference column; "
                   "exact modified-model spectrum against the 5-decimal approximation column";
        f.evidence = {{"max_numerov_diff", report.max_numerov_diff},
                      {"max_rpm_diff", report.max_rpm_diff},
                      {"max_closed_form_diff", report.max_closed_form_diff},
                      {"present_column_tol", present_column_tol},
                      {"as_column_tol", as_column_tol}};
        report.findings.push_back(std::move(f));
    }

    // Finding: the published formula disagrees with its own published table
    // on every s state; the p rows agree to print rounding (for l = 1 the
    // formula coincides with the exact modified spectrum), the d and f rows
    // disagree again.
    {
        double min_s_diff = std::numeric_limits<double>::infinity();
        double max_p_diff = 0.0;
        double min_df_diff = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            const auto& entry = ref.at(t.rows[i]);
            const double diff = std::abs(*t.cells[i][6].energy - entry.arda_sever);
            if (t.rows[i].l == 0) {
                min_s_diff = std::min(min_s_diff, diff);
            } else if (t.rows[i].l == 1) {
                max_p_diff = std::max(max_p_diff, diff);
            } else {
                min_df_diff = std::min(min_df_diff, diff);
            }
        }
        AuditFinding f;
        f.subject = AuditSubject::FormulaVsTable;
        f.verdict = AuditVerdict::Mismatch;
        f.detail = "published closed-form energy vs the published table: every s state is off "
                   "by at least the quoted minimum, the p rows agree to print rounding, and "
                   "the d/f rows disagree again";
        f.evidence = {{"min_s_state_diff", min_s_diff},
                      {"max_p_state_diff", max_p_diff},
                      {"min_df_state_diff", min_df_diff},
                      {"as_column_tol", as_column_tol}};
        report.findings.push_back(std::move(f));
    }

    // Finding: the published formula is exactly lambda-independent at
    // n = l = 0, which cannot reproduce a lambda-dependent 1s row.
    {
        const double e0 = analytic::arda_sever_energy(2.0, p.b, 0.0, 2.0, 0, 0);
        const double e1 = analytic::arda_sever_energy(2.0, p.b, p.lambda, 2.0, 0, 0);
        const double e2 = analytic::arda_sever_energy(2.0, p.b, 1.0, 2.0, 0, 0);
        AuditFinding f;
        f.subject = AuditSubject::LambdaIndependenceAtOrigin;
        f.verdict = AuditVerdict::Mismatch;
        f.detail = "formula value at n=l=0 is independent of lambda (all lambda-dependent "
                   "brackets vanish) yet the tabulated 1s value moves with lambda";
        f.evidence = {{"E(lambda=0)", e0},
                      {"E(lambda=0.01)", e1},
                      {"E(lambda=1)", e2},
                      {"table_1s", ref.at(StateLabel{1, 0}).arda_sever}};
        report.findings.push_back(std::move(f));
    }

    report.ordering_accurate = ordering_audit(t, "numerov");
    report.ordering_modified = ordering_audit(t, "closed-form-modified");
    {
        AuditFinding f;
        f.subject = AuditSubject::FormulaVsTable;
        bool acc_ok = !report.ordering_accurate.rows.empty();
        for (const auto& row : report.ordering_accurate.rows) {
            acc_ok = acc_ok && row.verdict == OrderingVerdict::AccurateOrder;
        }
        bool mod_opposite = !report.ordering_modified.rows.empty();
        for (const auto& row : report.ordering_modified.rows) {
            mod_opposite = mod_opposite && row.verdict == OrderingVerdict::OppositeOrder;
        }
        f.verdict = (acc_ok && mod_opposite) ? AuditVerdict::Confirmed : AuditVerdict::Mismatch;
        f.detail = "true-model levels order E(nu,l+1) < E(nu,l); the substituted model orders "
                   "them oppositely, so its near-degenerate multiplets are inverted";
        f.evidence = {{"accurate_rows_decreasing", acc_ok ? 1.0 : 0.0},
                      {"modified_rows_increasing", mod_opposite ? 1.0 : 0.0}};
        report.findings.push_back(std::move(f));
    }

    report.provenance.push_back(
        "reference columns embedded, never recomputed; dataset version " + ref.version);
    report.provenance.push_back(
        "all energies in scaled units (length hbar^2/(mA), energy mA^2/(2 hbar^2)); the "
        "approximation column's source does not fix its mass convention, so the live columns "
        "state theirs explicitly");
    report.provenance.push_back(
        "lambda->infinity bound uses the charge-2 hydrogenic formula -1/nu^2; a published "
        "transcription of that limit prints -1/(2 nu^2), recorded here as a discrepancy");
    report.provenance.push_back(
        "comparisons against sources that publish no eigenvalues are omitted by construction");
    return report;
}

// ---------------------------------------------------------------------------
// Hellmann-Feynman derivative audit
// ---------------------------------------------------------------------------

struct HfAuditResult {
    StateLabel label{1, 0};
    double b = 0.0;
    double lambda = 0.0;
    double delta_lambda = 0.0;
    double dE_dlambda = 0.0;   ///< central finite difference
    double expectation = 0.0;  ///< <e^{-lambda r}> over the lambda-centered state
    double residual = 0.0;     ///< |dE/dlambda + b <e^{-lambda r}>|
    bool sign_ok = false;      ///< derivative sign matches -b <.>
    analytic::BoundsInterval bounds{0.0, 0.0, 1, analytic::BSignCase::Positive};
    bool inside_bounds = false;
};

/// Finite-difference check of dE/dlambda = -b <e^{-lambda r}> on the true
/// model, plus the two-sided Coulombic bounds that follow from it.
inline HfAuditResult hf_derivative_audit(ScaledParams p, StateLabel label,
                                         double delta_lambda = 1e-4)
{
    if (!(delta_lambda > 0.0) || p.lambda - delta_lambda < 0.0) {
        fail(errc::invalid_parameters, "need 0 < delta_lambda <= lambda");
    }
    const auto center =
        numerov::solve_state_full(p, ModelKind::TrueHellmann, label, std::nullopt, true);
    const EigenResult plus = numerov::solve_state(
        ScaledParams{p.b, p.lambda + delta_lambda}, ModelKind::TrueHellmann, label);
    const EigenResult minus = numerov::solve_state(
        ScaledParams{p.b, p.lambda - delta_lambda}, ModelKind::TrueHellmann, label);

    HfAuditResult out;
    out.label = label;
    out.b = p.b;
    out.lambda = p.lambda;
    out.delta_lambda = delta_lambda;
    out.dE_dlambda = (plus.energy - minus.energy) / (2.0 * delta_lambda);
    out.expectation = numerov::expectation_exp_lambda_r(center.wavefunction, p.lambda);
    out.residual = std::abs(out.dE_dlambda + p.b * out.expectation);
    out.sign_ok = p.b == 0.0 || (p.b > 0.0 ? out.dE_dlambda < 0.0 : out.dE_dlambda > 0.0);
    out.bounds = analytic::hf_bounds(p, label.nu);
    out.inside_bounds =
        center.eigen.energy > out.bounds.lower && center.eigen.energy < out.bounds.upper;
    return out;
}

// ---------------------------------------------------------------------------
// Approximation-error sweep
// ---------------------------------------------------------------------------

struct SweepCell {
    StateLabel label{1, 0};
    std::optional<double> e_true;
    std::optional<double> e_modified;
    std::optional<double> delta; ///< e_modified - e_true
    std::string note;
};

struct SweepPoint {
    double lambda;
    int census_count = 0;   ///< modified-model census over all l
    bool census_infinite = false;
    std::vector<SweepCell> cells;
};

struct SweepReport {
    double b;
    std::vector<StateLabel> labels;
    std::vector<SweepPoint> points;
    bool delta_increasing = true;    ///< |delta| grows along the grid per label
    bool census_non_increasing = true;
};

/// Tracks E_modified - E_true and the modified census along an ascending
/// lambda grid.  The true energies come from the Numerov solver, the
/// modified ones from the exact spectrum (itself Numerov-validated).
inline SweepReport approximation_error_sweep(double b, std::vector<double> lambda_grid,
                                             std::vector<StateLabel> labels)
{
    if (lambda_grid.empty() || labels.empty()) {
        fail(errc::invalid_parameters, "sweep needs a lambda grid and at least one state");
    }
    for (std::size_t i = 1; i < lambda_grid.size(); ++i) {
        if (!(lambda_grid[i] > lambda_grid[i - 1]) || !(lambda_grid[0] > 0.0)) {
            fail(errc::invalid_parameters, "lambda grid must be positive and ascending");
        }
    }
    SweepReport report;
    report.b = b;
    report.labels = labels;
    int prev_census = -1;
    std::map<std::string, double> prev_abs_delta;
    for (const double lambda : lambda_grid) {
        const ScaledParams p{b, lambda};
        SweepPoint point;
        point.lambda = lambda;
        const auto census = analytic::modified_model_census(p);
        point.census_infinite = census.infinite;
        point.census_count = census.count();
        if (prev_census >= 0 && point.census_count > prev_census) {
            report.census_non_increasing = false;
        }
        prev_census = point.census_count;

        for (const StateLabel& label : labels) {
            SweepCell cell;
            cell.label = label;
            try {
                cell.e_true = numerov::solve_state(p, ModelKind::TrueHellmann, label).energy;
            } catch (const error& e) {
                cell.note = e.what();
            }
            try {
                cell.e_modified = analytic::modified_model_energy(p, label);
            } catch (const error& e) {
                cell.note += cell.note.empty() ? e.what() : std::string("; ") + e.what();
            }
            if (cell.e_true && cell.e_modified) {
                cell.delta = *cell.e_modified - *cell.e_true;
                const std::string key = state_name(label);
                const auto it = prev_abs_delta.find(key);
                if (it != prev_abs_delta.end() && std::abs(*cell.delta) <= it->second) {
                    report.delta_increasing = false;
                }
                prev_abs_delta[key] = std::abs(*cell.delta);
            }
            point.cells.push_back(std::move(cell));
        }
        report.points.push_back(std::move(point));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Infinite-spectrum probe
// ---------------------------------------------------------------------------

struct ProbeResult {
    bool all_bound = false;
    std::vector<double> energies; ///< converged E for nu = l+1 .. l+K
};

/// Evidence (not proof) that the true model keeps an unbounded ladder: the
/// first K states of channel l all converge below threshold.
inline ProbeResult infinite_spectrum_probe(double b, double lambda, int l, int K)
{
    if (K < 1 || K > 15) {
        fail(errc::grid_too_coarse, "probe depth K must be within [1, 15] on practical grids");
    }
    const ScaledParams p{b, lambda};
    ProbeResult out;
    out.all_bound = true;
    for (int k = 0; k < K; ++k) {
        const StateLabel label{l + 1 + k, l};
        try {
            const EigenResult res = numerov::solve_state(p, ModelKind::TrueHellmann, label);
            out.energies.push_back(res.energy);
            if (!(res.energy < 0.0)) {
                out.all_bound = false;
                break;
            }
        } catch (const error&) {
            out.all_bound = false;
            break;
        }
    }
    return out;
}

} // namespace hellmann::analysis
