#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "hellmann/analysis.hpp"
#include "hellmann/reference_data.hpp"
#include "hellmann/report.hpp"

using namespace hellmann;
using namespace hellmann::analysis;

TEST_CASE("embedded reference dataset")
{
    const ReferenceDataset& ds = reference_dataset();
    CHECK(ds.version == reference_dataset_version);
    CHECK(ds.b == 1.0);
    CHECK(ds.lambda == 0.01);
    REQUIRE(ds.entries.size() == 10);
    CHECK(ds.at(StateLabel{1, 0}).present == -0.2598520035);
    CHECK(ds.at(StateLabel{1, 0}).present_decimals == 10);
    CHECK(ds.at(StateLabel{2, 1}).arda_sever == -0.07502);
    CHECK(ds.at(StateLabel{4, 3}).adamowski == -0.02407);
    CHECK_THROWS_AS(ds.at(StateLabel{9, 0}), error);
    CHECK(ds.columns.contains("present"));
    CHECK(ds.columns.contains("adamowski"));
    CHECK(ds.columns.contains("arda_sever"));
}

TEST_CASE("embedded dataset is byte-identical to the shipped file")
{
    std::ifstream f(std::string(HELLMANN_DATA_DIR) + "/table1_reference.json", std::ios::binary);
    REQUIRE(f.good());
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == std::string(table1_reference_json));
}

TEST_CASE("ordering audit on published rows")
{
    SpectrumTable t;
    t.b = 1.0;
    t.lambda = 0.01;
    t.add_column({"present", Method::Reference, ""});
    t.add_column({"arda-sever", Method::Reference, ""});
    for (const auto& e : reference_dataset().entries) {
        const int row = t.add_row(e.label);
        t.cells[row][0].energy = e.present;
        t.cells[row][1].energy = e.arda_sever;
    }

    const OrderingReport accurate = ordering_audit(t, "present");
    REQUIRE(accurate.rows.size() == 3); // nu = 2, 3, 4
    for (const auto& row : accurate.rows) {
        CHECK(row.verdict == OrderingVerdict::AccurateOrder);
    }

    const OrderingReport approx = ordering_audit(t, "arda-sever");
    for (const auto& row : approx.rows) {
        CHECK(row.verdict == OrderingVerdict::OppositeOrder);
    }

    // a single-l table yields an empty report
    SpectrumTable single;
    single.add_column({"only", Method::Reference, ""});
    const int row = single.add_row(StateLabel{1, 0});
    single.cells[row][0].energy = -1.0;
    CHECK(ordering_audit(single, "only").rows.empty());
}

TEST_CASE("Hellmann-Feynman derivative audit, both signs of b")
{
    const HfAuditResult pos = hf_derivative_audit(ScaledParams{1.0, 0.01}, StateLabel{1, 0});
    CHECK(pos.residual <= 1e-6);
    CHECK(pos.sign_ok);
    CHECK(pos.dE_dlambda < 0.0);
    CHECK(pos.inside_bounds);
    CHECK(pos.expectation > 0.0);
    CHECK(pos.expectation < 1.0);

    const HfAuditResult neg = hf_derivative_audit(ScaledParams{-1.0, 0.01}, StateLabel{1, 0});
    CHECK(neg.residual <= 1e-6);
    CHECK(neg.sign_ok);
    CHECK(neg.dE_dlambda > 0.0);
    CHECK(neg.inside_bounds);

    CHECK_THROWS_AS(hf_derivative_audit(ScaledParams{1.0, 0.01}, StateLabel{1, 0}, 0.02), error);
}

TEST_CASE("approximation-error sweep")
{
    const SweepReport rep =
        approximation_error_sweep(1.0, {0.01, 0.1}, {StateLabel{1, 0}});
    REQUIRE(rep.points.size() == 2);
    CHECK(rep.points[0].census_count == 38);
    CHECK(rep.points[1].census_count == 4);
    CHECK(rep.census_non_increasing);
    CHECK(rep.delta_increasing);
    REQUIRE(rep.points[0].cells.size() == 1);
    CHECK(rep.points[0].cells[0].delta.has_value());
    // the lambda = 0.01 gap between the models at 1s, from the reference data
    CHECK(*rep.points[0].cells[0].delta ==
          doctest::Approx(-0.265025 - (-0.2598520035)).epsilon(1e-5));

    CHECK_THROWS_AS(approximation_error_sweep(1.0, {0.1, 0.01}, {StateLabel{1, 0}}), error);
    CHECK_THROWS_AS(approximation_error_sweep(1.0, {}, {StateLabel{1, 0}}), error);
}

TEST_CASE("infinite-spectrum probe")
{
    const ProbeResult probe = infinite_spectrum_probe(1.0, 0.5, 0, 3);
    CHECK(probe.all_bound);
    REQUIRE(probe.energies.size() == 3);
    CHECK(probe.energies[0] < probe.energies[1]);
    CHECK(probe.energies[1] < probe.energies[2]);
    CHECK(probe.energies[2] < 0.0);

    CHECK_THROWS_AS(infinite_spectrum_probe(1.0, 0.5, 0, 16), error);

    // the modified model at the same parameters is already down to one state
    CHECK(analytic::modified_model_census(ScaledParams{1.0, 0.5}).count() <= 1);

    // beyond the critical screening the modified census is empty while the
    // true model still binds its ground state through the Coulomb tail
    CHECK(analytic::modified_model_census(ScaledParams{1.0, 1.5}).count() == 0);
    const double e_true =
        numerov::solve_state(ScaledParams{1.0, 1.5}, ModelKind::TrueHellmann, StateLabel{1, 0})
            .energy;
    CHECK(e_true < 0.0);
}

TEST_CASE("golden table reproduction")
{
    const Table1Report rep = reproduce_table1();
    CHECK(rep.golden_pass);
    CHECK(rep.max_numerov_diff <= present_column_tol);
    CHECK(rep.max_rpm_diff <= present_column_tol);
    CHECK(rep.max_closed_form_diff <= as_column_tol);

    // findings surface the three audits
    bool has_formula_vs_table = false;
    bool has_lambda_independence = false;
    for (const auto& f : rep.findings) {
        if (f.subject == AuditSubject::FormulaVsTable && f.verdict == AuditVerdict::Mismatch) {
            for (const auto& [k, v] : f.evidence) {
                if (k == "min_s_state_diff") {
                    has_formula_vs_table = true;
                    CHECK(v >= 5e-3);
                }
                if (k == "max_p_state_diff") {
                    CHECK(v <= as_column_tol);
                }
                if (k == "min_df_state_diff") {
                    CHECK(v >= 5e-4); // the d/f rows disagree too
                }
            }
        }
        if (f.subject == AuditSubject::LambdaIndependenceAtOrigin) {
            has_lambda_independence = true;
            CHECK(f.verdict == AuditVerdict::Mismatch);
        }
    }
    CHECK(has_formula_vs_table);
    CHECK(has_lambda_independence);

    // ordering verdicts per nu
    REQUIRE(rep.ordering_accurate.rows.size() == 3);
    for (const auto& row : rep.ordering_accurate.rows) {
        CHECK(row.verdict == OrderingVerdict::AccurateOrder);
    }
    REQUIRE(rep.ordering_modified.rows.size() == 3);
    for (const auto& row : rep.ordering_modified.rows) {
        CHECK(row.verdict == OrderingVerdict::OppositeOrder);
    }

    // every numerov eigenvalue sits strictly inside its Coulombic bounds
    const int num_col = rep.table.column_index("numerov");
    for (std::size_t i = 0; i < rep.table.rows.size(); ++i) {
        const auto bounds = analytic::hf_bounds(ScaledParams{1.0, 0.01}, rep.table.rows[i].nu);
        REQUIRE(rep.table.cells[i][num_col].energy.has_value());
        CHECK(*rep.table.cells[i][num_col].energy > bounds.lower);
        CHECK(*rep.table.cells[i][num_col].energy < bounds.upper);
    }

    // serialization smoke checks on the real report
    const auto doc = report::make_document("hellmann.table1/v1", {{"command", "table1"}},
                                           report::table1_json(rep), false);
    CHECK(doc.contains("golden_pass"));
    const std::string csv = report::spectrum_csv(rep.table);
    CHECK(csv.find("state,nu,l,present") == 0);
    const std::string md = report::spectrum_markdown(rep.table);
    CHECK(md.find("| 1s |") != std::string::npos);
}
