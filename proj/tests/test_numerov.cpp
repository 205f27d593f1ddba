#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hellmann/analytic.hpp"
#include "hellmann/numerov.hpp"
#include "hellmann/spectrum.hpp"

using namespace hellmann;
using namespace hellmann::numerov;

TEST_CASE("pure Coulomb (b = 0) levels are exact hydrogenic values")
{
    const ScaledParams p{0.0, 0.0};
    // -R'' - (2/r) R = E R has E = -1/nu^2
    for (const int nu : {1, 2, 3}) {
        for (int l = 0; l < nu; ++l) {
            const EigenResult res = solve_state(p, ModelKind::TrueHellmann, StateLabel{nu, l});
            CHECK(res.energy == doctest::Approx(-1.0 / (nu * nu)).epsilon(1e-9));
            CHECK(res.nodes == nu - l - 1);
            CHECK(res.est_error > 0.0);
            CHECK(res.energy < continuum_threshold(p, ModelKind::TrueHellmann, l));
        }
    }
}

TEST_CASE("grid auto-selection honors the caps")
{
    const ScaledParams p{1.0, 0.01};
    const GridSpec g = auto_grid(p, ModelKind::TrueHellmann, StateLabel{1, 0});
    CHECK(g.r_max >= 20.0 / 0.01 - 1e-9);
    CHECK(g.r_max <= 5000.0);
    CHECK(g.n_points >= 50'000);
    CHECK(g.n_points <= 2'000'000);
    CHECK(g.n_points % 2 == 0);

    const GridSpec g2 = auto_grid(ScaledParams{1.0, 0.001}, ModelKind::Modified, StateLabel{1, 0});
    CHECK(g2.r_max == doctest::Approx(5000.0)); // 20/lambda capped
}

TEST_CASE("reference 1s and 4f eigenvalues of the true model")
{
    const ScaledParams p{1.0, 0.01};

    const EigenResult s1 = solve_state(p, ModelKind::TrueHellmann, StateLabel{1, 0});
    CHECK(std::abs(s1.energy - (-0.2598520035)) <= 1e-8);
    CHECK(s1.nodes == 0);
    CHECK(s1.est_error < 1e-8);
    CHECK(s1.diag.final_mismatch < 1e-12);

    const EigenResult f4 = solve_state(p, ModelKind::TrueHellmann, StateLabel{4, 3});
    CHECK(std::abs(f4.energy - (-0.02407191089)) <= 1e-8);
    CHECK(f4.nodes == 0);
}

TEST_CASE("modified-model eigenvalues agree with the exact spectrum")
{
    const ScaledParams p{1.0, 0.01};
    for (const StateLabel label : {StateLabel{1, 0}, StateLabel{2, 0}, StateLabel{2, 1}}) {
        const double exact = analytic::modified_model_energy(p, label);
        const EigenResult res = solve_state(p, ModelKind::Modified, label);
        CHECK(std::abs(res.energy - exact) <= 1e-8);
        CHECK(res.nodes == label.n_r());
    }
    // spot value from the hand-derived formula: 2s -> -0.0776
    CHECK(std::abs(solve_state(p, ModelKind::Modified, StateLabel{2, 0}).energy - (-0.0776)) <=
          1e-8);
}

TEST_CASE("oracle agreement holds at larger screening too")
{
    for (const double lambda : {0.1, 0.5}) {
        const ScaledParams p{1.0, lambda};
        const auto census = analytic::modified_model_census(p);
        for (const auto& entry : census.states) {
            const EigenResult res = solve_state(p, ModelKind::Modified, entry.label);
            CHECK(std::abs(res.energy - entry.energy) <= 1e-8);
        }
    }
}

TEST_CASE("no-bound-state paths")
{
    // outside the modified census
    CHECK_THROWS_AS(solve_state(ScaledParams{1.0, 1.5}, ModelKind::Modified, StateLabel{1, 0}),
                    error);
    try {
        solve_state(ScaledParams{1.0, 1.5}, ModelKind::Modified, StateLabel{1, 0});
    } catch (const error& e) {
        CHECK(e.code() == errc::no_bound_state);
    }
    CHECK_THROWS_AS(solve_state(ScaledParams{1.0, 0.01}, ModelKind::Modified, StateLabel{10, 0}),
                    error);
}

TEST_CASE("node counts identify states across a channel")
{
    const ScaledParams p{1.0, 0.01};
    for (const int nu : {1, 2, 3, 4}) {
        const auto out = solve_state_full(p, ModelKind::TrueHellmann, StateLabel{nu, 0},
                                          std::nullopt, true);
        CHECK(out.eigen.nodes == nu - 1);
        CHECK(ShootingEngine::count_wavefunction_nodes(out.wavefunction) == nu - 1);
    }
}

TEST_CASE("eigenvalues sit strictly inside the Coulombic bounds for either sign of b")
{
    for (const double b : {0.5, 1.0, -1.0}) {
        const ScaledParams p{b, 0.01};
        for (const StateLabel label : {StateLabel{1, 0}, StateLabel{2, 1}}) {
            const auto bounds = analytic::hf_bounds(p, label.nu);
            const double e = solve_state(p, ModelKind::TrueHellmann, label).energy;
            CHECK(e > bounds.lower);
            CHECK(e < bounds.upper);
        }
    }
}

TEST_CASE("Richardson order ratio is near 16 on a smooth case")
{
    const ScaledParams p{1.0, 0.01};
    const OrderCheck oc =
        convergence_order(p, ModelKind::TrueHellmann, StateLabel{1, 0}, GridSpec{150.0, 4000});
    CHECK(oc.ratio > 16.0 * 0.8);
    CHECK(oc.ratio < 16.0 * 1.2);
}

TEST_CASE("expectation value of exp(-lambda r)")
{
    // hydrogen-like 1s of the b = 0 scaled problem: R = 2 r e^{-r},
    // <e^{-lambda r}> = 8/(2+lambda)^3
    const ScaledParams p{0.0, 0.0};
    const auto out = solve_state_full(p, ModelKind::TrueHellmann, StateLabel{1, 0},
                                      std::nullopt, true);
    REQUIRE(out.wavefunction.normalized);

    CHECK(expectation_exp_lambda_r(out.wavefunction, 0.0) == doctest::Approx(1.0).epsilon(1e-9));

    const double lambda = 0.01;
    const double exact = 8.0 / std::pow(2.0 + lambda, 3);
    CHECK(expectation_exp_lambda_r(out.wavefunction, lambda) ==
          doctest::Approx(exact).epsilon(1e-9));

    RadialFunction raw = out.wavefunction;
    raw.normalized = false;
    CHECK_THROWS_AS(expectation_exp_lambda_r(raw, 0.01), error);
}

TEST_CASE("bound-state counting by Sturm nodes matches the census")
{
    CHECK(count_bound_states(ScaledParams{1.0, 0.01}, ModelKind::Modified, 0) == 9);
    CHECK(count_bound_states(ScaledParams{1.0, 0.99}, ModelKind::Modified, 0) == 1);
    CHECK(count_bound_states(ScaledParams{1.0, 0.99}, ModelKind::Modified, 1) == 0);
    CHECK(count_bound_states(ScaledParams{1.0, 1.01}, ModelKind::Modified, 0) == 0);
}

TEST_CASE("scan_spectrum assembles a channel and stops at the census edge")
{
    const ScaledParams p{1.0, 0.5};
    const SpectrumTable t = numerov::scan_spectrum(p, ModelKind::Modified, 0, 10);
    int found = 0;
    for (const auto& row : t.cells) {
        if (row[0].energy) {
            ++found;
        }
    }
    CHECK(found == 1); // census at lambda = 0.5: nu^2 < 2

    const SpectrumTable t2 =
        numerov::scan_spectrum(ScaledParams{1.0, 0.01}, ModelKind::TrueHellmann, 0, 4);
    const double s_column[4] = {-0.2598520035, -0.07192801595, -0.03656400027, -0.02363657974};
    REQUIRE(t2.rows.size() == 4);
    double prev = -1e9;
    for (std::size_t i = 0; i < t2.rows.size(); ++i) {
        REQUIRE(t2.cells[i][0].energy.has_value());
        CHECK(*t2.cells[i][0].energy > prev);
        CHECK(std::abs(*t2.cells[i][0].energy - s_column[i]) <= 1e-8);
        prev = *t2.cells[i][0].energy;
    }

    const SpectrumTable t3 = numerov::scan_spectrum(ScaledParams{1.0, 1.5}, ModelKind::Modified, 0, 5);
    for (const auto& row : t3.cells) {
        CHECK_FALSE(row[0].energy.has_value());
        CHECK(row[0].note.find("no-bound-state") != std::string::npos);
    }
}

TEST_CASE("series seeding data matches the potential near the origin")
{
    // W(r) - l(l+1)/r^2 reconstructed from the Laurent data agrees with the
    // direct evaluation at small r, for both models
    for (const ModelKind kind : {ModelKind::TrueHellmann, ModelKind::Modified}) {
        for (const int l : {0, 2}) {
            const ScaledParams p{1.0, 0.3};
            const PotentialSeries ps = potential_series(p, kind, l);
            for (const double r : {1e-3, 1e-2, 0.05}) {
                double series = ps.w_m1 / r;
                double rp = 1.0;
                for (const double w : ps.w) {
                    series += w * rp;
                    rp *= r;
                }
                const double direct =
                    potential_value(p, kind, l, r) - l * (l + 1) / (r * r);
                CHECK(series == doctest::Approx(direct).epsilon(1e-10));
            }
        }
    }
}
