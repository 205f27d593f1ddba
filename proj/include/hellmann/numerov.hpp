#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hellmann/analytic.hpp"
#include "hellmann/errors.hpp"
#include "hellmann/model.hpp"

namespace hellmann {

/// Uniform radial grid r_i = i*h, i = 0..n_points, h = r_max/n_points.
struct GridSpec {
    double r_max;
    int n_points;

    double h() const { return r_max / n_points; }
};

enum class Method { Numerov, RPM, ClosedForm, ArdaSever, Reference };

inline const char* method_name(Method m)
{
    switch (m) {
        case Method::Numerov: return "numerov";
        case Method::RPM: return "rpm";
        case Method::ClosedForm: return "closed-form";
        case Method::ArdaSever: return "arda-sever";
        case Method::Reference: return "reference";
    }
    return "unknown";
}

struct SolveDiagnostics {
    int iterations = 0;          ///< total integration sweeps across both grids
    double final_mismatch = 0.0; ///< normalized log-derivative mismatch at the accepted energy
    GridSpec grid{0.0, 0};       ///< finest grid used
};

/// One converged eigenvalue.
struct EigenResult {
    double energy = 0.0;
    StateLabel label{1, 0};
    Method method = Method::Numerov;
    double est_error = 0.0; ///< absolute uncertainty estimate, > 0 for numeric methods
    int nodes = 0;
    SolveDiagnostics diag{};
};

/// Radial wavefunction samples on the grid, R(0) = 0, R(r_max) ~ 0.
struct RadialFunction {
    std::vector<double> r;
    std::vector<double> R;
    bool normalized = false;
};

namespace numerov {

// ---------------------------------------------------------------------------
// Power-series seeding near the origin
// ---------------------------------------------------------------------------

/// Laurent data of W(r) - l(l+1)/r^2 around r = 0:  w_m1/r + sum_j w[j] r^j.
/// Seeding the outward integration from this series (rather than the bare
/// r^{l+1} monomial) keeps the irregular-solution admixture below the O(h^4)
/// integrator error.
struct PotentialSeries {
    double w_m1 = 0.0;
    std::array<double, 8> w{};
};

inline PotentialSeries potential_series(ScaledParams p, ModelKind kind, int l)
{
    PotentialSeries ps;
    const double b = p.b;
    const double lm = p.lambda;
    if (kind == ModelKind::TrueHellmann) {
        // v(r) = (b-2)/r + sum_j b (-lambda)^{j+1}/(j+1)! r^j
        ps.w_m1 = b - 2.0;
        double pw = -lm; // (-lambda)^{j+1}/(j+1)!
        for (std::size_t j = 0; j < ps.w.size(); ++j) {
            ps.w[j] = b * pw;
            pw *= -lm / static_cast<double>(j + 2);
        }
        return ps;
    }
    // Modified: W - L/r^2 = L (phi^2 - 1/r^2) + (b-2) phi - b lambda with
    // phi = lambda/(1-e^{-lambda r}) = sum_n beta_n lambda^n r^{n-1}.
    static constexpr std::array<double, 10> beta = {1.0,
                                                    0.5,
                                                    1.0 / 12.0,
                                                    0.0,
                                                    -1.0 / 720.0,
                                                    0.0,
                                                    1.0 / 30240.0,
                                                    0.0,
                                                    -1.0 / 1209600.0,
                                                    0.0};
    std::array<double, 10> a{}; // phi coefficient of r^{k-1} is a[k]
    double lpow = 1.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        a[n] = beta[n] * lpow;
        lpow *= lm;
    }
    const double L = static_cast<double>(l) * (l + 1);
    // phi^2 coefficient of r^{k-2} is conv[k] = sum_{i+j=k} a_i a_j.
    std::array<double, 10> conv{};
    for (std::size_t k = 0; k < conv.size(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i <= k; ++i) {
            acc += a[i] * a[k - i];
        }
        conv[k] = acc;
    }
    ps.w_m1 = L * conv[1] + (b - 2.0) * a[0]; // 1/r coefficients
    for (std::size_t j = 0; j < ps.w.size(); ++j) {
        ps.w[j] = L * conv[j + 2] + (b - 2.0) * a[j + 1];
    }
    ps.w[0] -= b * lm;
    return ps;
}

/// Regular-solution series y(r) = r^{l+1} sum c_k r^k with
///   c_k = [ w_m1 c_{k-1} + sum_{j=0}^{k-2} (w_j - E delta_{j0}) c_{k-2-j} ] / (k (k + 2l + 1)).
inline std::array<double, 7> regular_series_coeffs(const PotentialSeries& ps, int l, double E)
{
    std::array<double, 7> c{};
    c[0] = 1.0;
    const double two_s = 2.0 * (l + 1);
    for (int k = 1; k < static_cast<int>(c.size()); ++k) {
        double acc = ps.w_m1 * c[k - 1];
        for (int j = 0; j <= k - 2; ++j) {
            const double wj = ps.w[j] - (j == 0 ? E : 0.0);
            acc += wj * c[k - 2 - j];
        }
        c[k] = acc / (k * (k + two_s - 1.0));
    }
    return c;
}

inline double series_value(const std::array<double, 7>& c, int l, double r)
{
    double poly = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
        poly = poly * r + c[k];
    }
    return std::pow(r, l + 1) * poly;
}

// ---------------------------------------------------------------------------
// Shooting engine
// ---------------------------------------------------------------------------

/// Numerov shooting on a fixed grid for one (model, l) channel.  The
/// effective potential is tabulated once; every energy probe is a pure O(n)
/// sweep.  Outward and inward integrations each run in their stable
/// (growing) direction and meet at the outermost classical turning point.
class ShootingEngine {
  public:
    ShootingEngine(ScaledParams p, ModelKind kind, int l, GridSpec grid)
        : params_(p)
        , kind_(kind)
        , l_(l)
        , grid_(grid)
        , threshold_(continuum_threshold(p, kind, l))
        , series_(potential_series(p, kind, l))
    {
        if (grid.n_points < 1000) {
            fail(errc::invalid_parameters, "grid must have at least 1000 points");
        }
        if (!(grid.r_max > 0.0)) {
            fail(errc::invalid_parameters, "r_max must be positive");
        }
        const int n = grid.n_points;
        const double h = grid.h();
        W_.resize(n + 1);
        W_[0] = 0.0; // r = 0 never dereferenced
        w_min_ = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= n; ++i) {
            W_[i] = potential_value(params_, kind_, l_, i * h);
            w_min_ = std::min(w_min_, W_[i]);
        }
    }

    double threshold() const { return threshold_; }
    double potential_minimum() const { return w_min_; }
    const GridSpec& grid() const { return grid_; }
    int sweeps() const { return sweeps_; }

    /// Sturm count: interior sign changes of the outward (regular) solution.
    /// Equals the number of eigenvalues below E on this box.
    int count_nodes(double E) const
    {
        ++sweeps_;
        const int n = grid_.n_points;
        const double h = grid_.h();
        const double h2 = h * h / 12.0;
        const auto c = regular_series_coeffs(series_, l_, E);
        double ym = series_value(c, l_, h);
        double y = series_value(c, l_, 2.0 * h);
        double fm = W_[1] - E;
        double f = W_[2] - E;
        int nodes = (ym * y < 0.0) ? 1 : 0;
        for (int i = 2; i < n; ++i) {
            const double fp = W_[i + 1] - E;
            const double yp =
                ((2.0 + 10.0 * h2 * f) * y - (1.0 - h2 * fm) * ym) / (1.0 - h2 * fp);
            if (y * yp < 0.0) {
                ++nodes;
            }
            ym = y;
            y = yp;
            fm = f;
            f = fp;
            if (std::abs(y) > 1e250) {
                ym *= 1e-250;
                y *= 1e-250;
            }
        }
        return nodes;
    }

    /// Normalized log-derivative mismatch at the matching point; zero at an
    /// eigenvalue.  Positive-definite denominator keeps the value in O(1).
    double mismatch(double E) const
    {
        ++sweeps_;
        const int m = matching_index(E); // clamped to [3, n-3]
        const double h = grid_.h();
        const double h2 = h * h / 12.0;
        const auto c = regular_series_coeffs(series_, l_, E);

        // outward to m+1
        double out_m1 = 0.0, out_m = 0.0, out_p1 = 0.0;
        const auto record_out = [&](int idx, double v) {
            if (idx == m - 1) out_m1 = v;
            if (idx == m) out_m = v;
            if (idx == m + 1) out_p1 = v;
        };
        double ym = series_value(c, l_, h);
        double y = series_value(c, l_, 2.0 * h);
        record_out(1, ym);
        record_out(2, y);
        for (int i = 2; i <= m; ++i) {
            const double fp = W_[i + 1] - E;
            const double yp = ((2.0 + 10.0 * h2 * (W_[i] - E)) * y -
                               (1.0 - h2 * (W_[i - 1] - E)) * ym) /
                              (1.0 - h2 * fp);
            ym = y;
            y = yp;
            if (std::abs(y) > 1e250) {
                ym *= 1e-250;
                y *= 1e-250;
                out_m1 *= 1e-250;
                out_m *= 1e-250;
            }
            record_out(i + 1, y);
        }

        // inward from r_max to m-1, seeded with the asymptotic decay
        const int n = grid_.n_points;
        const double kappa = std::sqrt(std::max(threshold_ - E, 1e-150));
        double in_m1 = 0.0, in_m = 0.0, in_p1 = 0.0;
        const auto record_in = [&](int idx, double v) {
            if (idx == m - 1) in_m1 = v;
            if (idx == m) in_m = v;
            if (idx == m + 1) in_p1 = v;
        };
        double yi_p = 1e-120;                   // y at n
        double yi = yi_p * std::exp(kappa * h); // y at n-1
        record_in(n, yi_p);
        record_in(n - 1, yi);
        for (int i = n - 1; i >= m; --i) {
            const double fm_ = W_[i - 1] - E;
            const double ym_ = ((2.0 + 10.0 * h2 * (W_[i] - E)) * yi -
                                (1.0 - h2 * (W_[i + 1] - E)) * yi_p) /
                               (1.0 - h2 * fm_);
            yi_p = yi;
            yi = ym_;
            if (std::abs(yi) > 1e250) {
                yi_p *= 1e-250;
                yi *= 1e-250;
                in_p1 *= 1e-250;
                in_m *= 1e-250;
            }
            record_in(i - 1, yi);
        }

        const auto dlog = [&](double y_m1, double y_0, double y_p1) {
            const double f_m1 = W_[m - 1] - E;
            const double f_p1 = W_[m + 1] - E;
            const double d = (y_p1 * (1.0 - h * h * f_p1 / 6.0) -
                              y_m1 * (1.0 - h * h * f_m1 / 6.0)) /
                             (2.0 * h);
            return d / y_0;
        };
        const double d_out = dlog(out_m1, out_m, out_p1);
        const double d_in = dlog(in_m1, in_m, in_p1);
        return (d_out - d_in) / (std::abs(d_out) + std::abs(d_in) + 1e-300);
    }

    /// Assembles the full wavefunction at energy E (outward to the matching
    /// point, inward beyond it, inward branch rescaled for continuity).
    RadialFunction wavefunction(double E, bool normalize = true) const
    {
        ++sweeps_;
        const int n = grid_.n_points;
        const int m = matching_index(E);
        const double h = grid_.h();
        const double h2 = h * h / 12.0;
        const auto c = regular_series_coeffs(series_, l_, E);

        std::vector<double> y(n + 1, 0.0);
        y[1] = series_value(c, l_, h);
        y[2] = series_value(c, l_, 2.0 * h);
        for (int i = 2; i <= m; ++i) {
            y[i + 1] = ((2.0 + 10.0 * h2 * (W_[i] - E)) * y[i] -
                        (1.0 - h2 * (W_[i - 1] - E)) * y[i - 1]) /
                       (1.0 - h2 * (W_[i + 1] - E));
            if (std::abs(y[i + 1]) > 1e200) {
                for (int k = 1; k <= i + 1; ++k) {
                    y[k] *= 1e-200;
                }
            }
        }
        const double y_match_out = y[m];

        std::vector<double> yin(n + 1, 0.0);
        const double kappa = std::sqrt(std::max(threshold_ - E, 1e-150));
        yin[n] = 1e-120;
        yin[n - 1] = yin[n] * std::exp(kappa * h);
        for (int i = n - 1; i > m; --i) {
            yin[i - 1] = ((2.0 + 10.0 * h2 * (W_[i] - E)) * yin[i] -
                          (1.0 - h2 * (W_[i + 1] - E)) * yin[i + 1]) /
                         (1.0 - h2 * (W_[i - 1] - E));
            if (std::abs(yin[i - 1]) > 1e200) {
                for (int k = i - 1; k <= n; ++k) {
                    yin[k] *= 1e-200;
                }
            }
        }
        const double scale = y_match_out / yin[m];
        for (int i = m + 1; i <= n; ++i) {
            y[i] = yin[i] * scale;
        }

        RadialFunction wf;
        wf.r.resize(n + 1);
        wf.R = std::move(y);
        for (int i = 0; i <= n; ++i) {
            wf.r[i] = i * h;
        }
        if (normalize) {
            const double nrm = std::sqrt(simpson_quadrature(wf, [](double) { return 1.0; }));
            for (double& v : wf.R) {
                v /= nrm;
            }
            wf.normalized = true;
        }
        return wf;
    }

    /// Interior sign changes of an assembled wavefunction.
    static int count_wavefunction_nodes(const RadialFunction& wf)
    {
        int nodes = 0;
        double prev = 0.0;
        for (std::size_t i = 1; i + 1 < wf.R.size(); ++i) {
            const double v = wf.R[i];
            if (v == 0.0) {
                continue;
            }
            if (prev != 0.0 && prev * v < 0.0) {
                ++nodes;
            }
            prev = v;
        }
        return nodes;
    }

    template <class F>
    static double simpson_quadrature(const RadialFunction& wf, F&& weight)
    {
        const std::size_t n = wf.R.size() - 1; // even by construction
        const double h = wf.r[1] - wf.r[0];
        double acc = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            acc += w * wf.R[i] * wf.R[i] * weight(wf.r[i]);
        }
        return acc * h / 3.0;
    }

  private:
    /// Outermost grid index with W <= E, clamped away from both ends.
    int matching_index(double E) const
    {
        const int n = grid_.n_points;
        for (int i = n; i >= 1; --i) {
            if (W_[i] <= E) {
                return std::clamp(i, 3, n - 3);
            }
        }
        return std::clamp(n / 3, 3, n - 3);
    }

    ScaledParams params_;
    ModelKind kind_;
    int l_;
    GridSpec grid_;
    double threshold_;
    PotentialSeries series_;
    std::vector<double> W_;
    double w_min_ = 0.0;
    mutable int sweeps_ = 0;
};

// ---------------------------------------------------------------------------
// Grid selection
// ---------------------------------------------------------------------------

/// Box and step selection: r_max = max(40/kappa_est, 20/lambda) capped at
/// 5000 (kappa_est from the shallow side of the state estimate, so the decay
/// factor at the wall is below 1e-12 whenever the cap is not hit); step
/// targeted at 2e-3 with n_points clamped to [5e4, 2e6] and kept even for the
/// Simpson rule.
inline GridSpec auto_grid(ScaledParams p, ModelKind kind, StateLabel label,
                          std::optional<double> energy_estimate = std::nullopt)
{
    validate_label(label);
    const double threshold = continuum_threshold(p, kind, label.l);
    double e_est;
    if (energy_estimate) {
        e_est = *energy_estimate;
    } else if (kind == ModelKind::Modified && p.lambda > 0.0) {
        const double alpha = analytic::modified_state_alpha(p, label);
        e_est = alpha > 0.0 ? analytic::modified_model_energy(p, label)
                            : threshold - 1e-6 * std::max(1.0, std::abs(threshold));
    } else {
        e_est = analytic::hf_bounds(p, label.nu).upper;
        if (e_est >= threshold) {
            e_est = threshold - 1e-3;
        }
    }
    const double kappa = std::sqrt(std::max(threshold - e_est, 1e-12));
    double r_max = 40.0 / kappa;
    if (p.lambda > 0.0) {
        r_max = std::max(r_max, 20.0 / p.lambda);
    }
    r_max = std::clamp(r_max, 30.0, 5000.0);
    int n = static_cast<int>(std::ceil(r_max / 2e-3));
    n = std::clamp(n, 50'000, 2'000'000);
    n += n % 2;
    return GridSpec{r_max, n};
}

// ---------------------------------------------------------------------------
// Eigenvalue search on one grid
// ---------------------------------------------------------------------------

namespace detail {

struct GridSolveResult {
    double energy;
    double final_mismatch;
};

/// Locates the eigenvalue with n_r nodes on the engine's grid: bisection on
/// the Sturm node count down to a tight window, then a safeguarded secant on
/// the log-derivative mismatch inside it.
inline GridSolveResult solve_on_grid(const ShootingEngine& eng, int n_r, double bracket_lo,
                                     double bracket_hi, const std::string& what)
{
    double lo = bracket_lo;
    double hi = bracket_hi;
    int nodes_lo = eng.count_nodes(lo);
    if (nodes_lo > n_r) {
        lo = eng.potential_minimum() * (1.0 + 1e-12) + 1e-300;
        nodes_lo = eng.count_nodes(lo);
        if (nodes_lo > n_r) {
            fail(errc::grid_too_coarse, "node count does not stabilize near the potential "
                                        "minimum while solving " + what);
        }
    }
    int nodes_hi = eng.count_nodes(hi);
    if (nodes_hi <= n_r) {
        fail(errc::no_bound_state,
             "no level with " + std::to_string(n_r) + " nodes below the continuum threshold (" +
                 what + ")");
    }

    // Node bisection: shrink [lo, hi] to the n_r -> n_r+1 transition.
    const double scale = std::max(std::abs(lo), std::abs(hi));
    for (int iter = 0; iter < 240 && (hi - lo) > 1e-15 * scale; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (eng.count_nodes(mid) <= n_r) {
            lo = mid;
        } else {
            hi = mid;
        }
        // Once the window is tight, try switching to the mismatch root.
        if ((hi - lo) < 1e-3 * std::max(std::abs(lo), 1e-6)) {
            const double g_lo = eng.mismatch(lo);
            const double g_hi = eng.mismatch(hi);
            if (g_lo == 0.0) return {lo, 0.0};
            if (g_hi == 0.0) return {hi, 0.0};
            if (g_lo * g_hi < 0.0) {
                // Safeguarded secant/bisection hybrid on the mismatch; the
                // best evaluated point is the eigenvalue estimate.
                double a = lo, b = hi, fa = g_lo, fb = g_hi;
                double best_e = std::abs(fa) < std::abs(fb) ? a : b;
                double best_g = std::min(std::abs(fa), std::abs(fb));
                for (int k = 0; k < 200; ++k) {
                    double c = b - fb * (b - a) / (fb - fa);
                    const double width = b - a;
                    if (!(c > a && c < b)) {
                        c = 0.5 * (a + b);
                    }
                    const double fc = eng.mismatch(c);
                    if (std::abs(fc) < best_g) {
                        best_g = std::abs(fc);
                        best_e = c;
                    }
                    if (fc == 0.0) {
                        return {c, 0.0};
                    }
                    if (fa * fc < 0.0) {
                        b = c;
                        fb = fc;
                    } else {
                        a = c;
                        fa = fc;
                    }
                    if ((b - a) < 5e-16 * std::max(std::abs(b), 1e-9) || (b - a) >= width) {
                        break;
                    }
                }
                return {best_e, best_g};
            }
        }
    }
    // Mismatch never bracketed; the node transition itself resolved E.
    const double e = 0.5 * (lo + hi);
    return {e, eng.mismatch(e)};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Public solver
// ---------------------------------------------------------------------------

/// Default search bracket for a state: Hellmann-Feynman bounds (padded) for
/// the true model, a closed-form-centered window for the modified one; both
/// end just below the continuum threshold.
inline std::pair<double, double> default_bracket(ScaledParams p, ModelKind kind, StateLabel label,
                                                 double threshold)
{
    const double margin = std::max(1e-12, 1e-13 * std::abs(threshold));
    const double hi = threshold - margin;
    double lo;
    if (kind == ModelKind::TrueHellmann) {
        const auto bounds = analytic::hf_bounds(p, label.nu);
        const double width = std::max(bounds.upper - bounds.lower, 1e-3 * std::abs(bounds.lower));
        lo = bounds.lower - 0.1 * width - 1e-9;
    } else {
        const double e_cf = analytic::modified_model_energy(p, label);
        lo = e_cf - std::max(0.5 * (threshold - e_cf), 1e-6) - 1e-9;
    }
    return {std::min(lo, hi - 1e-12), hi};
}

struct SolveOutput {
    EigenResult eigen;
    RadialFunction wavefunction; ///< empty unless requested
};

/// Numerov eigensolver with node-counted state identification, outermost
/// turning-point matching, and Richardson extrapolation over steps h and h/2
/// (O(h^4) leading error, so E = E_{h/2} + (E_{h/2} - E_h)/15 and
/// est_error = |E_{h/2} - E_h|/15).
inline SolveOutput solve_state_full(ScaledParams p, ModelKind kind, StateLabel label,
                                    std::optional<GridSpec> grid_opt = std::nullopt,
                                    bool want_wavefunction = false)
{
    validate_label(label);
    if (!(p.lambda >= 0.0)) {
        fail(errc::invalid_parameters, "lambda must be non-negative");
    }
    const double threshold = continuum_threshold(p, kind, label.l);
    if (kind == ModelKind::Modified && p.lambda > 0.0) {
        // Census membership is a hard precondition for the modified model.
        if (!(analytic::modified_state_alpha(p, label) > 0.0)) {
            fail(errc::no_bound_state,
                 state_name(label) + " is outside the modified-model census at b=" +
                     std::to_string(p.b) + ", lambda=" + std::to_string(p.lambda));
        }
    }
    const GridSpec coarse = grid_opt ? *grid_opt : auto_grid(p, kind, label);
    const std::string what = state_name(label) + " (" + model_kind_name(kind) + ")";

    ShootingEngine eng_h(p, kind, label.l, coarse);
    const auto [lo0, hi0] = default_bracket(p, kind, label, threshold);
    const auto res_h = detail::solve_on_grid(eng_h, label.n_r(), lo0, hi0, what);

    const GridSpec fine{coarse.r_max, 2 * coarse.n_points};
    ShootingEngine eng_h2(p, kind, label.l, fine);
    // The h/2 eigenvalue sits within the h-grid truncation error; seed a
    // narrow bracket and fall back to the full one if the node counts moved.
    const double w = std::max(1e-9, 1e-5 * std::abs(res_h.energy));
    double lo1 = res_h.energy - w;
    double hi1 = std::min(res_h.energy + w, hi0);
    if (!(eng_h2.count_nodes(lo1) <= label.n_r() && eng_h2.count_nodes(hi1) > label.n_r())) {
        lo1 = lo0;
        hi1 = hi0;
    }
    const auto res_h2 = detail::solve_on_grid(eng_h2, label.n_r(), lo1, hi1, what);

    const double delta = res_h2.energy - res_h.energy;
    const double energy = res_h2.energy + delta / 15.0;
    const double est_error =
        std::max(std::abs(delta) / 15.0, std::abs(energy) * std::numeric_limits<double>::epsilon());

    RadialFunction wf = eng_h2.wavefunction(res_h2.energy, true);
    const int nodes = ShootingEngine::count_wavefunction_nodes(wf);
    if (nodes != label.n_r()) {
        fail(errc::grid_too_coarse, "converged wavefunction for " + what + " has " +
                                        std::to_string(nodes) + " nodes, expected " +
                                        std::to_string(label.n_r()));
    }
    if (!(energy < threshold)) {
        fail(errc::no_bound_state, what + " converged above the continuum threshold");
    }

    SolveOutput out;
    out.eigen = EigenResult{energy,
                            label,
                            Method::Numerov,
                            est_error,
                            nodes,
                            SolveDiagnostics{eng_h.sweeps() + eng_h2.sweeps(),
                                             res_h2.final_mismatch, fine}};
    if (want_wavefunction) {
        out.wavefunction = std::move(wf);
    }
    return out;
}

inline EigenResult solve_state(ScaledParams p, ModelKind kind, StateLabel label,
                               std::optional<GridSpec> grid = std::nullopt)
{
    return solve_state_full(p, kind, label, grid, false).eigen;
}

/// Single-grid eigenvalue without Richardson extrapolation; used for the
/// convergence-order verification and for cheap seeding.
inline double solve_state_raw(ScaledParams p, ModelKind kind, StateLabel label, GridSpec grid)
{
    validate_label(label);
    const double threshold = continuum_threshold(p, kind, label.l);
    ShootingEngine eng(p, kind, label.l, grid);
    const auto [lo, hi] = default_bracket(p, kind, label, threshold);
    return detail::solve_on_grid(eng, label.n_r(), lo, hi,
                                 state_name(label) + " (" + model_kind_name(kind) + ")")
        .energy;
}

/// Low-accuracy eigenvalue on a deliberately small grid (~1e-7 absolute is
/// plenty for seeding and state assignment).
inline double coarse_energy(ScaledParams p, ModelKind kind, StateLabel label)
{
    GridSpec g = auto_grid(p, kind, label);
    g.n_points = std::min(g.n_points, 100'000);
    g.n_points += g.n_points % 2;
    return solve_state_raw(p, kind, label, g);
}

/// Raw eigenvalues at steps h, h/2 and h/4 plus the Richardson order ratio
/// |E_h - E_{h/2}| / |E_{h/2} - E_{h/4}| (about 16 for a clean O(h^4) method).
struct OrderCheck {
    double e_h;
    double e_h2;
    double e_h4;
    double ratio;
};

inline OrderCheck convergence_order(ScaledParams p, ModelKind kind, StateLabel label, GridSpec base)
{
    const double e1 = solve_state_raw(p, kind, label, base);
    const double e2 = solve_state_raw(p, kind, label, GridSpec{base.r_max, 2 * base.n_points});
    const double e4 = solve_state_raw(p, kind, label, GridSpec{base.r_max, 4 * base.n_points});
    return OrderCheck{e1, e2, e4, std::abs(e1 - e2) / std::abs(e2 - e4)};
}

/// Bound-state count for one l channel: Sturm node count just below the
/// continuum threshold.  Independent of the closed-form census, so the two
/// can be cross-checked.
inline int count_bound_states(ScaledParams p, ModelKind kind, int l, double depth_below_threshold = 1e-9)
{
    if (l < 0) {
        fail(errc::invalid_parameters, "l must be non-negative");
    }
    const double threshold = continuum_threshold(p, kind, l);
    const GridSpec g = auto_grid(p, kind, StateLabel{l + 1, l},
                                 threshold - std::max(depth_below_threshold, 1e-9));
    ShootingEngine eng(p, kind, l, g);
    return eng.count_nodes(threshold - depth_below_threshold);
}

/// Simpson-rule expectation value <e^{-lambda r}> over a normalized radial
/// function; lies in (0, 1] for lambda >= 0.
inline double expectation_exp_lambda_r(const RadialFunction& wf, double lambda)
{
    if (!wf.normalized) {
        fail(errc::unnormalized_input, "expectation value requires a normalized wavefunction");
    }
    if (wf.R.size() < 3 || wf.R.size() % 2 == 0) {
        fail(errc::invalid_parameters, "wavefunction grid must have an even interval count");
    }
    return ShootingEngine::simpson_quadrature(
        wf, [lambda](double r) { return std::exp(-lambda * r); });
}

} // namespace numerov
} // namespace hellmann
