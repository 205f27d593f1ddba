#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "hellmann/analytic.hpp"
#include "hellmann/errors.hpp"
#include "hellmann/model.hpp"
#include "hellmann/numerov.hpp"

namespace hellmann::rpm {

// Fixed-precision tiers; a requested digit count is mapped to the smallest
// tier that covers it.
using real60 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<60>>;
using real120 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>>;
using real240 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<240>>;

struct RpmConfig {
    int precision_digits = 60; ///< working significant decimal digits, >= 50
    int d_displacement = 0;    ///< Hankel displacement d >= 0
    int D_max = 15;            ///< largest Hankel dimension tried
    double root_tol = 1e-9;    ///< relative agreement between recurring roots
    std::optional<double> seed_energy; ///< optional override of the Numerov seed
};

inline void validate(const RpmConfig& cfg)
{
    if (cfg.precision_digits < 50) {
        fail(errc::invalid_parameters, "precision_digits must be >= 50");
    }
    if (cfg.precision_digits > 240) {
        fail(errc::invalid_parameters, "precision_digits above 240 is not supported");
    }
    if (cfg.d_displacement < 0) {
        fail(errc::invalid_parameters, "d_displacement must be >= 0");
    }
    if (cfg.D_max < 1) {
        fail(errc::invalid_parameters, "D_max must be >= 1");
    }
    const double tol_floor = std::pow(10.0, -(cfg.precision_digits - 10));
    if (cfg.root_tol < tol_floor) {
        fail(errc::invalid_parameters, "root_tol must be >= 10^-(precision_digits-10)");
    }
}

/// Taylor coefficients f_0..f_J of the regularized logarithmic derivative
/// f(r) = (l+1)/r - R'(r)/R(r) at trial energy E.  With s = l+1 and potential
/// coefficients v_{-1} = b-2, v_j = b (-lambda)^{j+1}/(j+1)!, f satisfies
/// f' = f^2 - 2 s f / r + E - v(r), which gives
///   f_0     = -v_{-1} / (2 s),
///   f_{j+1} = [ sum_{k=0..j} f_k f_{j-k} + E delta_{j0} - v_j ] / (j + 1 + 2 s).
template <class Real>
struct CoefficientTable {
    double b = 0.0;
    double lambda = 0.0;
    int l = 0;
    std::vector<Real> f; ///< f[j] = f_j, j = 0..J
};

template <class Real>
CoefficientTable<Real> riccati_coefficients(ScaledParams p, int l, const Real& E, int J)
{
    if (J < 1) {
        fail(errc::invalid_parameters, "coefficient order J must be >= 1");
    }
    if (l < 0) {
        fail(errc::invalid_parameters, "l must be non-negative");
    }
    const Real b = p.b;
    const Real lambda = p.lambda;
    const int s = l + 1;

    CoefficientTable<Real> table;
    table.b = p.b;
    table.lambda = p.lambda;
    table.l = l;
    table.f.reserve(J + 1);
    table.f.push_back(-(b - 2) / (2 * s));

    Real v_pow = -lambda; // (-lambda)^{j+1} / (j+1)!
    for (int j = 0; j < J; ++j) {
        Real acc = 0;
        for (int k = 0; k <= j; ++k) {
            acc += table.f[k] * table.f[j - k];
        }
        if (j == 0) {
            acc += E;
        }
        acc -= b * v_pow;
        table.f.push_back(acc / (j + 1 + 2 * s));
        v_pow *= -lambda / (j + 2);
    }
    return table;
}

/// det of the D x D Hankel matrix with entries M_{ij} = f_{i+j+d+1}, by LU
/// decomposition with partial pivoting in the working precision.
template <class Real>
Real hankel_determinant(const CoefficientTable<Real>& table, int D, int d)
{
    if (D < 1 || d < 0) {
        fail(errc::invalid_parameters, "need D >= 1 and d >= 0");
    }
    const int max_index = 2 * (D - 1) + d + 1;
    if (static_cast<int>(table.f.size()) <= max_index) {
        fail(errc::insufficient_coefficients,
             "Hankel dimension " + std::to_string(D) + " with d=" + std::to_string(d) +
                 " needs coefficients through f_" + std::to_string(max_index));
    }
    std::vector<Real> M(static_cast<std::size_t>(D) * D);
    for (int i = 0; i < D; ++i) {
        for (int j = 0; j < D; ++j) {
            M[static_cast<std::size_t>(i) * D + j] = table.f[i + j + d + 1];
        }
    }
    Real det = 1;
    for (int col = 0; col < D; ++col) {
        int pivot = col;
        Real best = abs(M[static_cast<std::size_t>(col) * D + col]);
        for (int row = col + 1; row < D; ++row) {
            const Real v = abs(M[static_cast<std::size_t>(row) * D + col]);
            if (v > best) {
                best = v;
                pivot = row;
            }
        }
        if (best == 0) {
            return Real(0);
        }
        if (pivot != col) {
            for (int j = col; j < D; ++j) {
                std::swap(M[static_cast<std::size_t>(pivot) * D + j],
                          M[static_cast<std::size_t>(col) * D + j]);
            }
            det = -det;
        }
        const Real diag = M[static_cast<std::size_t>(col) * D + col];
        det *= diag;
        for (int row = col + 1; row < D; ++row) {
            const Real factor = M[static_cast<std::size_t>(row) * D + col] / diag;
            if (factor == 0) {
                continue;
            }
            for (int j = col + 1; j < D; ++j) {
                M[static_cast<std::size_t>(row) * D + j] -=
                    factor * M[static_cast<std::size_t>(col) * D + j];
            }
        }
    }
    return det;
}

/// One row of the root-tracking history.
struct RpmPoint {
    int D;
    double root;
    double delta; ///< |root - previous accepted root|, 0 for the first
};

struct RpmResult {
    EigenResult eigen;
    std::vector<RpmPoint> history;
    bool delta_monotone_from_d4 = true; ///< |E_D - E_{D+1}| non-increasing for D >= 4
};

namespace detail {

template <class Real>
struct NewtonOutcome {
    Real root;
    Real last_step;
    bool accepted = false;
    bool left_window = false;
    int iterations = 0;
};

/// Damped Newton on the Hankel determinant at fixed D, confined to
/// [seed*(1+window), seed*(1-window)].  The derivative is a central
/// difference with a step far below the tracking tolerances but far above
/// the precision floor.  Steps stop shrinking once the determinant hits its
/// cancellation noise, so a slow oscillation below root_tol still counts as
/// an accepted root.
template <class Real>
NewtonOutcome<Real> newton_track(ScaledParams p, int l, int D, int d, const Real& start,
                                 const Real& seed, double window, int digits, double root_tol)
{
    const int J = 2 * D + d;
    const Real fd_step = pow(Real(10), -(2 * digits) / 5);
    const Real noise_floor = pow(Real(10), -(digits - 6));
    Real accept_tol = Real(root_tol) / 100;
    if (accept_tol < noise_floor) {
        accept_tol = noise_floor;
    }
    NewtonOutcome<Real> out;
    Real x = start;
    Real last_step = 0;
    for (int it = 0; it < 80; ++it) {
        ++out.iterations;
        const Real F = hankel_determinant(riccati_coefficients(p, l, x, J), D, d);
        const Real h = abs(x) * fd_step;
        const Real Fp = hankel_determinant(riccati_coefficients(p, l, x + h, J), D, d);
        const Real Fm = hankel_determinant(riccati_coefficients(p, l, x - h, J), D, d);
        const Real deriv = (Fp - Fm) / (2 * h);
        if (deriv == 0) {
            return out;
        }
        Real step = F / deriv;
        const Real cap = abs(x) / 20;
        while (abs(step) > cap) {
            step /= 2;
        }
        x -= step;
        last_step = abs(step);
        if (abs(x - seed) > window * abs(seed)) {
            out.left_window = true;
            return out;
        }
        if (last_step < accept_tol * abs(x)) {
            out.root = x;
            out.last_step = last_step;
            out.accepted = true;
            return out;
        }
    }
    if (last_step < Real(root_tol) * abs(x)) {
        out.root = x;
        out.last_step = last_step;
        out.accepted = true;
    }
    return out;
}

/// A Newton landing only counts once the determinant provably changes sign
/// across it; near-threshold states have D values whose relevant root pair
/// has moved off the real axis, and those must be skipped, not trusted.
template <class Real>
bool verify_sign_change(ScaledParams p, int l, int D, int d, const Real& x, const Real& radius)
{
    const int J = 2 * D + d;
    const Real f_lo = hankel_determinant(riccati_coefficients(p, l, x - radius, J), D, d);
    const Real f_hi = hankel_determinant(riccati_coefficients(p, l, x + radius, J), D, d);
    return f_lo * f_hi < 0;
}

template <class Real>
RpmResult rpm_eigenvalue_impl(ScaledParams p, StateLabel label, const RpmConfig& cfg,
                              double seed_energy, int digits)
{
    constexpr double window = 0.10;
    const Real seed = seed_energy;
    const int n_r = label.n_r();

    RpmResult result;
    Real current = seed;
    struct Verified {
        int D;
        Real root;
    };
    std::vector<Verified> accepted;
    int total_iterations = 0;
    bool converged = false;
    bool ever_left_window = false;
    Real final_root = 0;
    double final_delta = 0.0;
    int D_final = 0;

    // Low-D determinants do not resolve shallow excited states; start deeper
    // for larger node counts.
    const int d_start = std::min(std::max(2, 2 + 2 * n_r), cfg.D_max);

    for (int D = (cfg.D_max == 1 ? 1 : d_start); D <= cfg.D_max; ++D) {
        const auto outcome = newton_track<Real>(p, label.l, D, cfg.d_displacement, current, seed,
                                                window, digits, cfg.root_tol);
        total_iterations += outcome.iterations;
        if (!outcome.accepted) {
            ever_left_window = ever_left_window || outcome.left_window;
            continue;
        }
        const Real root = outcome.root;
        const Real radius =
            std::max(Real(16) * outcome.last_step, abs(root) * Real(cfg.root_tol) / 10);
        if (!verify_sign_change(p, label.l, D, cfg.d_displacement, root, radius)) {
            continue;
        }
        const double delta =
            accepted.empty() ? 0.0 : static_cast<double>(abs(root - accepted.back().root));
        result.history.push_back({D, static_cast<double>(root), delta});

        if (cfg.D_max == 1) {
            converged = true;
            final_root = root;
            final_delta = 0.0;
            D_final = D;
            break;
        }
        // Convergence by recurrence: a root that reappears (at any earlier
        // tracked D) within tolerance is the eigenvalue; spurious rattling
        // roots do not reproduce across D.
        for (const auto& earlier : accepted) {
            const double diff = static_cast<double>(abs(root - earlier.root));
            if (diff < cfg.root_tol * static_cast<double>(abs(root))) {
                converged = true;
                final_root = root;
                final_delta = diff;
                D_final = D;
                break;
            }
        }
        if (converged) {
            break;
        }
        accepted.push_back({D, root});
        current = root;
    }
    if (!converged) {
        if (accepted.empty() && ever_left_window) {
            fail(errc::root_divergence,
                 "Newton tracking left the trust window around the seed for every D while "
                 "solving " + state_name(label));
        }
        fail(errc::convergence_failure,
             "Hankel roots for " + state_name(label) + " did not recur to relative " +
                 std::to_string(cfg.root_tol) + " by D_max=" + std::to_string(cfg.D_max));
    }

    // Monotone shrinkage of successive deltas from D >= 4, checked above the
    // agreed tolerance where root scatter takes over.  Kept as a logged flag.
    const double floor =
        cfg.root_tol * std::abs(static_cast<double>(final_root)) / 10.0;
    for (std::size_t i = 1; i + 1 < result.history.size(); ++i) {
        const auto& a = result.history[i];
        const auto& b = result.history[i + 1];
        if (a.D >= 4 && a.delta > floor && b.delta > floor && b.delta > a.delta) {
            result.delta_monotone_from_d4 = false;
        }
    }

    result.eigen.energy = static_cast<double>(final_root);
    result.eigen.label = label;
    result.eigen.method = Method::RPM;
    result.eigen.est_error = std::max(
        final_delta, std::abs(result.eigen.energy) * std::pow(10.0, -(digits - 10)));
    result.eigen.nodes = n_r;
    result.eigen.diag.iterations = total_iterations;
    result.eigen.diag.final_mismatch = final_delta;
    result.eigen.diag.grid = GridSpec{0.0, D_final};
    return result;
}

} // namespace detail

/// Riccati-Pade eigenvalue: tracks the root of the D x D Hankel determinant
/// from D upward until successive roots agree to root_tol, seeding from (and
/// validating the converged state identity against) a coarse Numerov run.
inline RpmResult rpm_eigenvalue(ScaledParams p, StateLabel label, RpmConfig cfg = {})
{
    validate(cfg);
    validate_label(label);
    if (!(p.lambda >= 0.0)) {
        fail(errc::invalid_parameters, "lambda must be non-negative");
    }

    // Coarse Numerov anchors: the target state and its same-l neighbours.
    const double anchor = numerov::coarse_energy(p, ModelKind::TrueHellmann, label);
    std::optional<double> anchor_below, anchor_above;
    if (label.nu - 1 >= label.l + 1) {
        anchor_below =
            numerov::coarse_energy(p, ModelKind::TrueHellmann, StateLabel{label.nu - 1, label.l});
    }
    anchor_above =
        numerov::coarse_energy(p, ModelKind::TrueHellmann, StateLabel{label.nu + 1, label.l});

    double seed;
    if (cfg.seed_energy) {
        seed = *cfg.seed_energy;
        const auto bounds = analytic::hf_bounds(p, label.nu);
        if (seed < bounds.lower - 1e-9 || seed > bounds.upper + 1e-9) {
            fail(errc::invalid_parameters, "seed energy lies outside the Hellmann-Feynman bounds");
        }
    } else {
        seed = anchor;
    }

    RpmResult result;
    switch (cfg.precision_digits <= 60 ? 60 : (cfg.precision_digits <= 120 ? 120 : 240)) {
        case 60:
            result = detail::rpm_eigenvalue_impl<real60>(p, label, cfg, seed, 60);
            break;
        case 120:
            result = detail::rpm_eigenvalue_impl<real120>(p, label, cfg, seed, 120);
            break;
        default:
            result = detail::rpm_eigenvalue_impl<real240>(p, label, cfg, seed, 240);
            break;
    }

    // Nearest-state assignment: the converged root must sit closest to the
    // requested label's Numerov anchor.
    const double e = result.eigen.energy;
    const double d_target = std::abs(e - anchor);
    if ((anchor_below && std::abs(e - *anchor_below) < d_target) ||
        (anchor_above && std::abs(e - *anchor_above) < d_target)) {
        fail(errc::state_mismatch,
             "converged Riccati-Pade root " + std::to_string(e) +
                 " is closer to a neighbouring level than to " + state_name(label));
    }
    return result;
}

/// Convergence history as CSV rows "D,root,delta".
inline std::string history_csv(const RpmResult& r)
{
    std::string out = "D,root,abs_delta\n";
    char buf[96];
    for (const auto& pt : r.history) {
        std::snprintf(buf, sizeof(buf), "%d,%.18g,%.3g\n", pt.D, pt.root, pt.delta);
        out += buf;
    }
    return out;
}

} // namespace hellmann::rpm
