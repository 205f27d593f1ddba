#pragma once

#include <cctype>
#include <cmath>
#include <string>

#include "hellmann/errors.hpp"

namespace hellmann {

/// Which radial model a solver acts on.
///
/// TrueHellmann is the screened-Coulomb potential itself; Modified is the
/// exactly solvable variant obtained by replacing 1/r and 1/r^2 with
/// lambda/(1-e^{-lambda r}) and its square in both the Coulomb and the
/// centrifugal term.
enum class ModelKind { TrueHellmann, Modified };

inline const char* model_kind_name(ModelKind k)
{
    return k == ModelKind::TrueHellmann ? "hellmann" : "modified";
}

/// Physical parameterization: V(r) = (-a + b e^{-lambda r}) / r with kinetic
/// prefactor hbar^2/m (the two constants only ever enter through this ratio).
struct PotentialParams {
    double a;             ///< Coulomb strength, energy*length, > 0
    double b;             ///< screened strength, energy*length, any sign
    double lambda;        ///< screening rate, 1/length, >= 0
    double hbar2_over_m;  ///< hbar^2/m, energy*length^2, > 0
};

/// Dimensionless parameterization in the scaled units a0 = hbar^2/(m a) for
/// length and m a^2/(2 hbar^2) for energy.  The radial equation becomes
///   -R'' + [l(l+1)/r^2 - 2/r + (b/r) e^{-lambda r}] R = E R,
/// i.e. Coulomb charge fixed at 2 and 2m/hbar^2 = 1.  All solvers operate in
/// these units.
struct ScaledParams {
    double b = 0.0;       ///< dimensionless screened strength, = 2B/A
    double lambda = 0.0;  ///< dimensionless screening rate, = a0*C, >= 0

    bool operator==(const ScaledParams&) const = default;
};

/// Spectroscopic identification of a bound state: nu = n_r + l + 1 with n_r
/// the radial node count; 1s, 2s, 2p, ... as in hydrogen.
struct StateLabel {
    int nu; ///< principal quantum number, >= 1
    int l;  ///< angular momentum, >= 0, <= nu-1

    int n_r() const { return nu - l - 1; }

    bool operator==(const StateLabel&) const = default;
    auto operator<=>(const StateLabel&) const = default;
};

inline void validate_label(StateLabel s)
{
    if (s.nu < 1 || s.l < 0 || s.nu < s.l + 1) {
        fail(errc::invalid_parameters,
             "state label requires nu >= l+1 >= 1, got nu=" + std::to_string(s.nu) +
                 " l=" + std::to_string(s.l));
    }
}

/// "1s", "2p", ... ; angular letters beyond k fall back to "<nu>(l=<l>)".
inline std::string state_name(StateLabel s)
{
    static constexpr const char* letters = "spdfghik";
    if (s.l < 8) {
        return std::to_string(s.nu) + letters[s.l];
    }
    return std::to_string(s.nu) + "(l=" + std::to_string(s.l) + ")";
}

inline StateLabel parse_state_name(const std::string& name)
{
    static constexpr const char* letters = "spdfghik";
    if (name.size() >= 2) {
        const char c = static_cast<char>(std::tolower(name.back()));
        for (int l = 0; l < 8; ++l) {
            if (letters[l] == c) {
                try {
                    const int nu = std::stoi(name.substr(0, name.size() - 1));
                    StateLabel s{nu, l};
                    validate_label(s);
                    return s;
                } catch (const std::invalid_argument&) {
                    break;
                } catch (const std::out_of_range&) {
                    break;
                }
            }
        }
    }
    fail(errc::invalid_parameters, "cannot parse state label '" + name + "'");
}

/// Convert the physical parameterization (A, B, C, hbar^2/m) to scaled units:
/// b = 2B/A, lambda = (hbar^2/(mA)) * C.
inline ScaledParams to_scaled(double A, double B, double C, double hbar2_over_m)
{
    if (!(A > 0.0)) {
        fail(errc::invalid_parameters, "Coulomb strength A must be positive");
    }
    if (!(hbar2_over_m > 0.0)) {
        fail(errc::invalid_parameters, "hbar^2/m must be positive");
    }
    if (!(C >= 0.0)) {
        fail(errc::invalid_parameters, "screening rate C must be non-negative");
    }
    return ScaledParams{2.0 * B / A, (hbar2_over_m / A) * C};
}

/// Inverse of to_scaled at a chosen gauge (A, hbar^2/m).
inline PotentialParams to_physical(ScaledParams p, double A, double hbar2_over_m)
{
    if (!(A > 0.0) || !(hbar2_over_m > 0.0)) {
        fail(errc::invalid_parameters, "A and hbar^2/m must be positive");
    }
    return PotentialParams{A, 0.5 * p.b * A, p.lambda * A / hbar2_over_m, hbar2_over_m};
}

/// lambda/(1 - e^{-lambda r}), the substituted form of 1/r.
///
/// For lambda*r < 1e-4 a series branch avoids the cancellation in
/// 1 - e^{-lambda r}; its truncation error is O((lambda r)^6 / r), far below
/// double rounding on that range.
inline double inverse_r_substituted(double lambda, double r)
{
    if (!(r > 0.0)) {
        fail(errc::domain_error, "r must be positive");
    }
    const double x = lambda * r;
    if (x < 1e-4) {
        return 1.0 / r + lambda / 2.0 + lambda * x / 12.0 - lambda * x * x * x / 720.0;
    }
    return lambda / (-std::expm1(-x));
}

/// lambda^2/(1 - e^{-lambda r})^2, the substituted form of 1/r^2.
inline double inverse_r2_substituted(double lambda, double r)
{
    const double phi = inverse_r_substituted(lambda, r);
    return phi * phi;
}

/// Effective radial potential l(l+1)/r^2 + v(r) in scaled units.
///
/// TrueHellmann: l(l+1)/r^2 - 2/r + (b/r) e^{-lambda r}.
/// Modified:     l(l+1) phi^2 + (b-2) phi - b lambda, phi = lambda/(1-e^{-lambda r});
/// the last two terms regroup -2 phi + b lambda e^{-lambda r}/(1-e^{-lambda r}).
/// At lambda = 0 both reduce to l(l+1)/r^2 + (b-2)/r.
inline double potential_value(ScaledParams p, ModelKind kind, int l, double r)
{
    if (!(r > 0.0)) {
        fail(errc::domain_error, "r must be positive");
    }
    if (l < 0) {
        fail(errc::invalid_parameters, "l must be non-negative");
    }
    const double L = static_cast<double>(l) * (l + 1);
    if (kind == ModelKind::TrueHellmann) {
        return L / (r * r) - 2.0 / r + (p.b / r) * std::exp(-p.lambda * r);
    }
    const double phi = inverse_r_substituted(p.lambda, r);
    return L * phi * phi + (p.b - 2.0) * phi - p.b * p.lambda;
}

/// r -> infinity limit of the effective potential; a state is bound iff its
/// energy lies strictly below this.  The Modified potential does not vanish
/// at infinity: phi -> lambda.
inline double continuum_threshold(ScaledParams p, ModelKind kind, int l)
{
    if (kind == ModelKind::TrueHellmann) {
        return 0.0;
    }
    const double L = static_cast<double>(l) * (l + 1);
    return -2.0 * p.lambda + p.lambda * p.lambda * L;
}

} // namespace hellmann
