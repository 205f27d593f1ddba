#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hellmann/errors.hpp"
#include "hellmann/model.hpp"

namespace hellmann::analytic {

// ---------------------------------------------------------------------------
// Substitution series
// ---------------------------------------------------------------------------

enum class SeriesKind { InverseR, InverseR2 };

struct SeriesTerm {
    int power;          ///< power of r
    double coefficient; ///< includes the lambda factors
};

struct SubstitutionSeries {
    std::vector<SeriesTerm> terms;
    double value; ///< truncated series evaluated at r
};

/// Truncated expansion of the substituted forms around lambda*r = 0:
///   lambda/(1-e^{-lambda r})     = 1/r + lambda/2 + lambda^2 r/12 + 0
///                                  - lambda^4 r^3/720 + 0 + ...
///   lambda^2/(1-e^{-lambda r})^2 = 1/r^2 + lambda/r + 5 lambda^2/12
///                                  + lambda^3 r/12 + lambda^4 r^2/240
///                                  - lambda^5 r^3/720 + ...
/// `order` counts series terms (including the leading singular one); at most
/// six are implemented.
inline SubstitutionSeries substitution_series(SeriesKind which, double lambda, double r, int order)
{
    if (!(r > 0.0)) {
        fail(errc::domain_error, "r must be positive");
    }
    if (!(lambda >= 0.0)) {
        fail(errc::invalid_parameters, "lambda must be non-negative");
    }
    constexpr int max_terms = 6;
    if (order < 1 || order > max_terms) {
        fail(errc::unsupported_order,
             "series order must be in [1, " + std::to_string(max_terms) + "], got " +
                 std::to_string(order));
    }
    const double lm = lambda;
    SubstitutionSeries out;
    if (which == SeriesKind::InverseR) {
        const double coeff[max_terms] = {1.0,
                                         lm / 2.0,
                                         lm * lm / 12.0,
                                         0.0,
                                         -lm * lm * lm * lm / 720.0,
                                         0.0};
        for (int k = 0; k < order; ++k) {
            out.terms.push_back({k - 1, coeff[k]});
        }
    } else {
        const double lm2 = lm * lm;
        const double coeff[max_terms] = {1.0,
                                         lm,
                                         5.0 * lm2 / 12.0,
                                         lm2 * lm / 12.0,
                                         lm2 * lm2 / 240.0,
                                         -lm2 * lm2 * lm / 720.0};
        for (int k = 0; k < order; ++k) {
            out.terms.push_back({k - 2, coeff[k]});
        }
    }
    double v = 0.0;
    for (const auto& t : out.terms) {
        v += t.coefficient * std::pow(r, t.power);
    }
    out.value = v;
    return out;
}

// ---------------------------------------------------------------------------
// Exponent and quantization audits
// ---------------------------------------------------------------------------

/// The two exponents of the bound-state ansatz psi(u) = u^{lambda1} (1-u)^{lambda2} F(u),
/// u = e^{-lambda r}.  lambda1_sq_as_printed carries the published sign of the
/// (E + 2 lambda)/lambda^2 term; lambda1_sq_derived carries the reversed sign,
/// which is the one compatible with decay at infinity.  Both are kept so the
/// discrepancy stays visible.
struct ExponentPair {
    double lambda1 = std::numeric_limits<double>::quiet_NaN(); ///< sqrt of the derived value when feasible
    double lambda2 = 0.0;                                      ///< positive branch, = l+1
    double lambda1_sq_as_printed = std::numeric_limits<double>::quiet_NaN();
    double lambda1_sq_derived = std::numeric_limits<double>::quiet_NaN();
    bool feasible = false;      ///< lambda1 real and positive (bound-state compatible)
    bool coulomb_limit = false; ///< lambda = 0: exponents degenerate, no audit possible
};

inline ExponentPair exponents(ScaledParams p, int l, double E)
{
    if (l < 0) {
        fail(errc::invalid_parameters, "l must be non-negative");
    }
    const double L = static_cast<double>(l) * (l + 1);
    ExponentPair out;
    out.lambda2 = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * L)); // = l+1
    if (p.lambda == 0.0) {
        out.coulomb_limit = true;
        return out;
    }
    const double lm2 = p.lambda * p.lambda;
    out.lambda1_sq_as_printed = (E + 2.0 * p.lambda) / lm2 + L;
    out.lambda1_sq_derived = -(E + 2.0 * p.lambda) / lm2 + L;
    if (out.lambda1_sq_derived > 0.0 && E + 2.0 * p.lambda < 0.0) {
        out.lambda1 = std::sqrt(out.lambda1_sq_derived);
        out.feasible = true;
    }
    return out;
}

enum class AuditSubject { QuantizationSign, LambdaIndependenceAtOrigin, FormulaVsTable, ExponentSign };
enum class AuditVerdict { Infeasible, Mismatch, Confirmed };

inline const char* audit_subject_name(AuditSubject s)
{
    switch (s) {
        case AuditSubject::QuantizationSign: return "quantization-sign";
        case AuditSubject::LambdaIndependenceAtOrigin: return "lambda-independence-at-origin";
        case AuditSubject::FormulaVsTable: return "formula-vs-table";
        case AuditSubject::ExponentSign: return "exponent-sign";
    }
    return "unknown";
}

inline const char* audit_verdict_name(AuditVerdict v)
{
    switch (v) {
        case AuditVerdict::Infeasible: return "infeasible";
        case AuditVerdict::Mismatch: return "mismatch";
        case AuditVerdict::Confirmed: return "confirmed";
    }
    return "unknown";
}

/// One audited claim with enough numbers to replay the comparison.
struct AuditFinding {
    AuditSubject subject;
    AuditVerdict verdict;
    std::string detail;
    std::vector<std::pair<std::string, double>> evidence;
};

/// Audits the published polynomial-termination condition
///   -n = lambda1 + lambda2 + sqrt(-(E + b lambda))/lambda
/// (scaled units, positive exponents, positive square root).  The left side
/// is <= 0 while the right side is >= lambda2 = l+1 > 0 for every admissible
/// energy, so no solution exists; the finding carries the scanned minimum of
/// the right side as evidence.
inline AuditFinding quantization_audit(ScaledParams p, int l, int n)
{
    if (n < 0) {
        fail(errc::invalid_parameters, "n must be non-negative");
    }
    if (l < 0) {
        fail(errc::invalid_parameters, "l must be non-negative");
    }
    if (!(p.lambda > 0.0)) {
        fail(errc::invalid_parameters, "quantization audit requires lambda > 0");
    }
    const double L = static_cast<double>(l) * (l + 1);
    // Admissible energies: both square roots real and exponents positive.
    const double e_hi = std::min(-2.0 * p.lambda + p.lambda * p.lambda * L, -p.b * p.lambda);
    const double e_lo = e_hi - std::max(4.0, 8.0 * std::abs(e_hi));

    double rhs_min = std::numeric_limits<double>::infinity();
    double argmin = e_lo;
    const int samples = 401;
    for (int i = 1; i < samples; ++i) {
        const double E = e_lo + (e_hi - e_lo) * i / samples;
        const ExponentPair ex = exponents(p, l, E);
        if (!ex.feasible) {
            continue;
        }
        const double root = std::sqrt(std::max(-(E + p.b * p.lambda), 0.0)) / p.lambda;
        const double rhs = ex.lambda1 + ex.lambda2 + root;
        if (rhs < rhs_min) {
            rhs_min = rhs;
            argmin = E;
        }
    }
    const double lhs = -static_cast<double>(n);
    AuditFinding f;
    f.subject = AuditSubject::QuantizationSign;
    f.verdict = AuditVerdict::Infeasible;
    f.detail = "left side -n <= 0 while the right side stays >= l+1 > 0 over every admissible "
               "energy; the termination condition has no solution";
    f.evidence = {{"b", p.b},
                  {"lambda", p.lambda},
                  {"l", static_cast<double>(l)},
                  {"n", static_cast<double>(n)},
                  {"lhs", lhs},
                  {"rhs_min", rhs_min},
                  {"rhs_min_at_E", argmin},
                  {"lambda2", static_cast<double>(l + 1)}};
    return f;
}

/// Audits the published exponent: as printed, lambda1^2 has the sign of
/// (E + 2 lambda)/lambda^2 + l(l+1), which is negative for every s-wave
/// bound-state energy; the decaying solution needs the opposite sign.
inline AuditFinding exponent_sign_audit(ScaledParams p, int l, double E_sample)
{
    const ExponentPair ex = exponents(p, l, E_sample);
    AuditFinding f;
    f.subject = AuditSubject::ExponentSign;
    f.verdict = AuditVerdict::Infeasible;
    f.detail = "printed lambda1^2 is non-positive at bound-state energies; feasibility requires "
               "reversing the sign of the (E + 2 lambda) term";
    f.evidence = {{"b", p.b},
                  {"lambda", p.lambda},
                  {"l", static_cast<double>(l)},
                  {"E", E_sample},
                  {"lambda1_sq_as_printed", ex.lambda1_sq_as_printed},
                  {"lambda1_sq_derived", ex.lambda1_sq_derived}};
    if (ex.lambda1_sq_as_printed > 0.0) {
        f.verdict = AuditVerdict::Confirmed;
        f.detail = "printed lambda1^2 is positive at this energy";
    }
    return f;
}

// ---------------------------------------------------------------------------
// Published closed-form energy (audited, kept exactly as printed)
// ---------------------------------------------------------------------------

/// Evaluates the published closed-form energy expression term by term:
///   E = -m/(8 hbar^2 (n+l+1)^2) { 4(a^2+b^2)
///       + 4 (hbar^2/m) lambda b [2l^2 + (n+l)^2 + l(3+2n)]
///       + lambda^2 (hbar^4/m^2) [l(1+2n) + (n+l)^2]^2
///       + 4a [ -2b + lambda (hbar^2/m) (l(1+2n) + (n+l)^2) ] }.
/// At n = l = 0 every lambda-dependent bracket vanishes, so the value is
/// exactly independent of lambda.
inline double arda_sever_energy(double a, double b, double lambda, double hbar2_over_m, int n, int l)
{
    if (n < 0 || l < 0) {
        fail(errc::invalid_parameters, "n and l must be non-negative");
    }
    if (!(hbar2_over_m > 0.0)) {
        fail(errc::invalid_parameters, "hbar^2/m must be positive");
    }
    const double h2m = hbar2_over_m;
    const double nl = static_cast<double>(n + l);
    const double dl = static_cast<double>(l);
    const double dn = static_cast<double>(n);
    const double principal = dn + dl + 1.0;

    const double bracket1 = 2.0 * dl * dl + nl * nl + dl * (3.0 + 2.0 * dn);
    const double bracket2 = dl * (1.0 + 2.0 * dn) + nl * nl;

    const double t1 = 4.0 * (a * a + b * b);
    const double t2 = 4.0 * h2m * lambda * b * bracket1;
    const double t3 = lambda * lambda * h2m * h2m * bracket2 * bracket2;
    const double t4 = 4.0 * a * (-2.0 * b + lambda * h2m * bracket2);

    return -(t1 + t2 + t3 + t4) / (8.0 * h2m * principal * principal);
}

/// Hydrogenic level -(m/hbar^2) a^2 / (2 nu^2) for the pure Coulomb potential -a/r.
inline double hydrogenic_energy(double a, double hbar2_over_m, int nu)
{
    if (nu < 1) {
        fail(errc::invalid_parameters, "nu must be >= 1");
    }
    if (!(hbar2_over_m > 0.0)) {
        fail(errc::invalid_parameters, "hbar^2/m must be positive");
    }
    return -a * a / (2.0 * hbar2_over_m * static_cast<double>(nu) * nu);
}

// ---------------------------------------------------------------------------
// Exact spectrum of the Modified model
// ---------------------------------------------------------------------------

/// Decay exponent (in units of lambda) of the Modified-model state:
///   alpha = [ (2-b)/lambda - nu^2 - l(l+1) ] / (2 nu).
/// The state is bound iff alpha > 0.
inline double modified_state_alpha(ScaledParams p, StateLabel s)
{
    validate_label(s);
    if (!(p.lambda > 0.0)) {
        fail(errc::invalid_parameters, "alpha is defined for lambda > 0");
    }
    const double N = static_cast<double>(s.nu);
    const double L = static_cast<double>(s.l) * (s.l + 1);
    return ((2.0 - p.b) / p.lambda - N * N - L) / (2.0 * N);
}

/// Exact eigenvalue of the Modified model:
///   E = -2 lambda - lambda^2 (alpha^2 - l(l+1)),
/// which lies below the continuum threshold -2 lambda + lambda^2 l(l+1) by
/// lambda^2 alpha^2.  At lambda = 0 this degenerates to the Coulomb value
/// -(2-b)^2/(4 nu^2).
inline double modified_model_energy(ScaledParams p, StateLabel s)
{
    validate_label(s);
    if (p.lambda == 0.0) {
        const double q = 2.0 - p.b;
        return -q * q / (4.0 * static_cast<double>(s.nu) * s.nu);
    }
    const double alpha = modified_state_alpha(p, s);
    if (!(alpha > 0.0)) {
        fail(errc::no_bound_state,
             "modified model does not bind " + state_name(s) + " at b=" + std::to_string(p.b) +
                 ", lambda=" + std::to_string(p.lambda) + " (alpha=" + std::to_string(alpha) + ")");
    }
    const double L = static_cast<double>(s.l) * (s.l + 1);
    return -2.0 * p.lambda - p.lambda * p.lambda * (alpha * alpha - L);
}

struct CensusEntry {
    StateLabel label;
    double energy;
    double alpha;
};

/// Finite bound-state census of the Modified model.  `infinite` marks the
/// lambda = 0 degenerate case (pure Coulomb, infinitely many states) and is a
/// distinguished result, not an error.
struct Census {
    bool infinite = false;
    std::vector<CensusEntry> states; ///< ordered by (l, nu)

    int count() const { return static_cast<int>(states.size()); }
};

/// Enumerates the labels with alpha > 0, i.e. nu^2 + l(l+1) < (2-b)/lambda;
/// strictly, since alpha = 0 sits exactly at the continuum threshold and is
/// not normalizable.
inline Census modified_model_census(ScaledParams p, std::optional<int> l_filter = std::nullopt)
{
    if (!(p.lambda >= 0.0)) {
        fail(errc::invalid_parameters, "lambda must be non-negative");
    }
    Census census;
    if (p.lambda == 0.0) {
        census.infinite = p.b < 2.0;
        return census;
    }
    auto scan_l = [&](int l) {
        int found = 0;
        for (int nu = l + 1;; ++nu) {
            const StateLabel s{nu, l};
            const double alpha = modified_state_alpha(p, s);
            if (!(alpha > 0.0)) {
                break;
            }
            census.states.push_back({s, modified_model_energy(p, s), alpha});
            ++found;
        }
        return found;
    };
    if (l_filter) {
        if (*l_filter < 0) {
            fail(errc::invalid_parameters, "l must be non-negative");
        }
        scan_l(*l_filter);
    } else {
        for (int l = 0;; ++l) {
            if (scan_l(l) == 0) {
                break; // the minimal nu^2 + l(l+1) grows with l, nothing beyond
            }
        }
    }
    return census;
}

struct CriticalLambda {
    double value;
    bool binds; ///< false when b >= 2 (no attraction left in the modified model)
};

/// Screening rate at which the Modified census becomes empty: lambda_crit = 2-b.
/// For lambda >= lambda_crit no state satisfies nu^2 + l(l+1) < (2-b)/lambda.
inline CriticalLambda critical_lambda(double b)
{
    if (b >= 2.0) {
        return {0.0, false};
    }
    return {2.0 - b, true};
}

// ---------------------------------------------------------------------------
// Hellmann-Feynman bounds
// ---------------------------------------------------------------------------

enum class BSignCase { Positive, Negative };

/// Two-sided Coulombic bounds on a bound-state energy, from
/// dE/dlambda = -b <e^{-lambda r}>:
///   E(lambda=0)       = -(2-b)^2/(4 nu^2),
///   E(lambda->inf)    = -1/nu^2    (hydrogenic formula with charge 2).
/// For b > 0 the energy increases from the lambda->inf limit to the lambda=0
/// one; for b < 0 the roles swap.  b = 0 degenerates to a point.
struct BoundsInterval {
    double lower;
    double upper;
    int nu;
    BSignCase b_sign_case;
};

inline BoundsInterval hf_bounds(ScaledParams p, int nu)
{
    if (nu < 1) {
        fail(errc::invalid_parameters, "nu must be >= 1");
    }
    const double q = 2.0 - p.b;
    const double e_lambda0 = -q * q / (4.0 * static_cast<double>(nu) * nu);
    const double e_infinity = hydrogenic_energy(2.0, 2.0, nu); // charge 2 in scaled units
    if (p.b < 0.0) {
        return {e_lambda0, e_infinity, nu, BSignCase::Negative};
    }
    return {e_infinity, e_lambda0, nu, BSignCase::Positive};
}

} // namespace hellmann::analytic
