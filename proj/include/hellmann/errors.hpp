#pragma once

#include <stdexcept>
#include <string>

namespace hellmann {

/// Failure categories shared by all modules. The CLI maps these onto its
/// documented exit codes.
enum class errc {
    invalid_parameters,
    domain_error,
    unsupported_order,
    insufficient_coefficients,
    unnormalized_input,
    no_bound_state,
    convergence_failure,
    grid_too_coarse,
    state_mismatch,
    root_divergence,
};

inline const char* errc_name(errc c)
{
    switch (c) {
        case errc::invalid_parameters: return "invalid-parameters";
        case errc::domain_error: return "domain-error";
        case errc::unsupported_order: return "unsupported-order";
        case errc::insufficient_coefficients: return "insufficient-coefficients";
        case errc::unnormalized_input: return "unnormalized-input";
        case errc::no_bound_state: return "no-bound-state";
        case errc::convergence_failure: return "convergence-failure";
        case errc::grid_too_coarse: return "grid-too-coarse";
        case errc::state_mismatch: return "state-mismatch";
        case errc::root_divergence: return "root-divergence";
    }
    return "unknown";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(what)
        , code_(code)
    {
    }

    errc code() const { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what)
{
    throw error(code, std::string(errc_name(code)) + ": " + what);
}

} // namespace hellmann
