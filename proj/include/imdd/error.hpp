#pragma once

#include <stdexcept>
#include <string>

namespace imdd {

enum class Errc {
    unsupported_basis,
    degenerate_constellation,
    invalid_symbol,
    invalid_parameter,
    normalization_required,
    solver_failure,
    integration_failure,
    calibration_failure,
    parse_error,
    usage_error,
};

const char* to_string(Errc code) noexcept;

/// Single exception type for every module; the code tells callers which
/// contract was violated.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace imdd
