#pragma once

#include <stdexcept>
#include <string>

namespace sparsestab {

// Malformed or inconsistent decomposition/report files.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested (phi, t, delta, mode) has no valid term count, e.g. extent <= gamma.
struct infeasible_error : std::runtime_error {
    explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid sampler/benchmark configuration (e.g. correlated mode away from pi/4).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sparsestab
