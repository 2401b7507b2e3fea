#pragma once

#include <stdexcept>
#include <string>

namespace ising {

/// Thrown when an iterative numerical procedure (quadrature, ODE integration,
/// root bracketing) cannot reach its requested accuracy.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ising
