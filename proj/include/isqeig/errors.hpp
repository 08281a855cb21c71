#pragma once

#include <stdexcept>
#include <string>

namespace isq {

/// Non-convergence, loss of definiteness and similar failures of a numerical kernel.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isq
