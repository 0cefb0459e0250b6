#pragma once

#include <stdexcept>
#include <string>

namespace wcpd {

/// Bad input data or violated precondition. The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine failed to produce a result (non-convergence, degenerate
/// estimate). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wcpd
