#pragma once

#include <stdexcept>
#include <string>

namespace cstirap {

// Invalid configuration or parameter-domain violation.  The CLI maps this
// to exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown at run time (step-size underflow, degenerate
// denominators, defective eigensystems).  The CLI maps this to exit code 3.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cstirap
