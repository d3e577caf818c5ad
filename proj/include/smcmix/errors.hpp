#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace smcmix {

// Requested quantity is outside the regime where it is defined (e.g. the
// exact TV formula before the crossing point has passed the initial state).
class ValidityError : public std::runtime_error {
 public:
  explicit ValidityError(const std::string& what) : std::runtime_error(what) {}
};

// A quadrature grid failed its normalization self-test or two grids are
// incompatible.
class GridError : public std::runtime_error {
 public:
  explicit GridError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Failed file read/write (CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace detail

inline void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(name) + " must be positive and finite");
  }
}

inline void require_nonnegative(double x, const char* name) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error(std::string(name) +
                            " must be nonnegative and finite");
  }
}

}  // namespace smcmix
