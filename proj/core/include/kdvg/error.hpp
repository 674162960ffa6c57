#pragma once
#include <stdexcept>
#include <string>

namespace kdvg {

// Bad user input: grid sizes, budgets, malformed config. CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A broken invariant inside the library (symmetry, residuals, inconsistent identities).
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's mathematical domain.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BlowUpError : std::runtime_error {
  BlowUpError(double t_, double max_coeff_)
      : std::runtime_error("non-finite solution at t=" + std::to_string(t_) +
                           " (max|u_hat| before step " + std::to_string(max_coeff_) + ")"),
        t(t_), max_coeff(max_coeff_) {}
  double t;
  double max_coeff;
};

}  // namespace kdvg
