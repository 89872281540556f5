#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace subvac {

namespace detail {

inline std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

}  // namespace detail

/// A <= 2|B|: the operator is unbounded below over single-mode states and
/// has no lowest eigenstate. Carries the ratio 2|B|/A for diagnostics.
class NotDiagonalizable : public std::domain_error {
 public:
  explicit NotDiagonalizable(double ratio)
      : std::domain_error("not diagonalizable: 2|B|/A = " + detail::short_num(ratio)),
        ratio_(ratio) {}
  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

/// The requested Fock cutoff drops more probability mass than allowed.
class TruncationInsufficient : public std::runtime_error {
 public:
  TruncationInsufficient(double deficit, double tolerance)
      : std::runtime_error("truncation deficit " + detail::short_num(deficit) +
                           " exceeds tolerance " + detail::short_num(tolerance)),
        deficit_(deficit),
        tolerance_(tolerance) {}
  double deficit() const noexcept { return deficit_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  double deficit_;
  double tolerance_;
};

/// Eigensolver iteration cap exceeded.
class ConvergenceFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not meet the requested tolerance.
class QuadratureFailure : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Re(B) = 0: the vacuum+two-particle family produces no negative window.
class DegenerateWindow : public std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace subvac
