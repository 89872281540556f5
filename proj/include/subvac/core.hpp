#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "subvac/errors.hpp"

namespace subvac {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using VectorC = Eigen::VectorX<Complex<Scalar>>;

/// T = A a†a + B a² + B* a†², with A > 0 real and B complex.
template <typename Scalar = double>
struct QuadraticOperator {
  Scalar a_coeff{};
  Complex<Scalar> b_coeff{};
};

/// Coefficients of a = α b + β b† with α real positive and α² − |β|² = 1.
/// The phase convention fixes arg(β) = π − arg(B).
template <typename Scalar = double>
struct BogoliubovTransform {
  Scalar alpha{1};
  Complex<Scalar> beta{};
};

/// Diagonal form T = Ω b†b + λ₀; eigenvalues λₙ = nΩ + λ₀.
template <typename Scalar = double>
struct Spectrum {
  Scalar omega{};
  Scalar lambda0{};
};

/// Unit-norm truncated Fock expansion c₀..c_{n_max}. truncation_deficit is
/// the probability mass 1 − Σ|cₙ|² dropped by the cutoff, measured before
/// renormalization.
template <typename Scalar = double>
struct StateVector {
  VectorC<Scalar> coeffs;
  Scalar truncation_deficit{};

  Eigen::Index n_max() const { return coeffs.size() - 1; }
};

/// Open interval (lo, hi).
template <typename Scalar = double>
struct Interval {
  Scalar lo{};
  Scalar hi{};
};

template <typename Scalar = double>
inline constexpr Scalar default_deficit_tolerance = Scalar(1e-10);

/// Splits T into a Bogoliubov transform and its spectrum. Valid only for
/// A > 2|B|; the boundary case is detected exactly on the discriminant
/// A² − 4|B|², not with a fuzzy tolerance.
template <typename Scalar>
std::pair<BogoliubovTransform<Scalar>, Spectrum<Scalar>> diagonalize(
    const QuadraticOperator<Scalar>& op) {
  if (!(op.a_coeff > Scalar(0)))
    throw std::invalid_argument("quadratic operator requires a_coeff > 0");
  const Scalar a = op.a_coeff;
  const Scalar b_abs = std::abs(op.b_coeff);
  const Scalar disc = a * a - Scalar(4) * b_abs * b_abs;
  if (!(disc > Scalar(0))) throw NotDiagonalizable(Scalar(2) * b_abs / a);

  Spectrum<Scalar> sp;
  sp.omega = std::sqrt(disc);
  sp.lambda0 = (sp.omega - a) / Scalar(2);

  BogoliubovTransform<Scalar> bt;
  if (b_abs == Scalar(0)) return {bt, sp};  // alpha = 1, beta = 0

  const Scalar beta_abs =
      std::sqrt(Scalar(-0.5) + Scalar(0.5) * std::sqrt(a * a / disc));
  bt.alpha = std::sqrt(Scalar(1) + beta_abs * beta_abs);
  // e^{i(π − arg B)} = −conj(B)/|B|
  bt.beta = -std::conj(op.b_coeff) * (beta_abs / b_abs);
  return {bt, sp};
}

/// λₙ = nΩ + λ₀, computed in one step to avoid accumulation error.
template <typename Scalar>
Scalar eigenvalue(const Spectrum<Scalar>& sp, Eigen::Index n) {
  if (n < 0) throw std::invalid_argument("eigenvalue index must be >= 0");
  return Scalar(n) * sp.omega + sp.lambda0;
}

/// Fock expansion of the b-vacuum: c₀ = 1/√α, c_{2n} = √((2n−1)!!/(2n)!!)
/// (β/α)ⁿ c₀, odd coefficients zero. The double-factorial ratio is kept as a
/// running product of (2n−1)/(2n) so no factorial ever overflows. Throws
/// TruncationInsufficient when the dropped tail mass exceeds deficit_tol.
template <typename Scalar>
StateVector<Scalar> lowest_eigenstate(
    const BogoliubovTransform<Scalar>& bt, Eigen::Index n_max,
    Scalar deficit_tol = default_deficit_tolerance<Scalar>) {
  if (n_max < 2 || n_max % 2 != 0)
    throw std::invalid_argument("n_max must be even and >= 2");

  StateVector<Scalar> psi;
  psi.coeffs = VectorC<Scalar>::Zero(n_max + 1);
  const Complex<Scalar> ratio = bt.beta / bt.alpha;  // |ratio| < 1
  const Scalar c0 = Scalar(1) / std::sqrt(bt.alpha);
  psi.coeffs[0] = c0;

  Scalar dfact = 1;  // (2n−1)!!/(2n)!!
  Complex<Scalar> power = 1;
  for (Eigen::Index n = 1; 2 * n <= n_max; ++n) {
    dfact *= Scalar(2 * n - 1) / Scalar(2 * n);
    power *= ratio;
    psi.coeffs[2 * n] = std::sqrt(dfact) * power * c0;
  }

  const Scalar norm2 = psi.coeffs.squaredNorm();
  psi.truncation_deficit = Scalar(1) - norm2;  // analytic full-basis norm is 1
  if (psi.truncation_deficit > deficit_tol)
    throw TruncationInsufficient(psi.truncation_deficit, deficit_tol);
  psi.coeffs /= std::sqrt(norm2);
  return psi;
}

/// ⟨n⟩ in the lowest eigenstate: A/(2√(A² − 4|B|²)) − 1/2, which equals |β|².
template <typename Scalar>
Scalar mean_photon_number(const QuadraticOperator<Scalar>& op) {
  if (!(op.a_coeff > Scalar(0)))
    throw std::invalid_argument("quadratic operator requires a_coeff > 0");
  const Scalar a = op.a_coeff;
  const Scalar b_abs = std::abs(op.b_coeff);
  const Scalar disc = a * a - Scalar(4) * b_abs * b_abs;
  if (!(disc > Scalar(0))) throw NotDiagonalizable(Scalar(2) * b_abs / a);
  return a / (Scalar(2) * std::sqrt(disc)) - Scalar(0.5);
}

/// Strict lower bound −A/2 on λ₀ and hence on ⟨T⟩ over all single-mode
/// states; approached (never attained) as 2|B| → A.
template <typename Scalar>
Scalar qi_bound(const QuadraticOperator<Scalar>& op) {
  return -op.a_coeff / Scalar(2);
}

}  // namespace subvac
