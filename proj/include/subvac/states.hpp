#pragma once

#include <cmath>
#include <complex>

#include "subvac/core.hpp"

namespace subvac {

/// Squeeze parameter ζ = r e^{iδ} of S(ζ) = exp[(ζ* a² − ζ a†²)/2].
template <typename Scalar = double>
struct SqueezeParameter {
  Scalar r{};
  Scalar delta{};
};

/// Superposition (|0⟩ + ε|2⟩)/√(1+ε²) with real ε.
template <typename Scalar = double>
struct VacuumPlusTwo {
  Scalar epsilon{};
};

/// Fock expansion of the squeezed vacuum S(ζ)|0⟩. Only even coefficients are
/// nonzero; S(ζ)|0⟩ is annihilated by cosh(r) a + e^{iδ} sinh(r) a†, so it is
/// the image of (α, β) = (cosh r, −e^{iδ} sinh r) under lowest_eigenstate.
template <typename Scalar>
StateVector<Scalar> squeezed_vacuum_coeffs(
    const SqueezeParameter<Scalar>& sq, Eigen::Index n_max,
    Scalar deficit_tol = default_deficit_tolerance<Scalar>) {
  if (sq.r < Scalar(0)) throw std::invalid_argument("squeeze magnitude r must be >= 0");
  BogoliubovTransform<Scalar> bt;
  bt.alpha = std::cosh(sq.r);
  bt.beta = -std::polar(std::sinh(sq.r), sq.delta);
  return lowest_eigenstate(bt, n_max, deficit_tol);
}

/// ⟨n⟩ = sinh²r in the squeezed vacuum.
template <typename Scalar>
Scalar mean_photons_squeezed(const SqueezeParameter<Scalar>& sq) {
  const Scalar s = std::sinh(sq.r);
  return s * s;
}

/// ⟨T⟩ in the squeezed vacuum: sinh r [A sinh r − 2 cosh r Re(B e^{iδ})].
template <typename Scalar>
Scalar expect_squeezed(const QuadraticOperator<Scalar>& op,
                       const SqueezeParameter<Scalar>& sq) {
  const Scalar s = std::sinh(sq.r);
  const Scalar c = std::cosh(sq.r);
  const Scalar cross = std::real(op.b_coeff * std::polar(Scalar(1), sq.delta));
  return s * (op.a_coeff * s - Scalar(2) * c * cross);
}

/// Exact ⟨T⟩ in (|0⟩ + ε|2⟩)/√(1+ε²), from the matrix elements
/// ⟨0|a²|2⟩ = √2 and ⟨2|a†a|2⟩ = 2:  (2√2 ε Re B + 2A ε²)/(1+ε²).
template <typename Scalar>
Scalar expect_vacuum_plus_two(const QuadraticOperator<Scalar>& op,
                              const VacuumPlusTwo<Scalar>& st) {
  const Scalar e = st.epsilon;
  const Scalar re_b = std::real(op.b_coeff);
  return (Scalar(2) * std::sqrt(Scalar(2)) * e * re_b +
          Scalar(2) * op.a_coeff * e * e) /
         (Scalar(1) + e * e);
}

/// Alternative bracket ε[2√2 Re B + 4εA]/(1+ε²) with a doubled a†a term.
/// Disagrees with the exact Fock-space value above; emitted alongside it by
/// the CLI (`expect --paper-formula`) so the difference stays visible.
template <typename Scalar>
Scalar expect_vacuum_plus_two_alt(const QuadraticOperator<Scalar>& op,
                                  const VacuumPlusTwo<Scalar>& st) {
  const Scalar e = st.epsilon;
  const Scalar re_b = std::real(op.b_coeff);
  return e *
         (Scalar(2) * std::sqrt(Scalar(2)) * re_b + Scalar(4) * e * op.a_coeff) /
         (Scalar(1) + e * e);
}

/// ⟨n⟩ = 2ε²/(1+ε²) in the vacuum+two-particle state.
template <typename Scalar>
Scalar mean_photons_vacuum_plus_two(const VacuumPlusTwo<Scalar>& st) {
  const Scalar e2 = st.epsilon * st.epsilon;
  return Scalar(2) * e2 / (Scalar(1) + e2);
}

/// ⟨ψ|T|ψ⟩ over the truncated Fock basis:
/// A Σ n|cₙ|² + 2 Re(B Σ c*_{n−2} √(n(n−1)) cₙ).
template <typename Scalar>
Scalar expect_state(const QuadraticOperator<Scalar>& op,
                    const StateVector<Scalar>& psi) {
  const auto& c = psi.coeffs;
  Scalar number_sum = 0;
  Complex<Scalar> pair_sum = 0;
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    number_sum += Scalar(n) * std::norm(c[n]);
    if (n >= 2)
      pair_sum += std::conj(c[n - 2]) * c[n] * std::sqrt(Scalar(n) * Scalar(n - 1));
  }
  return op.a_coeff * number_sum + Scalar(2) * std::real(op.b_coeff * pair_sum);
}

/// Open ε-interval on which expect_vacuum_plus_two is negative:
/// (−√2 Re B/A, 0) for Re B > 0, reflected for Re B < 0.
template <typename Scalar>
Interval<Scalar> negativity_window_epsilon(const QuadraticOperator<Scalar>& op) {
  const Scalar re_b = std::real(op.b_coeff);
  if (re_b == Scalar(0))
    throw DegenerateWindow("Re(B) = 0: no negativity from the vacuum+two family");
  const Scalar root = std::sqrt(Scalar(2)) * std::abs(re_b) / op.a_coeff;
  if (re_b > Scalar(0)) return {-root, Scalar(0)};
  return {Scalar(0), root};
}

}  // namespace subvac
