#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "subvac/core.hpp"
#include "subvac/sampling.hpp"

namespace subvac {

/// Single-mode data at a fixed spatial point: |f(x)|², f(x)·f(x) and the
/// angular frequency ω. Cauchy–Schwarz forces |f·f| ≤ |f|², with equality
/// when f is real up to a global phase. Lorentz–Heaviside units, ħ = c = 1;
/// f_abs2 carries the field² scale and every output is linear in it.
template <typename Scalar = double>
struct ModeConfig {
  Scalar f_abs2{};
  Complex<Scalar> f_dot_f{};
  Scalar omega{};
};

namespace detail {

template <typename Scalar>
void validate_mode(const ModeConfig<Scalar>& mode) {
  if (!(mode.f_abs2 >= Scalar(0)))
    throw std::invalid_argument("mode requires |f|^2 >= 0");
  const Scalar slack = Scalar(1) + Scalar(16) * std::numeric_limits<Scalar>::epsilon();
  if (std::abs(mode.f_dot_f) > mode.f_abs2 * slack)
    throw std::invalid_argument("mode violates |f.f| <= |f|^2");
  if (!(mode.omega > Scalar(0)))
    throw std::invalid_argument("mode requires omega > 0");
}

template <typename Scalar>
Scalar real_mode_f2(const ModeConfig<Scalar>& mode) {
  validate_mode(mode);
  if (std::imag(mode.f_dot_f) != Scalar(0))
    throw std::invalid_argument("operation assumes a real mode function (Im f.f = 0)");
  return mode.f_abs2;
}

}  // namespace detail

/// Time average of :E²: against g: A = 2|f|², B = (f·f) ĝ(2ω). Always
/// diagonalizable for a real mode and ω > 0 since ĝ(2ω) < 1.
template <typename Scalar>
QuadraticOperator<Scalar> build_averaged_operator(const ModeConfig<Scalar>& mode,
                                                  const SamplingFunction<Scalar>& g) {
  detail::validate_mode(mode);
  return {Scalar(2) * mode.f_abs2,
          mode.f_dot_f * g.transform(Scalar(2) * mode.omega)};
}

/// Instant-time ⟨:E²(x,t):⟩ in the squeezed vacuum (δ = 0, real mode):
/// 2f² sinh r (sinh r − cosh r cos 2ωt). Periodic in t with period π/ω.
template <typename Scalar>
Scalar instant_e2_squeezed(const ModeConfig<Scalar>& mode, Scalar r, Scalar t) {
  const Scalar f2 = detail::real_mode_f2(mode);
  const Scalar s = std::sinh(r);
  const Scalar c = std::cosh(r);
  return Scalar(2) * f2 * s * (s - c * std::cos(Scalar(2) * mode.omega * t));
}

/// |t| window around 0 where the instant-time expectation is negative:
/// half-width arccos(tanh r)/(2ω).
template <typename Scalar>
Interval<Scalar> negativity_interval(Scalar r, Scalar omega) {
  if (!(r > Scalar(0))) throw std::invalid_argument("negativity window requires r > 0");
  if (!(omega > Scalar(0))) throw std::invalid_argument("omega must be > 0");
  const Scalar half_width = std::acos(std::tanh(r)) / (Scalar(2) * omega);
  return {-half_width, half_width};
}

template <typename Scalar = double>
struct LimitRow {
  Scalar r{};
  Scalar value{};      // f²(e^{−2r} − 1), the t = 0 expectation
  Scalar bound_gap{};  // value − (−f²) = f² e^{−2r}
};

/// The t = 0 squeezed-state sequence: its expectation falls to −f² only as
/// r → ∞, so the infimum is approached but never attained — exactly the
/// reason the instant-time operator (A = 2|B|) has no lowest eigenstate.
template <typename Scalar>
std::vector<LimitRow<Scalar>> limit_sequence_instant(const ModeConfig<Scalar>& mode,
                                                     const std::vector<Scalar>& r_list) {
  const Scalar f2 = detail::real_mode_f2(mode);
  for (std::size_t i = 1; i < r_list.size(); ++i)
    if (!(r_list[i] > r_list[i - 1]))
      throw std::invalid_argument("r_list must be strictly increasing");
  std::vector<LimitRow<Scalar>> rows;
  rows.reserve(r_list.size());
  for (const Scalar r : r_list) {
    const Scalar gap = f2 * std::exp(Scalar(-2) * r);
    // + 0 turns the r = 0 result -0.0 into +0.0
    rows.push_back({r, f2 * std::expm1(Scalar(-2) * r) + Scalar(0), gap});
  }
  return rows;
}

/// λ₀ of the time-averaged squared field for a real mode:
/// −f²(1 − √(1 − ĝ²(2ω))), evaluated cancellation-free. Saturates toward
/// −f² = −A/2·(A = 2f²) as ĝ(2ω) → 1: half the one-photon expectation.
template <typename Scalar>
Scalar maximal_subvacuum(const ModeConfig<Scalar>& mode,
                         const SamplingFunction<Scalar>& g) {
  const Scalar f2 = detail::real_mode_f2(mode);
  const Scalar g_hat = g.transform(Scalar(2) * mode.omega);
  const Scalar one_minus = (Scalar(1) - g_hat) * (Scalar(1) + g_hat);
  if (!(one_minus > Scalar(0))) throw NotDiagonalizable(std::abs(g_hat));
  const Scalar root = std::sqrt(one_minus);
  return -f2 * g_hat * g_hat / (Scalar(1) + root);
}

}  // namespace subvac
