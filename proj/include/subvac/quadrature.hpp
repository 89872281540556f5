#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "subvac/errors.hpp"

namespace subvac::quadrature {

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr double kron_nodes[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
inline constexpr double kron_weights[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
inline constexpr double gauss_weights[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

template <typename Scalar>
struct PanelEstimate {
  Scalar value;
  Scalar error;
};

template <typename Scalar, typename F>
PanelEstimate<Scalar> gk15(const F& f, Scalar a, Scalar b) {
  const Scalar mid = (a + b) / Scalar(2);
  const Scalar half = (b - a) / Scalar(2);
  const Scalar f_mid = f(mid);
  Scalar kron = Scalar(kron_weights[7]) * f_mid;
  Scalar gauss = Scalar(gauss_weights[3]) * f_mid;
  for (int i = 0; i < 7; ++i) {
    const Scalar dx = half * Scalar(kron_nodes[i]);
    const Scalar pair = f(mid + dx) + f(mid - dx);
    kron += Scalar(kron_weights[i]) * pair;
    if (i % 2 == 1) gauss += Scalar(gauss_weights[i / 2]) * pair;
  }
  return {kron * half, std::abs(kron - gauss) * std::abs(half)};
}

}  // namespace detail

/// Adaptive Gauss–Kronrod integration of f over [a, b] to an absolute
/// tolerance: bisects the interval with the largest error estimate until the
/// summed estimate meets the tolerance. Throws QuadratureFailure when the
/// interval budget runs out first.
template <typename Scalar, typename F>
Scalar integrate_adaptive(const F& f, Scalar a, Scalar b,
                          Scalar abs_tol = Scalar(1e-10),
                          int max_intervals = 4000,
                          int initial_subdivisions = 1) {
  if (a == b) return Scalar(0);
  struct Panel {
    Scalar a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
  };
  std::priority_queue<Panel> panels;
  Scalar total = 0, total_err = 0;
  int count = 0;
  const int parts = std::max(initial_subdivisions, 1);
  for (int i = 0; i < parts; ++i) {
    const Scalar lo = a + (b - a) * Scalar(i) / Scalar(parts);
    const Scalar hi = a + (b - a) * Scalar(i + 1) / Scalar(parts);
    const auto est = detail::gk15(f, lo, hi);
    panels.push({lo, hi, est.value, est.error});
    total += est.value;
    total_err += est.error;
    ++count;
  }
  while (total_err > abs_tol) {
    if (count >= max_intervals)
      throw QuadratureFailure("adaptive quadrature: interval budget exhausted");
    const Panel worst = panels.top();
    panels.pop();
    const Scalar mid = (worst.a + worst.b) / Scalar(2);
    if (mid == worst.a || mid == worst.b)
      throw QuadratureFailure("adaptive quadrature: interval underflow");
    const auto left = detail::gk15(f, worst.a, mid);
    const auto right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push({worst.a, mid, left.value, left.error});
    panels.push({mid, worst.b, right.value, right.error});
    ++count;
  }
  return total;
}

/// Wynn's epsilon extrapolation of a sequence of partial sums; returns the
/// highest even-order entry reached before the table degenerates.
template <typename Scalar>
Scalar wynn_epsilon(const std::vector<Scalar>& partial_sums) {
  const std::size_t n = partial_sums.size();
  if (n == 0) throw std::invalid_argument("wynn_epsilon: empty sequence");
  std::vector<Scalar> prev(n, Scalar(0));       // ε_{-1}
  std::vector<Scalar> curr = partial_sums;      // ε_0
  Scalar best = curr.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<Scalar> next(n - k);
    for (std::size_t j = 0; j + k < n; ++j) {
      const Scalar diff = curr[j + 1] - curr[j];
      if (diff == Scalar(0)) return curr[j + 1];  // converged exactly
      next[j] = prev[j + 1] + Scalar(1) / diff;
    }
    prev = std::move(curr);
    curr = std::move(next);
    if (k % 2 == 0 && !curr.empty()) best = curr.back();
  }
  return best;
}

/// ∫_{-∞}^{∞} f(t) cos(ωt) dt for even f with algebraic decay. Splits the
/// half line at the zeros of cos(ωt), integrates each stretch adaptively and
/// accelerates the alternating tail with Wynn's epsilon. `scale` is the
/// characteristic width of f, used for the ω = 0 fallback and to resolve the
/// head region.
template <typename Scalar, typename F>
Scalar cosine_transform_line(const F& f, Scalar omega, Scalar scale,
                             Scalar abs_tol = Scalar(1e-10)) {
  omega = std::abs(omega);
  if (omega == Scalar(0)) {
    // Head [0, W] plus algebraic tail via t = W/u.
    const Scalar w = Scalar(8) * scale;
    const Scalar head = integrate_adaptive([&](Scalar t) { return f(t); },
                                           Scalar(0), w, abs_tol / 4, 4000, 8);
    const Scalar tail = integrate_adaptive(
        [&](Scalar u) { return f(w / u) * w / (u * u); }, Scalar(0), Scalar(1),
        abs_tol / 4, 4000, 8);
    return Scalar(2) * (head + tail);
  }

  const auto integrand = [&](Scalar t) { return f(t) * std::cos(omega * t); };
  const Scalar half_period = Scalar(M_PI) / omega;
  // First node at the first positive zero of cos(ωt).
  const Scalar t0 = half_period / Scalar(2);
  const int head_parts = static_cast<int>(
      std::clamp(std::ceil(t0 / scale), Scalar(2), Scalar(64)));
  Scalar sum = integrate_adaptive(integrand, Scalar(0), t0, abs_tol / 16, 4000,
                                  head_parts);

  constexpr std::size_t max_segments = 96;
  const Scalar segment_tol = abs_tol / Scalar(4 * max_segments);
  std::vector<Scalar> partials;
  partials.reserve(max_segments);
  Scalar prev_extrap = std::numeric_limits<Scalar>::infinity();
  for (std::size_t k = 0; k < max_segments; ++k) {
    const Scalar a = t0 + Scalar(k) * half_period;
    const Scalar b = a + half_period;
    sum += integrate_adaptive(integrand, a, b, segment_tol, 4000, 2);
    partials.push_back(sum);
    if (k >= 7 && k % 2 == 1) {
      const Scalar extrap = wynn_epsilon(partials);
      if (std::abs(extrap - prev_extrap) < abs_tol / 4)
        return Scalar(2) * extrap;
      prev_extrap = extrap;
    }
  }
  throw QuadratureFailure("oscillatory cosine transform did not converge");
}

}  // namespace subvac::quadrature
