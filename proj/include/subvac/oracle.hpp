#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "subvac/core.hpp"
#include "subvac/errors.hpp"

namespace subvac::oracle {

/// T in the truncated a-Fock basis, stored as its two nonzero diagonals:
/// main diagonal A·n and second superdiagonal ⟨n|T|n+2⟩ = B √((n+1)(n+2)).
/// Even and odd Fock levels are exactly decoupled.
template <typename Scalar = double>
struct FockMatrix {
  Eigen::Index dimension{};  // n_max + 1
  Scalar a_coeff{};
  Complex<Scalar> b_coeff{};

  Scalar main_diagonal(Eigen::Index n) const { return a_coeff * Scalar(n); }

  Complex<Scalar> pair_coupling(Eigen::Index n) const {  // levels n and n+2
    return b_coeff * std::sqrt(Scalar(n + 1) * Scalar(n + 2));
  }

  /// y = T x, matrix-free.
  VectorC<Scalar> apply(const VectorC<Scalar>& x) const {
    VectorC<Scalar> y = VectorC<Scalar>::Zero(dimension);
    for (Eigen::Index n = 0; n < dimension; ++n) {
      y[n] += main_diagonal(n) * x[n];
      if (n + 2 < dimension) {
        const Complex<Scalar> s = pair_coupling(n);
        y[n] += s * x[n + 2];
        y[n + 2] += std::conj(s) * x[n];
      }
    }
    return y;
  }

  /// ⟨x|T|x⟩ (real for any x since T is Hermitian).
  Scalar expectation(const VectorC<Scalar>& x) const {
    return std::real(x.dot(apply(x)));
  }
};

template <typename Scalar>
FockMatrix<Scalar> fock_matrix(const QuadraticOperator<Scalar>& op, Eigen::Index n_max) {
  return {n_max + 1, op.a_coeff, op.b_coeff};
}

enum class Parity { even, odd };

/// One parity sector of the Fock matrix, made real symmetric tridiagonal by
/// the gauge a → e^{i arg(B)/2} a (a similarity, so the spectrum is intact).
/// Sector index m addresses Fock level 2m (even) or 2m+1 (odd).
template <typename Scalar = double>
struct SectorTridiagonal {
  Parity parity{Parity::even};
  Eigen::VectorX<Scalar> diag;
  Eigen::VectorX<Scalar> offdiag;  // size dimension()-1
  Scalar gauge_phase{};            // arg(B), restored on eigenvectors
  Eigen::Index fock_n_max{};

  Eigen::Index dimension() const { return diag.size(); }
  Eigen::Index fock_level(Eigen::Index m) const {
    return 2 * m + (parity == Parity::odd ? 1 : 0);
  }
};

template <typename Scalar>
SectorTridiagonal<Scalar> build_sector(const QuadraticOperator<Scalar>& op,
                                       Parity parity, Eigen::Index n_max) {
  if (n_max < 2) throw std::invalid_argument("build_sector requires n_max >= 2");
  SectorTridiagonal<Scalar> t;
  t.parity = parity;
  t.fock_n_max = n_max;
  const Scalar b_abs = std::abs(op.b_coeff);
  t.gauge_phase = b_abs == Scalar(0) ? Scalar(0) : std::arg(op.b_coeff);
  const Eigen::Index first = parity == Parity::odd ? 1 : 0;
  const Eigen::Index dim = (n_max - first) / 2 + 1;
  t.diag.resize(dim);
  t.offdiag.resize(dim - 1);
  for (Eigen::Index m = 0; m < dim; ++m) {
    const Eigen::Index level = 2 * m + first;
    t.diag[m] = op.a_coeff * Scalar(level);
    if (m + 1 < dim)
      t.offdiag[m] = b_abs * std::sqrt(Scalar(level + 1) * Scalar(level + 2));
  }
  return t;
}

namespace detail {

/// Implicit-shift QL iteration for a real symmetric tridiagonal matrix.
/// d (diagonal) is replaced by the eigenvalues. e must be padded to size n:
/// entries 0..n-2 hold the subdiagonal, the last slot is workspace; all of e
/// is destroyed. When z is non-null it must be the n×n identity on entry
/// and accumulates the eigenvector columns. Plain QL, no external solver:
/// this routine is the independent route the closed forms are checked
/// against, so it must not share code with them.
template <typename Scalar>
void tridiagonal_ql(Eigen::VectorX<Scalar>& d, Eigen::VectorX<Scalar>& e,
                    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>* z,
                    int max_sweeps) {
  const Eigen::Index n = d.size();
  if (n <= 1) return;
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();

  for (Eigen::Index l = 0; l < n; ++l) {
    int sweeps = 0;
    for (;;) {
      Eigen::Index m = l;
      while (m < n - 1) {
        const Scalar dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
        ++m;
      }
      if (m == l) break;
      if (++sweeps > max_sweeps)
        throw ConvergenceFailure("tridiagonal QL: eigenvalue " +
                                 std::to_string(l) + " did not settle in " +
                                 std::to_string(max_sweeps) + " sweeps");
      Scalar g = (d[l + 1] - d[l]) / (Scalar(2) * e[l]);
      Scalar r = std::hypot(g, Scalar(1));
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      Scalar s = 1, c = 1, p = 0;
      bool underflow = false;
      for (Eigen::Index i = m - 1; i >= l; --i) {
        Scalar f = s * e[i];
        const Scalar b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == Scalar(0)) {  // rotation annihilated early; restart sweep
          d[i + 1] -= p;
          e[m] = 0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + Scalar(2) * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (z)
          for (Eigen::Index k = 0; k < n; ++k) {
            f = (*z)(k, i + 1);
            (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
            (*z)(k, i) = c * (*z)(k, i) - s * f;
          }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0;
    }
  }

  // Ascending order; carry eigenvector columns along.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::sort(order.begin(), order.end(),
            [&d](Eigen::Index a, Eigen::Index b) { return d[a] < d[b]; });
  Eigen::VectorX<Scalar> ds(n);
  for (Eigen::Index i = 0; i < n; ++i) ds[i] = d[order[i]];
  d = ds;
  if (z) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> zs(n, n);
    for (Eigen::Index i = 0; i < n; ++i) zs.col(i) = z->col(order[i]);
    *z = zs;
  }
}

}  // namespace detail

inline constexpr int default_max_sweeps = 50;

/// k smallest eigenvalues of the sector, ascending.
template <typename Scalar>
Eigen::VectorX<Scalar> solve_spectrum(const SectorTridiagonal<Scalar>& t,
                                      Eigen::Index k,
                                      int max_sweeps = default_max_sweeps) {
  if (k < 0 || k > t.dimension())
    throw std::invalid_argument("solve_spectrum: k out of range");
  Eigen::VectorX<Scalar> d = t.diag;
  Eigen::VectorX<Scalar> e = Eigen::VectorX<Scalar>::Zero(t.dimension());
  e.head(t.dimension() - 1) = t.offdiag;
  detail::tridiagonal_ql<Scalar>(d, e, nullptr, max_sweeps);
  return d.head(k);
}

/// Normalized ground eigenvector, mapped back to full Fock indexing with the
/// gauge phase e^{−i n arg(B)/2} restored on level n and the sign fixed so
/// the sector's first coefficient is positive.
template <typename Scalar>
StateVector<Scalar> ground_vector(const SectorTridiagonal<Scalar>& t,
                                  int max_sweeps = default_max_sweeps) {
  const Eigen::Index dim = t.dimension();
  if (dim < 2) throw std::invalid_argument("ground_vector requires dimension >= 2");
  Eigen::VectorX<Scalar> d = t.diag;
  Eigen::VectorX<Scalar> e = Eigen::VectorX<Scalar>::Zero(dim);
  e.head(dim - 1) = t.offdiag;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> z =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Identity(dim, dim);
  detail::tridiagonal_ql<Scalar>(d, e, &z, max_sweeps);

  Eigen::VectorX<Scalar> v = z.col(0);
  v /= v.norm();
  if (v[0] < Scalar(0)) v = -v;

  StateVector<Scalar> psi;
  psi.coeffs = VectorC<Scalar>::Zero(t.fock_n_max + 1);
  for (Eigen::Index m = 0; m < dim; ++m) {
    const Eigen::Index level = t.fock_level(m);
    psi.coeffs[level] =
        v[m] * std::polar(Scalar(1), -Scalar(level) * t.gauge_phase / Scalar(2));
  }
  psi.truncation_deficit = 0;
  return psi;
}

template <typename Scalar = double>
struct ConvergenceRow {
  Eigen::Index n_max{};
  Scalar lambda0_estimate{};
  Scalar error{};  // estimate − closed-form λ₀
};

/// λ₀ estimates versus cutoff; Rayleigh–Ritz makes the column non-increasing
/// and always at or above the exact value.
template <typename Scalar>
std::vector<ConvergenceRow<Scalar>> convergence_study(
    const QuadraticOperator<Scalar>& op, const std::vector<Eigen::Index>& n_max_list,
    int max_sweeps = default_max_sweeps) {
  const Scalar lambda0_exact = diagonalize(op).second.lambda0;
  std::vector<ConvergenceRow<Scalar>> rows;
  rows.reserve(n_max_list.size());
  for (const Eigen::Index n_max : n_max_list) {
    const auto sector = build_sector(op, Parity::even, n_max);
    const Scalar est = solve_spectrum(sector, 1, max_sweeps)[0];
    rows.push_back({n_max, est, est - lambda0_exact});
  }
  return rows;
}

}  // namespace subvac::oracle
