#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "subvac/core.hpp"
#include "subvac/oracle.hpp"
#include "subvac/sampling.hpp"
#include "subvac/states.hpp"

namespace subvac {

/// Tunables for the cross-verification sweep. Cutoffs live here, not in the
/// code paths: 200 is plenty for 2|B|/A <= 0.9, the boundary case gets its
/// own deeper cutoff.
struct VerifyOptions {
  Eigen::Index n_max = 200;
  Eigen::Index n_max_near_boundary = 2000;
  double grid_max_ratio = 0.9;
  int grid_size = 12;
  unsigned seed = 0x5eed;
  int random_states = 1000;
  double tol_lambda0 = 1e-8;     // |closed - oracle| / A
  double tol_overlap = 1e-8;     // 1 - |<oracle|closed>|
  double tol_ladder = 1e-6;      // absolute, first rungs of both sectors
  double tol_photon = 1e-12;     // relative, <n>0 vs |beta|^2
  double tol_norm_identity = 1e-12;
  double tol_expectation = 1e-9;
  double tol_variant = 1e-8;     // oracle photon number vs ghat^2 variant
  double tol_bound = 1e-9;       // slack below lambda0 for random states
};

struct VerifyCheck {
  std::string name;
  double deviation{};
  double tolerance{};
  bool pass{};
};

/// The two documented formula discrepancies, evaluated from both sides.
struct DiscrepancyReport {
  double g_hat{};
  double n0_linear_variant{};   // 1/(2 sqrt(1 - ghat)) - 1/2, as printed
  double n0_squared_variant{};  // 1/(2 sqrt(1 - ghat^2)) - 1/2 = |beta|^2
  double n0_oracle{};           // photon number of the matrix ground state
  double vpt_epsilon{};
  double vpt_exact{};           // exact Fock-space expectation
  double vpt_alt{};             // 4 eps A bracket variant
  double vpt_oracle{};          // truncated-matrix expectation
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  DiscrepancyReport discrepancy;
  bool all_pass = true;
};

namespace detail {

inline double ground_photon_number(const StateVector<double>& psi) {
  double photons = 0.0;
  for (Eigen::Index n = 0; n <= psi.n_max(); ++n)
    photons += static_cast<double>(n) * std::norm(psi.coeffs[n]);
  return photons;
}

inline void push_check(VerifyReport& report, std::string name, double deviation,
                       double tolerance) {
  const bool pass = deviation <= tolerance;
  report.checks.push_back({std::move(name), deviation, tolerance, pass});
  report.all_pass = report.all_pass && pass;
}

}  // namespace detail

/// Sweeps a deterministic (A, B) grid and reports the worst deviation of
/// every closed form from the truncated-matrix oracle, plus the documented
/// formula discrepancies with numbers from both sides.
inline VerifyReport run_verification(const VerifyOptions& opts = {}) {
  VerifyReport report;
  std::mt19937 rng(opts.seed);
  std::uniform_real_distribution<double> uphase(0.0, 2.0 * std::numbers::pi);
  const double a_cycle[] = {2.0, 1.0, 0.5, 3.7};

  std::vector<QuadraticOperator<double>> grid;
  const int points = std::max(2, opts.grid_size);
  for (int i = 0; i < points; ++i) {
    const double ratio = opts.grid_max_ratio * i / (points - 1);
    const double a = a_cycle[i % 4];
    grid.push_back({a, std::polar(0.5 * a * ratio, uphase(rng))});
  }

  double dev_lambda0 = 0.0, dev_overlap = 0.0, dev_ladder = 0.0;
  double dev_photon = 0.0, dev_expectation = 0.0;
  bool bound_ok = true;
  for (const auto& op : grid) {
    const auto [bt, sp] = diagonalize(op);
    const auto even = oracle::build_sector(op, oracle::Parity::even, opts.n_max);
    const auto odd = oracle::build_sector(op, oracle::Parity::odd, opts.n_max + 1);

    const Eigen::Index rungs =
        std::min<Eigen::Index>(4, std::min(even.dimension(), odd.dimension()));
    const auto even_evs = oracle::solve_spectrum(even, rungs);
    const auto odd_evs = oracle::solve_spectrum(odd, rungs);
    dev_lambda0 = std::max(dev_lambda0,
                           std::abs(even_evs[0] - sp.lambda0) / op.a_coeff);
    for (Eigen::Index k = 0; k < rungs; ++k) {
      dev_ladder = std::max(dev_ladder,
                            std::abs(even_evs[k] - eigenvalue(sp, 2 * k)));
      dev_ladder = std::max(dev_ladder,
                            std::abs(odd_evs[k] - eigenvalue(sp, 2 * k + 1)));
    }

    const auto numeric = oracle::ground_vector(even);
    const auto closed = lowest_eigenstate(bt, opts.n_max, 1.0);
    const double ovl = std::abs(numeric.coeffs.dot(closed.coeffs));
    dev_overlap = std::max(dev_overlap, 1.0 - ovl);

    if (std::abs(op.b_coeff) > 0.0)
      dev_photon = std::max(
          dev_photon, std::abs(mean_photon_number(op) - std::norm(bt.beta)) /
                          std::norm(bt.beta));

    dev_expectation = std::max(
        dev_expectation, std::abs(expect_state(op, closed) - sp.lambda0) / op.a_coeff);

    bound_ok = bound_ok && sp.lambda0 > qi_bound(op);
  }
  detail::push_check(report, "lambda0: closed form vs matrix oracle", dev_lambda0,
                     opts.tol_lambda0);
  detail::push_check(report, "eigenstate: recurrence vs oracle ground vector",
                     dev_overlap, opts.tol_overlap);
  detail::push_check(report, "spectrum: even/odd ladders n*Omega + lambda0",
                     dev_ladder, opts.tol_ladder);
  detail::push_check(report, "photon number: <n>0 equals |beta|^2", dev_photon,
                     opts.tol_photon);
  detail::push_check(report, "expectation: <ground|T|ground> equals lambda0",
                     dev_expectation, opts.tol_expectation);

  {  // Near the diagonalizability boundary with the deeper cutoff.
    const QuadraticOperator<double> op{2.0, {0.99, 0.0}};
    const double exact = diagonalize(op).second.lambda0;
    const double est =
        oracle::solve_spectrum(
            oracle::build_sector(op, oracle::Parity::even, opts.n_max_near_boundary), 1)[0];
    detail::push_check(report, "lambda0: near boundary 2|B|/A = 0.99",
                       std::abs(est - exact) / op.a_coeff, opts.tol_lambda0);
  }

  {  // Normalization identity of the eigenstate coefficients.
    double dev = 0.0;
    for (const double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      double sum = 1.0, ratio = 1.0, power = 1.0;
      for (int n = 1; n < 4000; ++n) {
        ratio *= (2.0 * n - 1.0) / (2.0 * n);
        power *= x * x;
        const double term = ratio * power;
        sum += term;
        if (term < 1e-18) break;
      }
      const double limit = 1.0 / std::sqrt(1.0 - x * x);
      dev = std::max(dev, std::abs(sum - limit) / limit);
    }
    detail::push_check(report, "normalization identity: sum to 1/sqrt(1-x^2)", dev,
                       opts.tol_norm_identity);
  }

  {  // No state may undercut lambda0.
    const QuadraticOperator<double> op{2.0, {0.9, 0.0}};
    const double lambda0 = diagonalize(op).second.lambda0;
    std::mt19937 state_rng(opts.seed + 1);
    std::normal_distribution<double> gauss;
    double worst = 1e300;
    for (int i = 0; i < opts.random_states; ++i) {
      StateVector<double> psi;
      psi.coeffs.resize(61);
      for (Eigen::Index n = 0; n <= 60; ++n) psi.coeffs[n] = {gauss(state_rng), gauss(state_rng)};
      psi.coeffs /= psi.coeffs.norm();
      worst = std::min(worst, expect_state(op, psi) - lambda0);
    }
    detail::push_check(report, "quantum inequality: random states stay above lambda0",
                       std::max(0.0, -worst), opts.tol_bound);
    detail::push_check(report, "quantum inequality: lambda0 above -A/2 on the grid",
                       bound_ok ? 0.0 : 1.0, 0.5);
  }

  {  // Discrepancy 1: which transform power enters the photon number.
    auto& d = report.discrepancy;
    d.g_hat = 0.5;
    d.n0_linear_variant = photon_number_from_transform_linear(d.g_hat);
    d.n0_squared_variant = photon_number_from_transform(d.g_hat);
    const QuadraticOperator<double> op{2.0, {d.g_hat, 0.0}};  // f^2 = 1
    const auto ground =
        oracle::ground_vector(oracle::build_sector(op, oracle::Parity::even, opts.n_max));
    d.n0_oracle = detail::ground_photon_number(ground);
    detail::push_check(report,
                       "discrepancy: oracle photon number matches the ghat^2 variant",
                       std::abs(d.n0_oracle - d.n0_squared_variant), opts.tol_variant);
  }

  {  // Discrepancy 2: the vacuum+two bracket.
    auto& d = report.discrepancy;
    const QuadraticOperator<double> op{2.0, {1.0, 0.0}};
    const VacuumPlusTwo<double> st{-0.1};
    d.vpt_epsilon = st.epsilon;
    d.vpt_exact = expect_vacuum_plus_two(op, st);
    d.vpt_alt = expect_vacuum_plus_two_alt(op, st);
    StateVector<double> psi;
    psi.coeffs = VectorC<double>::Zero(5);
    const double norm = std::sqrt(1.0 + st.epsilon * st.epsilon);
    psi.coeffs[0] = 1.0 / norm;
    psi.coeffs[2] = st.epsilon / norm;
    d.vpt_oracle = oracle::fock_matrix(op, psi.n_max()).expectation(psi.coeffs);
    detail::push_check(report, "discrepancy: exact vacuum+two bracket matches the matrix",
                       std::abs(d.vpt_exact - d.vpt_oracle), 1e-12);
  }

  return report;
}

inline void print_report(std::ostream& out, const VerifyReport& report) {
  for (const auto& check : report.checks) {
    char line[160];
    std::snprintf(line, sizeof(line), "%s %-58s max deviation %.3e (tol %.1e)",
                  check.pass ? "PASS" : "FAIL", check.name.c_str(), check.deviation,
                  check.tolerance);
    out << line << "\n";
  }
  const auto& d = report.discrepancy;
  out << "\nmean photon number of the lowest eigenstate at ghat(2w) = " << d.g_hat
      << ", f^2 = 1:\n";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "  1/(2 sqrt(1 - ghat  )) - 1/2 = %.17g\n",
                d.n0_linear_variant);
  out << buf;
  std::snprintf(buf, sizeof(buf), "  1/(2 sqrt(1 - ghat^2)) - 1/2 = %.17g\n",
                d.n0_squared_variant);
  out << buf;
  std::snprintf(buf, sizeof(buf), "  matrix-oracle ground state  = %.17g\n", d.n0_oracle);
  out << buf;
  out << "\nvacuum+two expectation at A = 2, B = 1, eps = " << d.vpt_epsilon << ":\n";
  std::snprintf(buf, sizeof(buf), "  exact Fock-space value  = %.17g\n", d.vpt_exact);
  out << buf;
  std::snprintf(buf, sizeof(buf), "  4*eps*A bracket variant = %.17g\n", d.vpt_alt);
  out << buf;
  std::snprintf(buf, sizeof(buf), "  truncated-matrix value  = %.17g\n", d.vpt_oracle);
  out << buf;
  out << (report.all_pass ? "\nall checks passed\n" : "\nverification FAILED\n");
}

}  // namespace subvac
