// Acceptance suite: every criterion below pins its tolerance in code and
// prints a single PASS/FAIL line (with indented sub-check detail where a
// criterion aggregates several assertions). The process exit code is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "subvac/core.hpp"
#include "subvac/fieldmodel.hpp"
#include "subvac/oracle.hpp"
#include "subvac/sampling.hpp"
#include "subvac/states.hpp"
#include "subvac/verify.hpp"

using namespace subvac;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

struct Sub {
  std::string text;
  bool pass;
};

void report(int index, const std::string& title, bool pass,
            const std::vector<Sub>& subs = {}) {
  std::printf("criterion %2d: %s  %s\n", index, pass ? "PASS" : "FAIL", title.c_str());
  for (const auto& sub : subs)
    std::printf("              %s %s\n", sub.pass ? "ok  " : "FAIL", sub.text.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[192];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

std::vector<QuadraticOperator<double>> criterion1_grid() {
  std::mt19937 rng(20250810);
  std::uniform_real_distribution<double> uphase(0.0, 2.0 * kPi);
  std::vector<QuadraticOperator<double>> ops;
  for (int i = 0; i < 50; ++i) {
    const double ratio = 0.9 * i / 49.0;
    ops.push_back({2.0, std::polar(0.5 * 2.0 * ratio, uphase(rng))});
  }
  return ops;
}

void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& op : criterion1_grid()) {
    const double closed = diagonalize(op).second.lambda0;
    const double numeric =
        oracle::solve_spectrum(oracle::build_sector(op, oracle::Parity::even, 200), 1)[0];
    worst = std::max(worst, std::abs(closed - numeric));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = worst < 1e-8 * 2.0 && seconds < 10.0;
  report(1, "oracle equivalence for lambda0 over 50 operators, n_max = 200", pass,
         {{fmt("max |closed - oracle| = %.3e (tol 2e-08), runtime %.2f s", worst, seconds),
           pass}});
}

void criterion_2() {
  const auto op = QuadraticOperator<double>{2.0, {0.5, 0.0}};
  const auto sp = diagonalize(op).second;
  const auto even = oracle::solve_spectrum(oracle::build_sector(op, oracle::Parity::even, 400), 8);
  const auto odd = oracle::solve_spectrum(oracle::build_sector(op, oracle::Parity::odd, 401), 8);
  double worst = 0.0;
  for (int k = 0; k < 8; ++k) {
    worst = std::max(worst, std::abs(even[k] - eigenvalue(sp, 2 * k)));
    worst = std::max(worst, std::abs(odd[k] - eigenvalue(sp, 2 * k + 1)));
  }
  report(2, "spectrum linearity: 8 even + 8 odd rungs at (A=2, B=0.5), n_max = 400",
         worst < 1e-6, {{fmt("max |rung - (n Omega + lambda0)| = %.3e (tol 1e-06)", worst),
                         worst < 1e-6}});
}

void criterion_3() {
  std::vector<Sub> subs;
  bool pass = true;
  const std::vector<QuadraticOperator<double>> ops = {
      {2.0, {0.1, 0.0}},
      {2.0, {0.5, 0.0}},
      {2.0, {0.9, 0.0}},
      {2.0, std::polar(0.9, kPi / 3.0)},  // complex B: gauge restoration case
  };
  for (const auto& op : ops) {
    const auto numeric = oracle::ground_vector(oracle::build_sector(op, oracle::Parity::even, 200));
    const auto closed = lowest_eigenstate(diagonalize(op).first, 200, 1.0);
    const double deficit = 1.0 - std::abs(numeric.coeffs.dot(closed.coeffs));
    const bool ok = deficit < 1e-8;
    pass = pass && ok;
    subs.push_back({fmt("2|B|/A = %.2f, arg B = %.3f: 1 - overlap = %.3e",
                        std::abs(op.b_coeff), std::arg(op.b_coeff), deficit),
                    ok});
  }
  {  // Unwinding the gauge phase must leave real coefficients.
    const auto op = ops.back();
    const double gamma = std::arg(op.b_coeff);
    const auto numeric = oracle::ground_vector(oracle::build_sector(op, oracle::Parity::even, 200));
    double worst_imag = 0.0;
    for (Eigen::Index n = 0; n <= numeric.n_max(); n += 2)
      worst_imag = std::max(
          worst_imag,
          std::abs(std::imag(numeric.coeffs[n] *
                             std::polar(1.0, 0.5 * gamma * static_cast<double>(n)))));
    const bool ok = worst_imag < 1e-10;
    pass = pass && ok;
    subs.push_back({fmt("gauge-phase restoration residual = %.3e", worst_imag), ok});
  }
  report(3, "eigenstate recurrence vs oracle ground vector (overlap > 1 - 1e-8)", pass, subs);
}

void criterion_4() {
  const double n0 = mean_photon_number(QuadraticOperator<double>{2.0, {0.98, 0.0}});
  const bool pass = std::abs(n0 - 2.013) <= 0.05;
  report(4, "mean photon number ~ 2.0 at 2|B|/A = 0.98", pass,
         {{fmt("<n>0 = %.6f (want 2.013 +- 0.05)", n0), pass}});
}

void criterion_5() {
  const double k = compact_bump(1.0).norm_constant();
  const bool pass = std::abs(k - 4.50457) < 1e-4;
  report(5, "compact-bump normalization constant K", pass,
         {{fmt("K = %.8f (want 4.50457 +- 1e-04)", k), pass}});
}

void criterion_6() {
  const QuadraticOperator<double> op{2.0, {0.9, 0.0}};
  const double lambda0 = diagonalize(op).second.lambda0;
  std::mt19937 rng(0xb0b);
  std::normal_distribution<double> gauss;
  double worst = 1e300;
  for (int i = 0; i < 1000; ++i) {
    StateVector<double> psi;
    psi.coeffs.resize(61);
    for (Eigen::Index n = 0; n <= 60; ++n) psi.coeffs[n] = {gauss(rng), gauss(rng)};
    psi.coeffs /= psi.coeffs.norm();
    worst = std::min(worst, expect_state(op, psi) - lambda0);
  }
  bool grid_ok = true;
  for (const auto& gop : criterion1_grid())
    grid_ok = grid_ok && diagonalize(gop).second.lambda0 > qi_bound(gop);
  const bool pass = worst >= -1e-9 && grid_ok;
  report(6, "quantum inequality bound: 1000 random states and lambda0 > -A/2", pass,
         {{fmt("min(<T> - lambda0) = %.3e (allowed >= -1e-09)", worst), worst >= -1e-9},
          {std::string("lambda0 > -A/2 across the criterion-1 grid: ") +
               (grid_ok ? "yes" : "no"),
           grid_ok}});
}

void criterion_7() {
  const ModeConfig<double> mode{1.0, {1.0, 0.0}, 1.0};
  const std::vector<double> rs{0.0, 1.0, 2.0, 3.0, 4.0};
  const auto rows = limit_sequence_instant(mode, rs);
  std::vector<Sub> subs;
  bool pass = true;

  double worst_closed = 0.0;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double reference = std::exp(-2.0 * rs[i]) - 1.0;  // independent route
    worst_closed = std::max(worst_closed, std::abs(rows[i].value - reference));
  }
  const bool closed_ok = worst_closed <= 1e-14;
  pass = pass && closed_ok;
  subs.push_back({fmt("closed form f^2(e^{-2r} - 1): max dev %.3e (tol 1e-14)", worst_closed),
                  closed_ok});

  const QuadraticOperator<double> op{2.0, {1.0, 0.0}};  // instant-time, f^2 = 1
  for (const double r : rs) {
    const auto psi = squeezed_vacuum_coeffs(SqueezeParameter<double>{r, 0.0}, 200, 1.0);
    const double coeff_val = expect_state(op, psi);
    const double dev = std::abs(coeff_val - (std::exp(-2.0 * r) - 1.0));
    const bool ok = dev <= 1e-6;
    pass = pass && ok;
    subs.push_back({fmt("coefficient route at r = %.0f, n_max = 200: dev %.3e (tol 1e-06)",
                        r, dev),
                    ok});
  }

  double worst_gap = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = rows[i].bound_gap / rows[i - 1].bound_gap;
    const double expected = std::exp(-2.0 * (rs[i] - rs[i - 1]));
    worst_gap = std::max(worst_gap, std::abs(ratio / expected - 1.0));
  }
  const bool gap_ok = worst_gap <= 1e-12;
  pass = pass && gap_ok;
  subs.push_back({fmt("gap decay e^{-2 dr}: max relative dev %.3e (tol 1e-12)", worst_gap),
                  gap_ok});

  report(7, "instant-time limit law at r in {0,1,2,3,4}", pass, subs);
}

void criterion_8() {
  const auto g = lorentzian(1.0);
  std::vector<Sub> subs;
  bool pass = true;
  for (const double omega_tau : {0.25, 1.0, 4.0}) {
    const double numeric = g.transform_numeric(2.0 * omega_tau);
    const double dev = std::abs(numeric - std::exp(-2.0 * omega_tau));
    const bool ok = dev <= 1e-8;
    pass = pass && ok;
    subs.push_back({fmt("omega*tau = %.2f: |quadrature - e^{-2wt}| = %.3e (tol 1e-08)",
                        omega_tau, dev),
                    ok});
  }
  report(8, "sampling self-test: Lorentzian cosine transform by quadrature", pass, subs);
}

struct Curves {
  std::vector<double> x, lor_paper, lor_derived, comp_paper, comp_derived;
};

Curves figure_curves(double lo, double hi, int points) {
  Curves c;
  const auto g = compact_bump(1.0);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = lo * std::exp(step * i);
    const auto lor = mean_photons_lorentzian(x);
    const double g_hat = g.transform(4.0 * kPi * x);
    c.x.push_back(x);
    c.lor_paper.push_back(lor.n0_paper_formula);
    c.lor_derived.push_back(lor.n0_derived_formula);
    c.comp_paper.push_back(photon_number_from_transform_linear(g_hat));
    c.comp_derived.push_back(photon_number_from_transform(g_hat));
  }
  return c;
}

void criterion_9() {
  const auto full = figure_curves(0.02, 2.0, 100);    // default figure grid
  const auto match = figure_curves(0.05, 1.0, 100);   // comparison grid
  std::vector<Sub> subs;
  bool pass = true;
  const auto check = [&](const std::string& text, bool ok) {
    subs.push_back({text, ok});
    pass = pass && ok;
  };
  const auto positive = [](const std::vector<double>& v) {
    for (const double y : v)
      if (!(y > 0.0)) return false;
    return true;
  };
  const auto decreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] < v[i - 1])) return false;
    return true;
  };

  check("Lorentzian curves positive (both variants)",
        positive(full.lor_paper) && positive(full.lor_derived));
  check("Lorentzian curves strictly decreasing (both variants)",
        decreasing(full.lor_paper) && decreasing(full.lor_derived));
  check(fmt("Lorentzian curves -> 0 at tau/T = 2 (%.2e, %.2e < 1e-05)",
            full.lor_paper.back(), full.lor_derived.back()),
        full.lor_paper.back() < 1e-5 && full.lor_derived.back() < 1e-5);
  check("compact curve positive (ghat^2 variant)", positive(full.comp_derived));
  check("compact curve positive (ghat variant)", positive(full.comp_paper));
  check("compact curve strictly decreasing (ghat^2 variant)", decreasing(full.comp_derived));
  check("compact curve strictly decreasing (ghat variant)", decreasing(full.comp_paper));
  check(fmt("compact curves -> 0 at tau/T = 2 (%.2e, %.2e < 1e-03)",
            full.comp_paper.back(), full.comp_derived.back()),
        std::abs(full.comp_paper.back()) < 1e-3 && std::abs(full.comp_derived.back()) < 1e-3);

  bool derived_cmp = true, paper_cmp = true;
  int paper_violations = 0;
  for (std::size_t i = 0; i < match.x.size(); ++i) {
    derived_cmp = derived_cmp && match.comp_derived[i] >= match.lor_derived[i];
    if (match.comp_paper[i] < match.lor_paper[i]) {
      paper_cmp = false;
      ++paper_violations;
    }
  }
  check("compact >= Lorentzian at every matched grid point (ghat^2 variants)", derived_cmp);
  check(fmt("compact >= Lorentzian at every matched grid point (ghat variants, "
            "%g violations of 100)",
            paper_violations),
        paper_cmp);

  report(9, "figure-shape properties for the photon-number curves", pass, subs);
}

void criterion_10() {
  const auto report_data = run_verification();
  const auto& d = report_data.discrepancy;
  bool oracle_matches_squared = false;
  for (const auto& check : report_data.checks)
    if (check.name.find("ghat^2 variant") != std::string::npos)
      oracle_matches_squared = check.pass;
  const double dev = std::abs(d.n0_oracle - d.n0_squared_variant);
  report(10, "discrepancy resolution: oracle photon number picks the ghat^2 variant",
         oracle_matches_squared,
         {{fmt("at ghat = 0.5: linear variant %.9f, squared variant %.9f",
               d.n0_linear_variant, d.n0_squared_variant),
           true},
          {fmt("oracle ground state <n> = %.9f, |oracle - squared| = %.3e (tol 1e-08)",
               d.n0_oracle, dev),
           oracle_matches_squared}});
}

void criterion_11() {
  std::vector<Sub> subs;
  bool pass = true;

  const QuadraticOperator<double> op{2.0, {0.7, -0.3}};
  StateVector<double> one;
  one.coeffs = VectorC<double>::Zero(4);
  one.coeffs[1] = 1.0;
  const bool exact = expect_state(op, one) == op.a_coeff;
  pass = pass && exact;
  subs.push_back({fmt("<1|T|1> = A exactly: %.17g", expect_state(op, one)), exact});

  // ghat(2w) = 1 - 1e-6 through a Lorentzian of matching width.
  const double g_target = 1.0 - 1e-6;
  const ModeConfig<double> mode{1.0, {1.0, 0.0}, 1.0};
  const auto g = lorentzian(-std::log(g_target) / (2.0 * mode.omega));
  const double lambda0 = maximal_subvacuum(mode, g);
  const double ratio = std::abs(lambda0) / (2.0 * mode.f_abs2);
  const bool half = std::abs(ratio - 0.5) < 1e-3;
  pass = pass && half;
  subs.push_back({fmt("|lambda0|/A = %.6f at ghat = 1 - 1e-6 (want 0.5 +- 1e-03)", ratio),
                  half});

  report(11, "one-photon benchmark: maximal subvacuum is half a photon", pass, subs);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  if (g_failures == 0)
    std::printf("all 11 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures;
}
