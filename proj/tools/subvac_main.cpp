// subvac — optimal subvacuum bounds for single-mode quadratic field operators.
//
// Subcommands compute closed-form diagonalization data, state expectations,
// figure data as CSV, sampling-function transforms, and run the
// oracle cross-verification report. Exit codes: 0 success, 1 usage/parse
// error, 2 domain error (e.g. a non-diagonalizable operator), 3 verification
// failure.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "subvac/core.hpp"
#include "subvac/fieldmodel.hpp"
#include "subvac/oracle.hpp"
#include "subvac/sampling.hpp"
#include "subvac/states.hpp"
#include "subvac/verify.hpp"

namespace {

using namespace subvac;

constexpr double kPi = std::numbers::pi;

struct VerificationFailed : std::runtime_error {
  VerificationFailed() : std::runtime_error("verification failed") {}
};

/// Stdout unless --out was given. Full double precision, locale-free.
class Output {
 public:
  void open(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw std::invalid_argument("cannot open output file: " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  void header(const std::vector<std::string>& columns) {
    std::string line;
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) line += ',';
      line += columns[i];
    }
    stream() << line << "\n";
  }

  void row(const std::vector<double>& values) {
    std::string line;
    char buf[32];
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
      line += buf;
    }
    stream() << line << "\n";
  }

 private:
  std::ofstream file_;
};

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || points < 2)
    throw CLI::ValidationError("grid", "grid requires 0 < lo < hi and points >= 2");
  std::vector<double> xs(points);
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs[i] = lo * std::exp(step * i);
  return xs;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) values.push_back(std::stod(item));
  if (values.empty()) throw CLI::ValidationError("list", "expected comma-separated reals");
  return values;
}

SamplingFunction<double> load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open profile file: " + path);
  std::vector<double> t, g;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    double ti, gi;
    if (ss >> ti >> gi) {
      t.push_back(ti);
      g.push_back(gi);
    }
  }
  return tabulated_even(t, g);
}

void add_diagonalize(CLI::App& app) {
  auto* cmd = app.add_subcommand("diagonalize",
                                 "Bogoliubov data and spectrum of T = A a'a + B a^2 + B* a'^2");
  auto a = std::make_shared<double>(1.0);
  auto b_re = std::make_shared<double>(0.0);
  auto b_im = std::make_shared<double>(0.0);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--A", *a, "coefficient of a'a (field^2)")->capture_default_str();
  cmd->add_option("--B-re", *b_re, "Re B")->capture_default_str();
  cmd->add_option("--B-im", *b_im, "Im B")->capture_default_str();
  cmd->add_option("--out", *out, "write CSV to this file instead of stdout");
  cmd->callback([=]() {
    const QuadraticOperator<double> op{*a, {*b_re, *b_im}};
    const auto [bt, sp] = diagonalize(op);
    Output output;
    output.open(*out);
    output.header({"alpha", "beta_abs", "beta_arg", "omega", "lambda0", "n0", "qi_bound"});
    output.row({bt.alpha, std::abs(bt.beta), std::arg(bt.beta), sp.omega, sp.lambda0,
                mean_photon_number(op), qi_bound(op)});
  });
}

void add_eigenstate(CLI::App& app) {
  auto* cmd = app.add_subcommand("eigenstate",
                                 "Fock coefficients of the lowest eigenstate of (A, B)");
  auto a = std::make_shared<double>(1.0);
  auto b_re = std::make_shared<double>(0.0);
  auto b_im = std::make_shared<double>(0.0);
  auto n_max = std::make_shared<int>(100);
  auto tol = std::make_shared<double>(1e-10);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--A", *a)->capture_default_str();
  cmd->add_option("--B-re", *b_re)->capture_default_str();
  cmd->add_option("--B-im", *b_im)->capture_default_str();
  cmd->add_option("--nmax", *n_max, "even Fock cutoff")->capture_default_str();
  cmd->add_option("--tol", *tol, "allowed truncation deficit")->capture_default_str();
  cmd->add_option("--out", *out, "write CSV to this file instead of stdout");
  cmd->callback([=]() {
    const QuadraticOperator<double> op{*a, {*b_re, *b_im}};
    const auto psi = lowest_eigenstate(diagonalize(op).first, *n_max, *tol);
    std::fprintf(stderr, "truncation deficit before renormalization: %.3e\n",
                 psi.truncation_deficit);
    Output output;
    output.open(*out);
    output.header({"n", "c_re", "c_im", "prob"});
    for (Eigen::Index n = 0; n <= psi.n_max(); ++n)
      output.row({static_cast<double>(n), psi.coeffs[n].real(), psi.coeffs[n].imag(),
                  std::norm(psi.coeffs[n])});
  });
}

void add_expect(CLI::App& app) {
  auto* cmd = app.add_subcommand("expect",
                                 "expectation values in squeezed / vacuum+two / Fock states");
  auto state = std::make_shared<std::string>();
  auto r = std::make_shared<double>(0.0);
  auto delta = std::make_shared<double>(0.0);
  auto epsilon = std::make_shared<double>(0.0);
  auto fock_n = std::make_shared<int>(1);
  auto a = std::make_shared<double>(2.0);
  auto b_re = std::make_shared<double>(0.0);
  auto b_im = std::make_shared<double>(0.0);
  auto instant = std::make_shared<bool>(false);
  auto f2 = std::make_shared<double>(1.0);
  auto omega = std::make_shared<double>(1.0);
  auto t = std::make_shared<double>(0.0);
  auto paper_formula = std::make_shared<bool>(false);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--state", *state, "squeezed | vacuum-plus-two | fock")
      ->required()
      ->check(CLI::IsMember({"squeezed", "vacuum-plus-two", "fock"}));
  cmd->add_option("--r", *r, "squeeze magnitude")->capture_default_str();
  cmd->add_option("--delta", *delta, "squeeze phase")->capture_default_str();
  cmd->add_option("--epsilon", *epsilon, "vacuum+two amplitude")->capture_default_str();
  cmd->add_option("--n", *fock_n, "Fock level")->capture_default_str();
  cmd->add_option("--A", *a)->capture_default_str();
  cmd->add_option("--B-re", *b_re)->capture_default_str();
  cmd->add_option("--B-im", *b_im)->capture_default_str();
  cmd->add_flag("--instant", *instant,
                "use the instant-time squared field at time --t (squeezed, delta = 0)");
  cmd->add_option("--f2", *f2, "|f(x)|^2 for --instant")->capture_default_str();
  cmd->add_option("--omega", *omega, "mode angular frequency for --instant")
      ->capture_default_str();
  cmd->add_option("--t", *t, "measurement time for --instant")->capture_default_str();
  cmd->add_flag("--paper-formula", *paper_formula,
                "also print the 4*eps*A bracket variant for vacuum-plus-two");
  cmd->add_option("--out", *out, "write CSV to this file instead of stdout");
  cmd->callback([=]() {
    Output output;
    output.open(*out);
    const QuadraticOperator<double> op{*a, {*b_re, *b_im}};
    double expectation = 0.0, photons = 0.0;
    if (*state == "squeezed") {
      const SqueezeParameter<double> sq{*r, *delta};
      photons = mean_photons_squeezed(sq);
      if (*instant) {
        if (*delta != 0.0)
          throw CLI::ValidationError("--instant", "instant-time curve assumes delta = 0");
        expectation = instant_e2_squeezed(ModeConfig<double>{*f2, {*f2, 0.0}, *omega}, *r, *t);
      } else {
        expectation = expect_squeezed(op, sq);
      }
    } else if (*state == "vacuum-plus-two") {
      const VacuumPlusTwo<double> st{*epsilon};
      expectation = expect_vacuum_plus_two(op, st);
      photons = mean_photons_vacuum_plus_two(st);
    } else {  // fock
      if (*fock_n < 0) throw CLI::ValidationError("--n", "Fock level must be >= 0");
      StateVector<double> psi;
      psi.coeffs = VectorC<double>::Zero(*fock_n + 3);
      psi.coeffs[*fock_n] = 1.0;
      expectation = expect_state(op, psi);
      photons = *fock_n;
    }
    std::vector<std::string> header{"expectation", "mean_photons", "negative"};
    std::vector<double> row{expectation, photons, expectation < 0.0 ? 1.0 : 0.0};
    if (*paper_formula && *state == "vacuum-plus-two") {
      header.push_back("expectation_paper_formula");
      row.push_back(expect_vacuum_plus_two_alt(op, VacuumPlusTwo<double>{*epsilon}));
    }
    output.header(header);
    output.row(row);
  });
}

void add_fig1(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "fig1", "lowest-eigenstate photon number vs tau/T, Lorentzian averaging");
  auto lo = std::make_shared<double>(0.02);
  auto hi = std::make_shared<double>(2.0);
  auto points = std::make_shared<int>(100);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--lo", *lo, "smallest tau/T")->capture_default_str();
  cmd->add_option("--hi", *hi, "largest tau/T")->capture_default_str();
  cmd->add_option("--points", *points, "log-spaced grid size")->capture_default_str();
  cmd->add_option("--out", *out, "write CSV to this file instead of stdout");
  cmd->callback([=]() {
    Output output;
    output.open(*out);
    output.header({"tau_over_T", "n0_paper_formula", "n0_derived_formula"});
    for (const double x : log_grid(*lo, *hi, *points)) {
      const auto n0 = mean_photons_lorentzian(x);
      output.row({x, n0.n0_paper_formula, n0.n0_derived_formula});
    }
  });
}

void add_fig2(CLI::App& app) {
  auto* cmd = app.add_subcommand("fig2", "compact-support sampling profile g_F");
  auto points = std::make_shared<int>(241);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--points", *points, "grid size on t/tau in [-0.6, 0.6]")
      ->capture_default_str();
  cmd->add_option("--out", *out, "write CSV to this file instead of stdout");
  cmd->callback([=]() {
    if (*points < 2) throw CLI::ValidationError("--points", "need at least 2 points");
    Output output;
    output.open(*out);
    const auto g = compact_bump(1.0);
    output.header({"t_over_tau", "g_times_tau"});
    for (int i = 0; i < *points; ++i) {
      const double t = -0.6 + 1.2 * i / (*points - 1);
      output.row({t, g(t)});
    }
  });
}

void add_fig3(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "fig3", "photon number vs tau/T, compact-support averaging, with Lorentzian comparison");
  auto lo = std::make_shared<double>(0.02);
  auto hi = std::make_shared<double>(2.0);
  auto points = std::make_shared<int>(100);
  auto check_zero = std::make_shared<bool>(false);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--lo", *lo, "smallest tau/T")->capture_default_str();
  cmd->add_option("--hi", *hi, "largest tau/T")->capture_default_str();
  cmd->add_option("--points", *points, "log-spaced grid size")->capture_default_str();
  cmd->add_flag("--check-zero", *check_zero, "verify ghat(0) = 1 before emitting rows");
  cmd->add_option("--out", *out, "write CSV to this file instead of stdout");
  cmd->callback([=]() {
    Output output;
    output.open(*out);
    const auto g = compact_bump(1.0);
    if (*check_zero)
      std::fprintf(stderr, "ghat_F(0) = %.17g\n", g.transform(0.0));
    output.header({"tau_over_T", "g_hat_2omega", "n0_derived_formula", "n0_paper_formula",
                   "exceeds_lorentzian_derived", "exceeds_lorentzian_paper"});
    for (const double x : log_grid(*lo, *hi, *points)) {
      // With tau = 1 and T = 2pi/omega: 2 omega tau = 4 pi tau/T.
      const double g_hat = g.transform(4.0 * kPi * x);
      const double n0_derived = photon_number_from_transform(g_hat);
      const double n0_paper = photon_number_from_transform_linear(g_hat);
      const auto lorentz = mean_photons_lorentzian(x);
      output.row({x, g_hat, n0_derived, n0_paper,
                  n0_derived >= lorentz.n0_derived_formula ? 1.0 : 0.0,
                  n0_paper >= lorentz.n0_paper_formula ? 1.0 : 0.0});
    }
  });
}

void add_sampling_ft(CLI::App& app) {
  auto* cmd = app.add_subcommand("sampling-ft", "Fourier transform ghat(omega) of a profile");
  auto family = std::make_shared<std::string>("lorentzian");
  auto tau = std::make_shared<double>(1.0);
  auto omega_min = std::make_shared<double>(0.0);
  auto omega_max = std::make_shared<double>(20.0);
  auto points = std::make_shared<int>(101);
  auto file = std::make_shared<std::string>();
  auto numeric = std::make_shared<bool>(false);
  auto out = std::make_shared<std::string>();
  cmd->add_option("--family", *family, "lorentzian | compact-bump | tabulated")
      ->check(CLI::IsMember({"lorentzian", "compact-bump", "tabulated"}))
      ->capture_default_str();
  cmd->add_option("--tau", *tau, "width")->capture_default_str();
  cmd->add_option("--omega-min", *omega_min)->capture_default_str();
  cmd->add_option("--omega-max", *omega_max)->capture_default_str();
  cmd->add_option("--points", *points)->capture_default_str();
  cmd->add_option("--file", *file, "two-column (t, g) text file for tabulated");
  cmd->add_flag("--numeric", *numeric, "add a quadrature column for every family");
  cmd->add_option("--out", *out, "write CSV to this file instead of stdout");
  cmd->callback([=]() {
    if (*points < 2 || !(*omega_max > *omega_min))
      throw CLI::ValidationError("grid", "need omega-max > omega-min and points >= 2");
    Output output;
    output.open(*out);
    const SamplingFunction<double> g =
        *family == "lorentzian"    ? lorentzian(*tau)
        : *family == "compact-bump" ? compact_bump(*tau)
                                     : load_tabulated(*file);
    std::vector<std::string> header{"omega", "g_hat"};
    if (*numeric) header.push_back("g_hat_numeric");
    output.header(header);
    for (int i = 0; i < *points; ++i) {
      const double omega = *omega_min + (*omega_max - *omega_min) * i / (*points - 1);
      std::vector<double> row{omega, g.transform(omega)};
      if (*numeric) row.push_back(g.transform_numeric(omega));
      output.row(row);
    }
  });
}

void add_limit_sequence(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "limit-sequence", "squeezed-state approach to the instant-time bound -f^2");
  auto f2 = std::make_shared<double>(1.0);
  auto r_values = std::make_shared<std::string>("0,0.5,1,1.5,2,2.5,3");
  auto out = std::make_shared<std::string>();
  cmd->add_option("--f2", *f2, "|f(x)|^2")->capture_default_str();
  cmd->add_option("--r-values", *r_values, "comma-separated increasing squeeze magnitudes")
      ->capture_default_str();
  cmd->add_option("--out", *out, "write CSV to this file instead of stdout");
  cmd->callback([=]() {
    Output output;
    output.open(*out);
    const ModeConfig<double> mode{*f2, {*f2, 0.0}, 1.0};
    output.header({"r", "value", "bound_gap"});
    for (const auto& rowdata : limit_sequence_instant(mode, parse_list(*r_values)))
      output.row({rowdata.r, rowdata.value, rowdata.bound_gap});
  });
}

void add_verify(CLI::App& app) {
  auto* cmd = app.add_subcommand("verify", "cross-check closed forms against the matrix oracle");
  auto opts = std::make_shared<VerifyOptions>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--nmax", opts->n_max, "Fock cutoff for the oracle grid")
      ->capture_default_str();
  cmd->add_option("--nmax-boundary", opts->n_max_near_boundary,
                  "Fock cutoff for the near-boundary case")
      ->capture_default_str();
  cmd->add_option("--grid-max-ratio", opts->grid_max_ratio, "largest 2|B|/A on the grid")
      ->capture_default_str();
  cmd->add_option("--grid-size", opts->grid_size)->capture_default_str();
  cmd->add_option("--seed", opts->seed, "seed for B phases and random states")
      ->capture_default_str();
  cmd->add_option("--random-states", opts->random_states)->capture_default_str();
  cmd->add_option("--out", *out, "write the report to this file instead of stdout");
  cmd->callback([=]() {
    Output output;
    output.open(*out);
    const auto report = run_verification(*opts);
    print_report(output.stream(), report);
    if (!report.all_pass) throw VerificationFailed();
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal subvacuum bounds for a single excited field mode"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key-value config file; command-line flags override it");
  add_diagonalize(app);
  add_eigenstate(app);
  add_expect(app);
  add_fig1(app);
  add_fig2(app);
  add_fig3(app);
  add_sampling_ft(app);
  add_limit_sequence(app);
  add_verify(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const VerificationFailed&) {
    std::cerr << "error: verification failed\n";
    return 3;
  } catch (const subvac::NotDiagonalizable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
