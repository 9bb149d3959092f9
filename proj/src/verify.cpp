#include "mqm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include "mqm/heun.hpp"
#include "mqm/oracle.hpp"

namespace mqm::verify {
namespace {

using report::Check;
using report::make_check;
using report::Relation;

// First three zeros of J_0.
constexpr double kBesselJ0Zeros[3] = {2.404825557695773, 5.520078110286311, 8.653727912911013};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::string tag(const char* base, int l) { return std::string(base) + ".l=" + std::to_string(l); }

double scenario_frequency(const ConfinementSpec& scenario, int l, double m, bool printed) {
  return ground_frequency(scenario, l, m, printed ? CubicForm::kPrinted : CubicForm::kDerived);
}

void frequency_checks(report::Report& rep, bool printed) {
  double coulomb = 0.0;
  double linear = 0.0;
  double mixed = 0.0;
  for (int l = -3; l <= 3; ++l) {
    for (double m : {0.5, 1.0, 2.0}) {
      for (double c : {0.5, 1.0}) {
        const auto cs = frequency_solve_general(Coulomb{c}, 1, l, m);
        const auto ls = frequency_solve_general(Linear{c}, 1, l, m);
        coulomb = std::max(coulomb, cs.frequencies.size() == 1
                                        ? rel(cs.frequencies[0], coulomb_frequency_ground(l, m, c))
                                        : INFINITY);
        linear = std::max(linear, ls.frequencies.size() == 1
                                      ? rel(ls.frequencies[0], linear_frequency_ground(l, m, c))
                                      : INFINITY);
      }
      for (auto [alpha, eta] : {std::pair{1.0, 1.0}, std::pair{1.0, 0.5}}) {
        const CoulombLinear s{alpha, eta};
        const auto ms = frequency_solve_general(s, 1, l, m);
        mixed = std::max(mixed, ms.frequencies.size() == 1
                                    ? rel(ms.frequencies[0], scenario_frequency(s, l, m, printed))
                                    : INFINITY);
      }
    }
  }
  rep.checks.push_back(make_check("frequency.coulomb.scan-vs-closed-form", coulomb, 1e-9));
  rep.checks.push_back(make_check("frequency.linear.scan-vs-closed-form", linear, 1e-9));
  rep.checks.push_back(make_check("frequency.mixed.scan-vs-cubic", mixed, 1e-8));
}

void limit_checks(report::Report& rep, bool printed) {
  const auto form = printed ? CubicForm::kPrinted : CubicForm::kDerived;
  double to_coulomb = 0.0;
  double to_linear = 0.0;
  for (int l = -3; l <= 3; ++l) {
    for (double m : {0.5, 1.0, 2.0}) {
      to_coulomb = std::max(to_coulomb, rel(mixed_frequency_ground(l, m, 1.0, 1e-8, form),
                                            coulomb_frequency_ground(l, m, 1.0)));
      to_linear = std::max(to_linear, rel(mixed_frequency_ground(l, m, 1e-8, 1.0, form),
                                          linear_frequency_ground(l, m, 1.0)));
    }
  }
  rep.checks.push_back(make_check("limit.mixed-to-coulomb", to_coulomb, 1e-5));
  rep.checks.push_back(make_check("limit.mixed-to-linear", to_linear, 1e-5));
}

void energy_checks(report::Report& rep) {
  double coulomb = 0.0;
  for (double m : {0.5, 1.0, 2.0}) {
    for (double alpha : {0.5, 1.0}) {
      const Coulomb s{alpha};
      const double e = constrained_energy(s, 1, 0, m, coulomb_frequency_ground(0, m, alpha)).energy;
      coulomb = std::max(coulomb, rel(e, 4.0 * m * alpha * alpha));
    }
  }
  const double w = std::cbrt(1.5);
  const double linear_ref = 2.0 * w - 0.5 * std::pow(2.0 / 3.0, 2.0 / 3.0);
  const double e_lin = constrained_energy(Linear{1.0}, 1, 0, 1.0, linear_frequency_ground(0, 1.0, 1.0)).energy;
  rep.checks.push_back(make_check("energy.coulomb-ground", coulomb, 1e-12));
  rep.checks.push_back(make_check("energy.linear-ground", rel(e_lin, linear_ref), 1e-12));
}

void truncation_checks(report::Report& rep, bool printed) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coupling(0.2, 2.0);
  std::uniform_real_distribution<double> mass(0.5, 2.0);
  std::uniform_int_distribution<int> angular(-3, 3);
  double worst_coeff = 0.0;
  double worst_residual = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const CoulombLinear s{coupling(rng), coupling(rng)};
    const double m = mass(rng);
    const int l = angular(rng);
    const double w = scenario_frequency(s, l, m, printed);
    const auto p = heun::HeunParams::for_degree(1, l, m, m * w, s.alpha, s.eta);
    const auto series = heun::heun_coefficients(p, 11);
    double largest = 0.0;
    for (double c : series.coefficients) largest = std::max(largest, std::abs(c));
    for (int k = 2; k <= 11; ++k) {
      worst_coeff = std::max(worst_coeff, std::abs(series.coefficients[k]) / largest);
    }
    for (int i = 1; i <= 20; ++i) {
      const double r = 0.2 * i;
      worst_residual = std::max(worst_residual, std::abs(radial_ode_residual(s, 1, l, m, w, r)));
    }
  }
  rep.checks.push_back(make_check("truncation.mixed.coefficients-vanish", worst_coeff, 1e-12));
  rep.checks.push_back(make_check("truncation.mixed.ode-residual", worst_residual, 1e-9));
}

void oracle_checks(report::Report& rep, int points, bool printed) {
  const std::vector<std::pair<std::string, ConfinementSpec>> scenarios = {
      {"coulomb", Coulomb{1.0}},
      {"linear", Linear{1.0}},
      {"mixed", CoulombLinear{1.0, 1.0}},
      {"mixed-eta0.5", CoulombLinear{1.0, 0.5}},
  };
  const double m = 1.0;
  for (const auto& [name, s] : scenarios) {
    double e_plus = 0.0;
    double e_minus = 0.0;
    for (int l : {0, 1, -1}) {
      const double w = scenario_frequency(s, l, m, printed);
      const auto level = constrained_energy(s, 1, l, m, w);
      auto problem = oracle::RadialProblem::for_scenario(s, l, m, m * w);
      const double rho_max = oracle::suggest_rho_max(problem, level.energy);
      const auto fd = oracle::fd_eigenvalues(problem, {rho_max, points}, 10);
      double best = INFINITY;
      double best_e = NAN;
      for (const auto& lv : fd.levels) {
        if (rel(lv.energy, level.energy) < best) {
          best = rel(lv.energy, level.energy);
          best_e = lv.energy;
        }
      }
      rep.checks.push_back(make_check(tag(("oracle.membership." + name).c_str(), l), best, 1e-3));
      const int base = std::max(points / 4, 100);
      const auto conv = oracle::convergence_study(
          problem, {{rho_max, base}, {rho_max, 2 * base}, {rho_max, 4 * base}}, level.energy);
      rep.checks.push_back(make_check(tag(("oracle.order." + name).c_str(), l), conv.observed_order,
                                      1.5, Relation::kWithin, 2.3));
      report::ResultRow row{1, l, w, level.energy, best_e, best, "truncation-constrained", {}};
      row.extra["scenario"] = name;
      rep.results.push_back(row);
      if (l == 1) e_plus = level.energy;
      if (l == -1) e_minus = level.energy;
    }
    rep.checks.push_back(make_check("degeneracy." + name, std::abs(e_plus - e_minus), 1e-9,
                                    Relation::kAtLeast));
  }
}

void landau_checks(report::Report& rep) {
  oracle::RadialProblem p;
  p.l = 0;
  p.m = 1.0;
  p.mlambda = 1.0;
  const auto fd = oracle::fd_eigenvalues(p, {8.0, 4000}, 3);
  rep.checks.push_back(make_check("landau.ground", std::abs(fd.levels[0].energy - 1.0), 1e-4));
  rep.checks.push_back(make_check(
      "landau.spacing", std::abs(fd.levels[1].energy - fd.levels[0].energy - 2.0), 1e-3));
}

void hardwall_checks(report::Report& rep) {
  const auto free = SystemParams::from_product(1.0, 0.0);
  double prev_dev = INFINITY;
  bool decreasing = true;
  const double bounds[3] = {0.021, 0.005, 0.003};
  for (int n = 0; n < 3; ++n) {
    const double k_exact = std::sqrt(2.0 * hardwall_energy(n, 0, free, 1.0).energy);
    rep.checks.push_back(make_check("hardwall.bessel-zero.n=" + std::to_string(n),
                                    std::abs(k_exact - kBesselJ0Zeros[n]), 1e-6));
    const double k_asym = std::sqrt(2.0 * hardwall_energy_asymptotic(n, 0, free, 1.0).energy);
    const double dev = rel(k_asym, kBesselJ0Zeros[n]);
    rep.checks.push_back(
        make_check("hardwall.asymptotic-deviation.n=" + std::to_string(n), dev, bounds[n]));
    decreasing = decreasing && dev < prev_dev;
    prev_dev = dev;
  }
  rep.checks.push_back(
      make_check("hardwall.asymptotic-error-decreasing", decreasing ? 1.0 : 0.0, 1.0, Relation::kAtLeast));
  const auto weak = SystemParams::from_product(1.0, 0.01);
  for (int l : {0, 1}) {
    const double exact = hardwall_energy(0, l, weak, 1.0).energy;
    const auto problem = oracle::RadialProblem::for_scenario(HardWall{1.0}, l, 1.0, 0.01);
    const auto fd = oracle::fd_hardwall_eigenvalues(problem, {1.0, 4000}, 1);
    rep.checks.push_back(
        make_check(tag("hardwall.kummer-vs-oracle", l), rel(exact, fd.levels[0].energy), 1e-4));
  }
}

void cubic_notes(report::Report& rep) {
  for (auto [alpha, eta] : {std::pair{1.0, 1.0}, std::pair{1.0, 0.5}}) {
    const double derived = mixed_frequency_ground(0, 1.0, alpha, eta, CubicForm::kDerived);
    const double printed = mixed_frequency_ground(0, 1.0, alpha, eta, CubicForm::kPrinted);
    const double a2_derived = truncation_residual(CoulombLinear{alpha, eta}, 1, 0, 1.0, derived);
    const double a2_printed = truncation_residual(CoulombLinear{alpha, eta}, 1, 0, 1.0, printed);
    rep.notes.push_back("mixed cubic at m=1, l=0, alpha=" + report::format_number(alpha) +
                        ", eta=" + report::format_number(eta) + ": derived root " +
                        report::format_number(derived) + " (a_2 = " +
                        report::format_number(a2_derived) + "), root without alpha*eta " +
                        report::format_number(printed) + " (a_2 = " +
                        report::format_number(a2_printed) + ")");
  }
}

}  // namespace

double radial_ode_residual(const ConfinementSpec& scenario, int n, int l, double m,
                           double frequency, double r) {
  const auto p = heun::HeunParams::for_degree(n, l, m, m * frequency, coulomb_coupling(scenario),
                                              linear_coupling(scenario));
  const auto a = heun::heun_coefficients(p, std::max(2, n + 1)).coefficients;
  double h = 0.0, dh = 0.0, d2h = 0.0;
  for (int k = n; k >= 0; --k) {
    d2h = d2h * r + 2.0 * dh;
    dh = dh * r + h;
    h = h * r + a[k];
  }
  const int power = std::abs(l);
  const double pref = std::pow(r, power) * std::exp(-0.5 * r * r - 0.5 * p.theta * r);
  const double g = power / r - r - 0.5 * p.theta;
  const double dg = -power / (r * r) - 1.0;
  const double R = pref * h;
  const double dR = pref * (g * h + dh);
  const double d2R = pref * ((g * g + dg) * h + 2.0 * g * dh + d2h);
  return d2R + dR / r - double(l * l) / (r * r) * R - r * r * R - p.theta * r * R - p.nu / r * R +
         p.beta * R;
}

report::Report run_verification(const VerifyOptions& options) {
  report::Report rep;
  rep.config["command"] = "verify";
  rep.config["grid_points"] = options.grid_points;
  rep.config["inject_fault"] =
      options.inject_printed_cubic ? report::Json("printed-cubic") : report::Json(nullptr);
  const bool printed = options.inject_printed_cubic;
  frequency_checks(rep, printed);
  limit_checks(rep, printed);
  energy_checks(rep);
  truncation_checks(rep, printed);
  oracle_checks(rep, options.grid_points, printed);
  landau_checks(rep);
  hardwall_checks(rep);
  cubic_notes(rep);
  return rep;
}

}  // namespace mqm::verify
