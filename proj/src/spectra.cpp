#include "mqm/spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "mqm/error.hpp"
#include "mqm/specfun.hpp"

namespace mqm {
namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string(what) + " must be positive and finite (got " +
                          std::to_string(value) + ")");
  }
}

void require_constrained(const ConfinementSpec& scenario, const char* op) {
  if (!is_constrained(scenario)) {
    throw ValidationError(std::string(op) + ": scenario must be coulomb, linear or mixed (got " +
                          std::string(scenario_name(scenario)) + ")");
  }
}

void require_degree(int n) {
  if (n < 1) {
    throw ValidationError("radial quantum number n must be >= 1 for constrained scenarios (got " +
                          std::to_string(n) + ")");
  }
}

/// Bisection on [lo, hi] with f(lo), f(hi) of opposite sign.
double bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo,
              double rel_tol) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= rel_tol * std::abs(mid) || mid == lo || mid == hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Index-th (0-based) root of f along a uniform scan of s in [s_lo, s_hi].
/// Returns nullopt-like NaN and the number of roots seen when short.
struct ScanResult {
  double root = std::numeric_limits<double>::quiet_NaN();
  int found = 0;
};

ScanResult nth_root_by_scan(const std::function<double(double)>& f, double s_lo, double s_hi,
                            double step, int index) {
  ScanResult result;
  double prev_s = s_lo;
  double prev_f = f(s_lo);
  const int steps = static_cast<int>(std::ceil((s_hi - s_lo) / step));
  for (int i = 1; i <= steps; ++i) {
    const double s = std::min(s_hi, s_lo + i * step);
    const double fs = f(s);
    if (prev_f == 0.0 || (fs < 0.0) != (prev_f < 0.0)) {
      if (result.found == index) {
        result.root = prev_f == 0.0 ? prev_s : bisect(f, prev_s, s, prev_f, 1e-15);
        ++result.found;
        return result;
      }
      ++result.found;
    }
    prev_s = s;
    prev_f = fs;
  }
  return result;
}

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 4> kGaussNodes = {0.1834346424956498, 0.5255324099163290,
                                               0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> kGaussWeights = {0.3626837833783620, 0.3137066458778873,
                                                 0.2223810344533745, 0.1012285362903763};

double integrate(const std::function<double(double)>& f, double a, double b, int panels) {
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
      const double off = 0.5 * width * kGaussNodes[i];
      total += kGaussWeights[i] * (f(mid - off) + f(mid + off));
    }
  }
  return 0.5 * width * total;
}

void finish_solution(RadialSolution& sol, const SampleGrid& samples) {
  const double mass = integrate(
      [&](double r) {
        const double v = sol.unnormalised(r);
        return v * v * r;
      },
      0.0, sol.r_max, 400);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw NumericalError("radial solution has zero or non-finite norm");
  }
  sol.norm = 1.0 / std::sqrt(mass);
  if (samples.points < 2 || !(samples.r_hi > samples.r_lo) || samples.r_lo < 0.0) {
    throw ValidationError("sample grid needs r_lo >= 0, r_hi > r_lo and at least 2 points");
  }
  sol.grid.resize(samples.points);
  sol.values.resize(samples.points);
  const double dr = (samples.r_hi - samples.r_lo) / (samples.points - 1);
  for (int i = 0; i < samples.points; ++i) {
    sol.grid[i] = samples.r_lo + i * dr;
    sol.values[i] = sol(sol.grid[i]);
  }
}

}  // namespace

void validate(const ConfinementSpec& spec) {
  std::visit(Overloaded{
                 [](const NoConfinement&) {},
                 [](const HardWall& s) { require_positive(s.rho0, "hard-wall radius rho0"); },
                 [](const Coulomb& s) { require_positive(s.alpha, "Coulomb coupling alpha"); },
                 [](const Linear& s) { require_positive(s.eta, "linear coupling eta"); },
                 [](const CoulombLinear& s) {
                   require_positive(s.alpha, "Coulomb coupling alpha");
                   require_positive(s.eta, "linear coupling eta");
                 },
             },
             spec);
}

std::string_view scenario_name(const ConfinementSpec& spec) {
  return std::visit(Overloaded{
                        [](const NoConfinement&) { return std::string_view("none"); },
                        [](const HardWall&) { return std::string_view("hardwall"); },
                        [](const Coulomb&) { return std::string_view("coulomb"); },
                        [](const Linear&) { return std::string_view("linear"); },
                        [](const CoulombLinear&) { return std::string_view("mixed"); },
                    },
                    spec);
}

double coulomb_coupling(const ConfinementSpec& spec) {
  if (const auto* c = std::get_if<Coulomb>(&spec)) return c->alpha;
  if (const auto* c = std::get_if<CoulombLinear>(&spec)) return c->alpha;
  return 0.0;
}

double linear_coupling(const ConfinementSpec& spec) {
  if (const auto* c = std::get_if<Linear>(&spec)) return c->eta;
  if (const auto* c = std::get_if<CoulombLinear>(&spec)) return c->eta;
  return 0.0;
}

bool is_constrained(const ConfinementSpec& spec) {
  return std::holds_alternative<Coulomb>(spec) || std::holds_alternative<Linear>(spec) ||
         std::holds_alternative<CoulombLinear>(spec);
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::kClosedForm:
      return "closed-form";
    case Provenance::kTruncationConstrained:
      return "truncation-constrained";
    case Provenance::kNumericalOracle:
      return "numerical-oracle";
    case Provenance::kQuantizationRoot:
      return "quantization-root";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Hard wall

EnergyLevel hardwall_energy_asymptotic(int n, int l, const SystemParams& params, double rho0) {
  if (n < 0) throw ValidationError("hard-wall n must be >= 0");
  require_positive(rho0, "hard-wall radius rho0");
  const double phase = n * kPi + 0.5 * std::abs(l) * kPi + 0.75 * kPi;
  const double energy =
      phase * phase / (2.0 * params.m * rho0 * rho0) + params.mlambda() * l / params.m;
  return EnergyLevel{n, l, energy, params.frequency(), Provenance::kClosedForm};
}

double hardwall_kummer_a(int l, double m, double mlambda, double energy) {
  return 0.5 * (std::abs(l) + 1 + l) - m * energy / (2.0 * mlambda);
}

EnergyLevel hardwall_energy_exact(int n, int l, const SystemParams& params, double rho0,
                                  EnergyBracket bracket) {
  if (n < 0) throw ValidationError("hard-wall n must be >= 0");
  require_positive(rho0, "hard-wall radius rho0");
  const double mlambda = params.mlambda();
  if (!(mlambda > 0.0)) {
    throw ValidationError("hardwall_energy_exact needs M*lambda > 0; use the Bessel limit at 0");
  }
  if (!(bracket.hi > bracket.lo)) throw ValidationError("energy bracket needs hi > lo");

  const double b = std::abs(l) + 1.0;
  const double x0 = mlambda * rho0 * rho0;
  const double m = params.m;
  const double e_lo = bracket.lo;
  // Scan in s = sqrt(E - E_lo): Kummer zeros are close to evenly spaced in s.
  auto boundary = [&](double s) {
    const double energy = e_lo + s * s;
    return specfun::kummer_m({hardwall_kummer_a(l, m, mlambda, energy), b, x0});
  };
  const double step = kPi / (40.0 * rho0 * std::sqrt(2.0 * m));
  const auto scan = nth_root_by_scan(boundary, 0.0, std::sqrt(bracket.hi - e_lo), step, n);
  if (scan.found <= n) {
    throw BracketTooSmall("energy bracket holds " + std::to_string(scan.found) +
                              " boundary zeros; level n = " + std::to_string(n) + " needs " +
                              std::to_string(n + 1),
                          scan.found);
  }
  return EnergyLevel{n, l, e_lo + scan.root * scan.root, params.frequency(),
                     Provenance::kQuantizationRoot};
}

EnergyLevel hardwall_energy_bessel_limit(int n, int l, double m, double rho0) {
  if (n < 0) throw ValidationError("hard-wall n must be >= 0");
  require_positive(m, "mass m");
  require_positive(rho0, "hard-wall radius rho0");
  const int order = std::abs(l);
  auto boundary = [&](double k) { return specfun::bessel_j(order, k * rho0); };
  const double step = kPi / (40.0 * rho0);
  const double k_hi = ((n + 2) + 0.5 * order + 1.0) * kPi / rho0;
  const auto scan = nth_root_by_scan(boundary, 1e-6 / rho0, k_hi, step, n);
  if (scan.found <= n) throw BracketTooSmall("Bessel zero scan came up short", scan.found);
  const double k = scan.root;
  return EnergyLevel{n, l, k * k / (2.0 * m), 0.0, Provenance::kQuantizationRoot};
}

EnergyLevel hardwall_energy(int n, int l, const SystemParams& params, double rho0) {
  const double mlambda = params.mlambda();
  if (mlambda == 0.0) return hardwall_energy_bessel_limit(n, l, params.m, rho0);
  // kappa never exceeds the free-wall value plus the largest confinement term.
  const double lo = mlambda * l / params.m;
  double k_bound = ((n + 2) + 0.5 * std::abs(l)) * kPi / rho0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    const double kappa_hi = k_bound * k_bound + std::pow(mlambda * rho0, 2);
    try {
      return hardwall_energy_exact(n, l, params, rho0,
                                   {lo, lo + kappa_hi / (2.0 * params.m)});
    } catch (const BracketTooSmall&) {
      k_bound *= 2.0;
    }
  }
  throw BracketTooSmall("could not bracket hard-wall level n = " + std::to_string(n), 0);
}

// ---------------------------------------------------------------------------
// Frequencies and energies

double coulomb_frequency_ground(int l, double m, double alpha) {
  require_positive(m, "mass m");
  if (!(alpha > 0.0)) {
    throw ValidationError("Coulomb coupling alpha must be positive; alpha = 0 forces a zero "
                          "frequency (M*lambda > 0 violated)");
  }
  return 2.0 * m * alpha * alpha / (1.0 + 2.0 * std::abs(l));
}

double linear_frequency_ground(int l, double m, double eta) {
  require_positive(m, "mass m");
  if (!(eta > 0.0)) {
    throw ValidationError("linear coupling eta must be positive; eta = 0 forces a zero "
                          "frequency (M*lambda > 0 violated)");
  }
  return std::cbrt(eta * eta * (2.0 * std::abs(l) + 3.0) / (2.0 * m));
}

std::vector<double> mixed_frequency_cubic(int l, double m, double alpha, double eta,
                                          CubicForm form) {
  require_positive(m, "mass m");
  require_positive(alpha, "Coulomb coupling alpha");
  require_positive(eta, "linear coupling eta");
  const double al = std::abs(l);
  const double coupling = form == CubicForm::kDerived ? alpha * eta : 1.0;
  return {1.0, -2.0 * m * alpha * alpha / (1.0 + 2.0 * al),
          -4.0 * (1.0 + al) * coupling / (1.0 + 2.0 * al), -(3.0 + 2.0 * al) * eta * eta / (2.0 * m)};
}

std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0) {
  if (c3 == 0.0) throw ValidationError("cubic_real_roots: leading coefficient is zero");
  const double a = c2 / c3;
  const double b = c1 / c3;
  const double c = c0 / c3;
  // x = t - a/3 gives t^3 + p t + q = 0.
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  std::vector<double> roots;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    roots.push_back(std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s) - a / 3.0);
  } else if (p == 0.0) {
    roots.push_back(-a / 3.0);
  } else {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(r * std::cos(phi - 2.0 * kPi * k / 3.0) - a / 3.0);
  }
  auto f = [&](double x) { return ((x + a) * x + b) * x + c; };
  auto df = [&](double x) { return (3.0 * x + 2.0 * a) * x + b; };
  for (double& x : roots) {
    for (int it = 0; it < 3; ++it) {
      const double d = df(x);
      if (d == 0.0) break;
      const double next = x - f(x) / d;
      if (!std::isfinite(next) || std::abs(f(next)) >= std::abs(f(x))) break;
      x = next;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double mixed_frequency_ground(int l, double m, double alpha, double eta, CubicForm form) {
  const auto c = mixed_frequency_cubic(l, m, alpha, eta, form);
  auto f = [&](double x) { return ((c[0] * x + c[1]) * x + c[2]) * x + c[3]; };
  const auto roots = cubic_real_roots(c[0], c[1], c[2], c[3]);
  std::vector<double> positive;
  for (double r : roots) {
    if (r > 0.0) positive.push_back(r);
  }
  const double scale = std::abs(c[1]) + std::abs(c[2]) + std::abs(c[3]) + 1.0;
  if (positive.size() == 1 && std::abs(f(positive[0])) <= 1e-10 * scale * std::pow(positive[0] + 1.0, 3)) {
    return positive[0];
  }
  // Fallback: f(0) = c0 < 0 and f -> +inf, so [0, Cauchy bound] brackets the root.
  const double hi = 1.0 + std::max({std::abs(c[1]), std::abs(c[2]), std::abs(c[3])});
  return bisect(f, 0.0, hi, f(0.0), 1e-15);
}

double ground_frequency(const ConfinementSpec& scenario, int l, double m, CubicForm form) {
  validate(scenario);
  if (const auto* s = std::get_if<Coulomb>(&scenario)) return coulomb_frequency_ground(l, m, s->alpha);
  if (const auto* s = std::get_if<Linear>(&scenario)) return linear_frequency_ground(l, m, s->eta);
  if (const auto* s = std::get_if<CoulombLinear>(&scenario)) {
    return mixed_frequency_ground(l, m, s->alpha, s->eta, form);
  }
  require_constrained(scenario, "ground_frequency");
  return 0.0;
}

EnergyLevel constrained_energy(const ConfinementSpec& scenario, int n, int l, double m,
                               double frequency) {
  if (std::holds_alternative<HardWall>(scenario)) {
    throw ValidationError("constrained_energy does not apply to the hard wall");
  }
  validate(scenario);
  require_degree(n);
  require_positive(m, "mass m");
  require_positive(frequency, "frequency");
  const double eta = linear_coupling(scenario);
  double energy = frequency * (n + std::abs(l) - l + 1);
  if (eta > 0.0) energy -= eta * eta / (2.0 * m * frequency * frequency);
  return EnergyLevel{n, l, energy, frequency, Provenance::kTruncationConstrained};
}

double truncation_residual(const ConfinementSpec& scenario, int n, int l, double m,
                           double frequency) {
  const auto params = heun::HeunParams::for_degree(n, l, m, m * frequency,
                                                   coulomb_coupling(scenario),
                                                   linear_coupling(scenario));
  return heun::heun_coefficients(params, std::max(2, n + 1)).coefficients[n + 1];
}

FrequencySolve frequency_solve_general(const ConfinementSpec& scenario, int n, int l, double m,
                                       FrequencyScanOptions options) {
  validate(scenario);
  require_constrained(scenario, "frequency_solve_general");
  require_degree(n);
  require_positive(m, "mass m");
  if (options.grid_points < 2) throw ValidationError("frequency scan needs at least 2 points");

  const double alpha = coulomb_coupling(scenario);
  const double eta = linear_coupling(scenario);
  const double scale = 2.0 * m * alpha * alpha + std::cbrt(eta * eta / (2.0 * m)) + 1.0;
  FrequencySolve out;
  out.window_lo = 1e-4 * scale;
  out.window_hi = 1e4 * scale;
  out.grid_points = options.grid_points;

  auto residual = [&](double w) { return truncation_residual(scenario, n, l, m, w); };
  const double log_lo = std::log(out.window_lo);
  const double log_step = (std::log(out.window_hi) - log_lo) / (options.grid_points - 1);
  double prev_w = out.window_lo;
  double prev_f = residual(prev_w);
  for (int i = 1; i < options.grid_points; ++i) {
    const double w = i + 1 == options.grid_points ? out.window_hi : std::exp(log_lo + i * log_step);
    const double f = residual(w);
    if (std::isfinite(f) && std::isfinite(prev_f)) {
      if (prev_f == 0.0) {
        out.frequencies.push_back(prev_w);
      } else if (f != 0.0 && (f < 0.0) != (prev_f < 0.0)) {
        out.frequencies.push_back(bisect(residual, prev_w, w, prev_f, options.rel_tol));
      }
    }
    prev_w = w;
    prev_f = f;
  }
  if (prev_f == 0.0) out.frequencies.push_back(prev_w);
  return out;
}

// ---------------------------------------------------------------------------
// Wavefunctions

double RadialSolution::unnormalised(double r) const {
  if (r < 0.0) throw ValidationError("radial solution evaluated at negative r");
  if (walled && r > r_max) return 0.0;
  const double prefactor =
      std::pow(r, power()) * std::exp(-0.5 * r * r - linear_rate * r);
  double body = 0.0;
  if (kummer) {
    body = specfun::kummer_m({kummer->a, kummer->b, r * r});
  } else {
    for (auto it = polynomial.rbegin(); it != polynomial.rend(); ++it) body = body * r + *it;
  }
  return prefactor * body;
}

RadialSolution assemble_radial_solution(const ConfinementSpec& scenario, int n, int l, double m,
                                        double frequency, SampleGrid samples,
                                        double truncation_tol) {
  validate(scenario);
  require_constrained(scenario, "assemble_radial_solution");
  require_degree(n);
  require_positive(m, "mass m");
  require_positive(frequency, "frequency");

  const double mlambda = m * frequency;
  const auto params = heun::HeunParams::for_degree(n, l, m, mlambda, coulomb_coupling(scenario),
                                                   linear_coupling(scenario));
  const auto series = heun::heun_coefficients(params, std::max(2, n + 1));
  const auto& a = series.coefficients;
  double largest = 0.0;
  for (int k = 0; k <= n; ++k) largest = std::max(largest, std::abs(a[k]));
  if (std::abs(a[n + 1]) > truncation_tol * largest) {
    throw ValidationError("frequency " + std::to_string(frequency) +
                          " does not truncate the series at degree n = " + std::to_string(n) +
                          " for l = " + std::to_string(l) + " (|a_{n+1}| = " +
                          std::to_string(std::abs(a[n + 1])) + ")");
  }

  RadialSolution sol;
  sol.n = n;
  sol.l = l;
  sol.mlambda = mlambda;
  sol.linear_rate = 0.5 * params.theta;
  sol.polynomial.assign(a.begin(), a.begin() + n + 1);

  // Cut the quadrature where |R|^2 r has dropped below 1e-14 of its peak.
  double peak = 0.0;
  double r = 0.0;
  const double dr = 0.01;
  for (;; r += dr) {
    const double v = sol.unnormalised(r);
    const double f = v * v * r;
    peak = std::max(peak, f);
    if (r > 1.0 && f < 1e-14 * peak && r * (r + sol.linear_rate) > 2.0 * n + 2.0 * sol.power() + 2.0) break;
    if (r > 1e3) throw NumericalError("wavefunction tail does not decay");
  }
  sol.r_max = r;
  finish_solution(sol, samples);
  return sol;
}

RadialSolution assemble_hardwall_solution(const EnergyLevel& level, const SystemParams& params,
                                          double rho0, SampleGrid samples) {
  require_positive(rho0, "hard-wall radius rho0");
  const double mlambda = params.mlambda();
  if (!(mlambda > 0.0)) {
    throw ValidationError("hard-wall wavefunction in the Kummer form needs M*lambda > 0");
  }
  RadialSolution sol;
  sol.n = level.n;
  sol.l = level.l;
  sol.mlambda = mlambda;
  sol.kummer = KummerFactor{hardwall_kummer_a(level.l, params.m, mlambda, level.energy),
                            std::abs(level.l) + 1.0};
  sol.walled = true;
  sol.r_max = std::sqrt(mlambda) * rho0;
  finish_solution(sol, samples);
  return sol;
}

}  // namespace mqm
