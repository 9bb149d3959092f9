#include "mqm/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "mqm/error.hpp"

namespace mqm::specfun {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(double b) { return b <= 0.0 && b == std::floor(b); }

double asymptotic_base(const KummerArgs& args) {
  const double base = 0.5 * args.b * args.x - args.a * args.x;
  if (!(base > 0.0)) {
    throw ValidationError("kummer_m_asymptotic requires b*x/2 - a*x > 0 (got " +
                          std::to_string(base) + ")");
  }
  return base;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ValidationError("gamma_fn requires a positive finite argument (got " +
                          std::to_string(x) + ")");
  }
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double sum = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    sum += kLanczosCoeffs[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  // Split the power to keep t^(z+1/2) finite near the top of the range.
  const double half_power = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) * sum;
}

double kummer_m(const KummerArgs& args, SeriesControl control) {
  if (is_pole(args.b)) {
    throw ValidationError("kummer_m: b must not be zero or a negative integer (got " +
                          std::to_string(args.b) + ")");
  }
  double term = 1.0;
  double sum = 1.0;
  int small_in_a_row = 0;
  for (int k = 0; k < control.max_terms; ++k) {
    term *= (args.a + k) / (args.b + k) * args.x / (k + 1);
    sum += term;
    if (std::abs(term) <= control.rel_tol * std::abs(sum)) {
      if (++small_in_a_row == 2) return sum;
    } else {
      small_in_a_row = 0;
    }
  }
  throw NonConvergence("kummer_m: series did not converge within " +
                           std::to_string(control.max_terms) + " terms",
                       sum, control.max_terms);
}

double kummer_m_asymptotic_envelope(const KummerArgs& args) {
  const double base = asymptotic_base(args);
  return gamma_fn(args.b) / std::sqrt(std::numbers::pi) * std::exp(0.5 * args.x) *
         std::pow(base, 0.25 - 0.5 * args.b);
}

double kummer_m_asymptotic(const KummerArgs& args) {
  const double base = asymptotic_base(args);
  const double phase = std::sqrt(4.0 * base) - 0.5 * args.b * std::numbers::pi +
                       0.25 * std::numbers::pi;
  return kummer_m_asymptotic_envelope(args) * std::cos(phase);
}

double bessel_j(int order, double x) {
  if (order < 0) throw ValidationError("bessel_j: order must be nonnegative");
  if (!(x >= 0.0)) throw ValidationError("bessel_j: argument must be nonnegative");
  return std::cyl_bessel_j(static_cast<double>(order), x);
}

}  // namespace mqm::specfun
