#include "mqm/heun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "mqm/error.hpp"

namespace mqm::heun {
namespace {

void require_positive_field(double mlambda) {
  if (!(mlambda > 0.0)) {
    throw ValidationError("Heun parameters need M*lambda > 0 (got " + std::to_string(mlambda) +
                          ")");
  }
}

}  // namespace

HeunParams HeunParams::from_physical(int l, double m, double mlambda, double alpha, double eta,
                                     double energy) {
  require_positive_field(mlambda);
  const double root = std::sqrt(mlambda);
  return HeunParams{std::abs(l), 2.0 * m * eta / (mlambda * root), 2.0 * m * alpha / root,
                    (2.0 * m * energy + 2.0 * mlambda * l) / mlambda};
}

HeunParams HeunParams::for_degree(int n, int l, double m, double mlambda, double alpha,
                                  double eta) {
  require_positive_field(mlambda);
  const double root = std::sqrt(mlambda);
  HeunParams p{std::abs(l), 2.0 * m * eta / (mlambda * root), 2.0 * m * alpha / root, 0.0};
  p.beta = beta_for_degree(n, p.abs_l, p.theta);
  return p;
}

double beta_for_degree(int n, int abs_l, double theta) {
  return 2.0 + 2.0 * abs_l + 2.0 * n - 0.25 * theta * theta;
}

HeunSeries heun_coefficients(const HeunParams& params, int kmax) {
  if (kmax < 2) throw ValidationError("heun_coefficients: kmax must be at least 2");
  if (params.abs_l < 0) throw ValidationError("heun_coefficients: |l| must be nonnegative");

  const double two_l = 2.0 * params.abs_l;
  const double theta = params.theta;
  const double nu = params.nu;
  const double shift = 4.0 * params.beta + theta * theta - 8.0 - 4.0 * two_l;

  HeunSeries series{params, std::vector<double>(static_cast<std::size_t>(kmax) + 1, 0.0), {}};
  auto& a = series.coefficients;
  a[0] = 1.0;
  a[1] = 0.5 * theta + nu / (1.0 + two_l);
  for (int k = 0; k + 2 <= kmax; ++k) {
    const double denom = (k + 2.0) * (k + 2.0 + two_l);
    const double forward = theta * (2.0 * k + 3.0 + two_l) + 2.0 * nu;
    a[k + 2] = forward * a[k + 1] / (2.0 * denom) - (shift - 8.0 * k) * a[k] / (4.0 * denom);
  }

  // Smallest degree n with every later stored coefficient negligible. A
  // convergent series also has a negligible tail, so the degree-n energy
  // condition must hold too (it is imposed algebraically, hence the loose
  // rounding allowance).
  int n = kmax;
  double scale = 1.0;
  for (double c : a) scale = std::max(scale, std::abs(c));
  while (n > 0 && std::abs(a[n]) <= kTruncationTol * scale) --n;
  const double shift_scale = std::max({1.0, std::abs(4.0 * params.beta), theta * theta, 8.0 * n});
  const bool energy_ok = std::abs(shift - 8.0 * n) <= 1e-10 * shift_scale;
  if (kmax - n >= 2 && energy_ok) series.truncated_at = n;
  return series;
}

double heun_eval(const HeunSeries& series, double r) {
  if (!(r >= 0.0)) throw ValidationError("heun_eval: r must be nonnegative");
  const auto& a = series.coefficients;
  if (series.truncated_at) {
    double acc = 0.0;
    for (int k = *series.truncated_at; k >= 0; --k) acc = acc * r + a[k];
    return acc;
  }
  double sum = 0.0;
  double power = 1.0;
  double peak = 0.0;
  double last = 0.0;
  double before_last = 0.0;
  for (double c : a) {
    const double term = c * power;
    sum += term;
    peak = std::max(peak, std::abs(term));
    before_last = last;
    last = std::abs(term);
    power *= r;
  }
  const double scale = std::max(std::abs(sum), 1e-300);
  if (std::max(last, before_last) > 1e-14 * std::max(scale, 1e-3 * peak)) {
    throw NonConvergence("heun_eval: partial sums have not stabilised at r = " +
                             std::to_string(r) + "; request more coefficients",
                         sum, static_cast<int>(a.size()));
  }
  return sum;
}

TruncationResiduals truncation_conditions(int n, const HeunParams& params) {
  if (n < 1) {
    throw ValidationError("truncation degree n must be >= 1 (n = 0 is not part of the model)");
  }
  const auto series = heun_coefficients(params, std::max(2, n + 1));
  const double theta = params.theta;
  return TruncationResiduals{
      4.0 * params.beta + theta * theta - 8.0 - 8.0 * params.abs_l - 8.0 * n,
      series.coefficients[static_cast<std::size_t>(n) + 1]};
}

TruncationStatus classify_truncation(int n, const HeunParams& params, double tol) {
  if (params.theta == 0.0 && params.nu == 0.0 && n % 2 == 1) {
    return TruncationStatus::kParityForbidden;
  }
  const auto res = truncation_conditions(n, params);
  const auto series = heun_coefficients(params, std::max(2, n + 1));
  double scale = 1.0;
  for (int k = 0; k <= n; ++k) scale = std::max(scale, std::abs(series.coefficients[k]));
  const bool energy_ok = std::abs(res.energy_condition) <= tol * std::max(1.0, 8.0 * n);
  const bool coeff_ok = std::abs(res.next_coefficient) <= tol * scale;
  return energy_ok && coeff_ok ? TruncationStatus::kPolynomial : TruncationStatus::kNotTruncated;
}

}  // namespace mqm::heun
