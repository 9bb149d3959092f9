#pragma once

// Real-argument special functions for the hard-wall problem.

namespace mqm::specfun {

/// Parameters of the Kummer function M(a, b, x).
struct KummerArgs {
  double a = 0.0;
  double b = 1.0;  ///< must not be zero or a negative integer
  double x = 0.0;
};

/// Gamma function for x > 0 (Lanczos, g = 7, nine terms).
double gamma_fn(double x);

struct SeriesControl {
  double rel_tol = 1e-16;
  int max_terms = 10000;
};

/// Kummer's function of the first kind by its power series
///   M(a, b, x) = sum_k (a)_k / (b)_k * x^k / k!.
/// Stops after two consecutive terms fall below rel_tol times the running
/// sum; throws NonConvergence (carrying the partial sum) past max_terms.
double kummer_m(const KummerArgs& args, SeriesControl control = {});

/// Large-|a| oscillatory form
///   Gamma(b)/sqrt(pi) * e^{x/2} * (b x/2 - a x)^{1/4 - b/2}
///     * cos(sqrt(2 b x - 4 a x) - b pi/2 + pi/4).
/// Requires b x/2 - a x > 0.
double kummer_m_asymptotic(const KummerArgs& args);

/// The non-oscillating prefactor of kummer_m_asymptotic.
double kummer_m_asymptotic_envelope(const KummerArgs& args);

/// Cylindrical Bessel function J_order(x), x >= 0.
double bessel_j(int order, double x);

}  // namespace mqm::specfun
