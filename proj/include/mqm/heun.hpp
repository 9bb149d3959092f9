#pragma once

// Frobenius series engine for the biconfluent Heun equation
//   H'' + [(2|l|+1)/r - theta - 2r] H'
//       + [beta + theta^2/4 - 2 - 2|l| - (theta(2|l|+1) + 2 nu)/(2r)] H = 0,
// which covers the Coulomb-type (theta = 0), linear (nu = 0) and mixed
// confinements with one recurrence.

#include <optional>
#include <vector>

namespace mqm::heun {

/// Dimensionless parameters. theta = 2 m eta / (M lambda)^{3/2},
/// nu = 2 m alpha / sqrt(M lambda), beta = (2 m E + 2 M lambda l) / (M lambda).
struct HeunParams {
  int abs_l = 0;
  double theta = 0.0;
  double nu = 0.0;
  double beta = 0.0;

  /// From physical quantities; requires mlambda > 0.
  static HeunParams from_physical(int l, double m, double mlambda, double alpha, double eta,
                                  double energy);

  /// As from_physical, with beta pinned by the degree-n energy condition
  /// 4 beta + theta^2 - 8 - 8|l| = 8n.
  static HeunParams for_degree(int n, int l, double m, double mlambda, double alpha,
                               double eta);
};

/// beta satisfying the degree-n energy condition for the given theta.
double beta_for_degree(int n, int abs_l, double theta);

struct HeunSeries {
  HeunParams params;
  std::vector<double> coefficients;  ///< a_0 .. a_K, a_0 = 1
  /// Degree n when a_{n+1} and every later stored coefficient is below
  /// 1e-12 * max(1, max_j |a_j|). Two consecutive vanishing coefficients
  /// force the rest of the series to vanish, so at least two trailing
  /// coefficients must be stored for a degree to be reported, and the
  /// degree-n energy condition must hold.
  std::optional<int> truncated_at;
};

inline constexpr double kTruncationTol = 1e-12;

/// a_0 .. a_kmax from the three-term recurrence; kmax >= 2.
HeunSeries heun_coefficients(const HeunParams& params, int kmax);

/// G(r) (equivalently H(r)). Truncated series are evaluated as exact
/// polynomials; otherwise the partial sums must stabilise within the stored
/// coefficients or NonConvergence is thrown.
double heun_eval(const HeunSeries& series, double r);

/// Residuals of the two degree-n polynomial conditions.
struct TruncationResiduals {
  double energy_condition = 0.0;  ///< 4 beta + theta^2 - 8 - 8|l| - 8n
  double next_coefficient = 0.0;  ///< a_{n+1}
};

/// Requires n >= 1. (n = 0 would need a_1 = theta/2 + nu/(1+2|l|) = 0,
/// impossible for positive couplings and not part of the model.)
TruncationResiduals truncation_conditions(int n, const HeunParams& params);

enum class TruncationStatus {
  kPolynomial,       ///< both conditions hold to tolerance
  kNotTruncated,     ///< at least one condition fails
  kParityForbidden,  ///< theta = nu = 0 and n odd: odd coefficients vanish
                     ///< identically, so a_{n+1} can never be zero
};

TruncationStatus classify_truncation(int n, const HeunParams& params,
                                     double tol = kTruncationTol);

}  // namespace mqm::heun
