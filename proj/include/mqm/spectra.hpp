#pragma once

// Bound-state spectra of the Landau-type quadrupole system under hard-wall,
// Coulomb-type, linear and Coulomb-plus-linear confinement.
//
// Two sign conventions for the angular term coexist, each matching how its
// scenario is usually written:
//   hard wall:            kappa = 2 m E - 2 M lambda l   (E carries +M lambda l / m)
//   Coulomb/linear/mixed: kappa = 2 m E + 2 M lambda l   (E = w (n + |l| - l + 1) - ...)
// where kappa is the eigenvalue of the planar radial operator.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mqm/fields.hpp"
#include "mqm/heun.hpp"

namespace mqm {

struct NoConfinement {};
struct HardWall {
  double rho0 = 1.0;
};
struct Coulomb {
  double alpha = 1.0;
};
struct Linear {
  double eta = 1.0;
};
struct CoulombLinear {
  double alpha = 1.0;
  double eta = 1.0;
};

using ConfinementSpec = std::variant<NoConfinement, HardWall, Coulomb, Linear, CoulombLinear>;

/// Throws ValidationError unless every present parameter is strictly positive.
void validate(const ConfinementSpec& spec);

std::string_view scenario_name(const ConfinementSpec& spec);
double coulomb_coupling(const ConfinementSpec& spec);  ///< alpha, or 0
double linear_coupling(const ConfinementSpec& spec);   ///< eta, or 0
bool is_constrained(const ConfinementSpec& spec);      ///< Coulomb, Linear or mixed

enum class Provenance { kClosedForm, kTruncationConstrained, kNumericalOracle, kQuantizationRoot };
std::string_view to_string(Provenance p);

struct EnergyLevel {
  int n = 0;
  int l = 0;
  double energy = 0.0;
  double frequency = 0.0;  ///< the w = M lambda / m the level presumes
  Provenance provenance = Provenance::kClosedForm;
};

// ---------------------------------------------------------------------------
// Hard wall

/// Cosine-zero estimate [n pi + |l| pi/2 + 3 pi/4]^2 / (2 m rho0^2) + M lambda l / m.
EnergyLevel hardwall_energy_asymptotic(int n, int l, const SystemParams& params, double rho0);

struct EnergyBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// (n+1)-th root in E of M(a, |l|+1, M lambda rho0^2) with
/// a = (|l| + 1 + l)/2 - m E / (2 M lambda). Requires M lambda > 0.
/// Throws BracketTooSmall when the bracket holds fewer than n+1 roots.
EnergyLevel hardwall_energy_exact(int n, int l, const SystemParams& params, double rho0,
                                  EnergyBracket bracket);

/// M lambda = 0 limit: (n+1)-th zero of J_|l|(sqrt(2 m E) rho0).
EnergyLevel hardwall_energy_bessel_limit(int n, int l, double m, double rho0);

/// Picks the bracket automatically and dispatches to the Bessel limit at
/// M lambda = 0.
EnergyLevel hardwall_energy(int n, int l, const SystemParams& params, double rho0);

/// The Kummer first parameter a for a trial energy.
double hardwall_kummer_a(int l, double m, double mlambda, double energy);

// ---------------------------------------------------------------------------
// Ground-state frequencies (n = 1) and truncation-constrained energies

double coulomb_frequency_ground(int l, double m, double alpha);
double linear_frequency_ground(int l, double m, double eta);

enum class CubicForm {
  kDerived,  ///< middle coefficient 4(1+|l|) alpha eta / (1+2|l|), from a_2 = 0
  kPrinted,  ///< middle coefficient 4(1+|l|) / (1+2|l|), the commonly quoted form
};

/// Coefficients {c3, c2, c1, c0} of the ground-state frequency cubic.
std::vector<double> mixed_frequency_cubic(int l, double m, double alpha, double eta,
                                          CubicForm form = CubicForm::kDerived);

/// Unique positive root of the ground-state frequency cubic.
double mixed_frequency_ground(int l, double m, double alpha, double eta,
                              CubicForm form = CubicForm::kDerived);

/// Real roots of c3 x^3 + c2 x^2 + c1 x + c0, ascending (c3 != 0).
std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0);

/// E = w [n + |l| - l + 1] - eta^2 / (2 m w^2), last term only with a linear coupling.
EnergyLevel constrained_energy(const ConfinementSpec& scenario, int n, int l, double m,
                               double frequency);

/// Closed-form n = 1 frequency for a constrained scenario.
double ground_frequency(const ConfinementSpec& scenario, int l, double m,
                        CubicForm form = CubicForm::kDerived);

struct FrequencySolve {
  std::vector<double> frequencies;  ///< ascending, all > 0
  double window_lo = 0.0;
  double window_hi = 0.0;
  int grid_points = 0;
};

struct FrequencyScanOptions {
  int grid_points = 2000;
  double rel_tol = 1e-10;
};

/// All positive w for which a_{n+1} vanishes once beta is pinned by the
/// energy condition; sign scan on a log grid plus bisection. An empty list
/// means no root inside [window_lo, window_hi].
FrequencySolve frequency_solve_general(const ConfinementSpec& scenario, int n, int l, double m,
                                       FrequencyScanOptions options = {});

/// a_{n+1} as a function of the trial frequency (energy condition imposed).
double truncation_residual(const ConfinementSpec& scenario, int n, int l, double m,
                           double frequency);

// ---------------------------------------------------------------------------
// Radial wavefunctions

struct KummerFactor {
  double a = 0.0;
  double b = 1.0;
};

struct SampleGrid {
  double r_lo = 0.0;
  double r_hi = 6.0;
  int points = 601;
};

/// R(r) = norm * r^{|l|} exp(-r^2/2 - linear_rate r) P(r), with the
/// dimensionless radius r = sqrt(M lambda) rho. P is the truncated Heun
/// polynomial, or M(a, b, r^2) for the hard wall, where R vanishes beyond
/// r_max. norm makes the integral of R^2 r dr over [0, r_max] equal one.
struct RadialSolution {
  int n = 0;
  int l = 0;
  double mlambda = 0.0;
  double linear_rate = 0.0;          ///< theta / 2
  std::vector<double> polynomial;    ///< a_0..a_n (Heun form)
  std::optional<KummerFactor> kummer;  ///< hard-wall form
  bool walled = false;
  double r_max = 0.0;  ///< wall position, or quadrature cutoff
  double norm = 1.0;
  std::vector<double> grid;    ///< sample radii
  std::vector<double> values;  ///< normalised R at the sample radii

  int power() const noexcept { return l < 0 ? -l : l; }
  double unnormalised(double r) const;
  double operator()(double r) const { return norm * unnormalised(r); }
};

/// Builds the polynomial solution for a truncation-constrained level. Throws
/// ValidationError unless |a_{n+1}| <= truncation_tol * max_j |a_j|.
RadialSolution assemble_radial_solution(const ConfinementSpec& scenario, int n, int l, double m,
                                        double frequency, SampleGrid samples = {},
                                        double truncation_tol = 1e-8);

/// Kummer-form solution inside a hard wall for a level from hardwall_energy*.
/// Requires M lambda > 0.
RadialSolution assemble_hardwall_solution(const EnergyLevel& level, const SystemParams& params,
                                          double rho0, SampleGrid samples = {});

}  // namespace mqm
