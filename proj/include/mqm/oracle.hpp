#pragma once

// Brute-force radial eigensolver used to certify the analytic spectra. It
// discretises
//   -R'' - R'/rho + V(rho) R = kappa R,
//   V = l^2/rho^2 + (M lambda)^2 rho^2 + 2 m alpha / rho + 2 m eta rho,
// in flux form on a cell-centred grid (nodes at (i + 1/2) h, zero flux through
// the origin, Dirichlet at rho_max) and symmetrises with u_i = sqrt(rho_i) R_i.
// Nothing here touches the Heun or Kummer machinery.

#include <vector>

#include "mqm/spectra.hpp"

namespace mqm::oracle {

struct RadialGrid {
  double rho_max = 8.0;  ///< Dirichlet point (the wall, for hard-wall problems)
  int points = 4000;     ///< interior unknowns, >= 100

  double spacing() const noexcept { return rho_max / (points + 0.5); }
  double rho_min() const noexcept { return 0.5 * spacing(); }
  double node(int i) const noexcept { return (i + 0.5) * spacing(); }
};

enum class Boundary { kDecay, kHardWall };

/// How E relates to the radial eigenvalue kappa.
enum class AngularSign {
  kPlus,   ///< kappa = 2 m E + 2 M lambda l (Coulomb / linear / mixed)
  kMinus,  ///< kappa = 2 m E - 2 M lambda l (hard wall)
};

struct RadialProblem {
  int l = 0;
  double m = 1.0;
  double mlambda = 1.0;
  double alpha = 0.0;
  double eta = 0.0;
  Boundary boundary = Boundary::kDecay;
  double rho0 = 0.0;  ///< wall radius when boundary == kHardWall
  AngularSign sign = AngularSign::kPlus;

  /// Problem matching a scenario at the given field strength.
  static RadialProblem for_scenario(const ConfinementSpec& scenario, int l, double m,
                                    double mlambda);

  double potential(double rho) const;
  double kappa(double energy) const;
  double energy(double kappa) const;
};

struct TridiagonalMatrix {
  std::vector<double> diag;
  std::vector<double> off;  ///< off[i] couples rows i and i+1
};

/// Matrix element (row, col) of the symmetrised stencil; zero unless
/// |row - col| <= 1.
double stencil_entry(const RadialProblem& problem, const RadialGrid& grid, int row, int col);

TridiagonalMatrix discretize(const RadialProblem& problem, const RadialGrid& grid);

/// Number of eigenvalues strictly below x (Sturm sequence).
int sturm_count(const TridiagonalMatrix& matrix, double x);

/// Lowest `count` eigenvalues, ascending, by Sturm bisection.
std::vector<double> tridiagonal_eigenvalues(const TridiagonalMatrix& matrix, int count);

struct FdSpectrum {
  std::vector<EnergyLevel> levels;
  std::vector<double> kappas;
  /// Largest relative shift in kappa between N and N/2 points.
  double coarse_shift = 0.0;
  bool grid_too_coarse = false;  ///< coarse_shift > 10%
};

/// Lowest `count` (<= 20) levels. E is recovered from kappa with the
/// problem's sign convention; level.n is the index in the spectrum.
FdSpectrum fd_eigenvalues(const RadialProblem& problem, const RadialGrid& grid, int count);

/// As fd_eigenvalues, for a hard-wall problem: requires rho_max == rho0 and
/// no Coulomb or linear coupling.
FdSpectrum fd_hardwall_eigenvalues(const RadialProblem& problem, const RadialGrid& grid,
                                   int count);

/// Outer cutoff for decaying states near target_energy: the outer turning
/// point, extended until the WKB decay exponent reaches 18.
double suggest_rho_max(const RadialProblem& problem, double target_energy);

struct ConvergenceReport {
  std::vector<int> points;
  std::vector<double> energies;
  std::vector<double> errors;  ///< |E_N - reference|
  std::vector<double> orders;  ///< pairwise observed orders
  double observed_order = 0.0;    ///< from the two finest grids
  double richardson_order = 0.0;  ///< reference-free, three finest grids
  bool monotone = true;           ///< errors strictly decreasing
};

/// Tracks the eigenvalue closest to `reference` over >= 3 grids with
/// doubling point counts.
ConvergenceReport convergence_study(const RadialProblem& problem,
                                    const std::vector<RadialGrid>& grids, double reference,
                                    int count = 10);

}  // namespace mqm::oracle
