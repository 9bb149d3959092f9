#include "mqm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "mqm/error.hpp"

namespace mqm::oracle {
namespace {

void validate(const RadialProblem& problem, const RadialGrid& grid) {
  if (grid.points < 100) {
    throw ValidationError("radial grid needs at least 100 points (got " +
                          std::to_string(grid.points) + ")");
  }
  if (!(grid.rho_max > 0.0)) throw ValidationError("radial grid needs rho_max > 0");
  if (!(problem.m > 0.0)) throw ValidationError("radial problem needs m > 0");
  if (!(problem.mlambda >= 0.0)) throw ValidationError("radial problem needs M*lambda >= 0");
  if (problem.alpha < 0.0 || problem.eta < 0.0) {
    throw ValidationError("radial problem couplings alpha, eta must be >= 0");
  }
  if (problem.boundary == Boundary::kHardWall && grid.rho_max != problem.rho0) {
    throw ValidationError("hard-wall grid must end exactly at rho0");
  }
}

}  // namespace

RadialProblem RadialProblem::for_scenario(const ConfinementSpec& scenario, int l, double m,
                                          double mlambda) {
  mqm::validate(scenario);
  RadialProblem p;
  p.l = l;
  p.m = m;
  p.mlambda = mlambda;
  p.alpha = coulomb_coupling(scenario);
  p.eta = linear_coupling(scenario);
  if (const auto* wall = std::get_if<HardWall>(&scenario)) {
    p.boundary = Boundary::kHardWall;
    p.rho0 = wall->rho0;
    p.sign = AngularSign::kMinus;
  }
  return p;
}

double RadialProblem::potential(double rho) const {
  return l * l / (rho * rho) + mlambda * mlambda * rho * rho + 2.0 * m * alpha / rho +
         2.0 * m * eta * rho;
}

double RadialProblem::kappa(double energy) const {
  const double shift = 2.0 * mlambda * l;
  return 2.0 * m * energy + (sign == AngularSign::kPlus ? shift : -shift);
}

double RadialProblem::energy(double kappa) const {
  const double shift = 2.0 * mlambda * l;
  return (kappa - (sign == AngularSign::kPlus ? shift : -shift)) / (2.0 * m);
}

double stencil_entry(const RadialProblem& problem, const RadialGrid& grid, int row, int col) {
  const double h = grid.spacing();
  const double h2 = h * h;
  if (row == col) {
    const double rho = grid.node(row);
    const double inner = row * h;  // face at rho_{i-1/2}; zero at the origin
    const double outer = (row + 1) * h;
    return (inner + outer) / (h2 * rho) + problem.potential(rho);
  }
  if (std::abs(row - col) != 1) return 0.0;
  const double face = std::max(row, col) * h;
  return -face / (h2 * std::sqrt(grid.node(row) * grid.node(col)));
}

TridiagonalMatrix discretize(const RadialProblem& problem, const RadialGrid& grid) {
  validate(problem, grid);
  const int n = grid.points;
  TridiagonalMatrix t;
  t.diag.resize(n);
  t.off.resize(n - 1);
  for (int i = 0; i < n; ++i) t.diag[i] = stencil_entry(problem, grid, i, i);
  for (int i = 0; i + 1 < n; ++i) t.off[i] = stencil_entry(problem, grid, i, i + 1);
  return t;
}

int sturm_count(const TridiagonalMatrix& matrix, double x) {
  const auto& d = matrix.diag;
  const auto& e = matrix.off;
  const double tiny = std::numeric_limits<double>::min();
  // A vanishing pivot is nudged negative before it is counted, so the count
  // and the continued recurrence agree.
  auto pivot = [&](double q) { return std::abs(q) < tiny ? -tiny : q; };
  int count = 0;
  double q = pivot(d[0] - x);
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    q = pivot(d[i] - x - e[i - 1] * e[i - 1] / q);
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> tridiagonal_eigenvalues(const TridiagonalMatrix& matrix, int count) {
  const int n = static_cast<int>(matrix.diag.size());
  if (n == 0 || count < 1 || count > n) {
    throw ValidationError("tridiagonal_eigenvalues: count must lie in [1, dimension]");
  }
  // Gerschgorin bounds.
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (int i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(matrix.off[i - 1]) : 0.0) +
                          (i + 1 < n ? std::abs(matrix.off[i]) : 0.0);
    lo = std::min(lo, matrix.diag[i] - radius);
    hi = std::max(hi, matrix.diag[i] + radius);
  }
  const double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> values(count);
  double floor = lo;
  for (int k = 0; k < count; ++k) {
    double a = floor;
    double b = hi;
    while (b - a > 2.0 * eps * std::max(std::abs(a), std::abs(b)) + std::numeric_limits<double>::min()) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (sturm_count(matrix, mid) > k) {
        b = mid;
      } else {
        a = mid;
      }
    }
    values[k] = 0.5 * (a + b);
    floor = a;  // eigenvalue k+1 is not below eigenvalue k
  }
  return values;
}

FdSpectrum fd_eigenvalues(const RadialProblem& problem, const RadialGrid& grid, int count) {
  if (count < 1 || count > 20) throw ValidationError("fd_eigenvalues: count must be in [1, 20]");
  const auto kappas = tridiagonal_eigenvalues(discretize(problem, grid), count);

  FdSpectrum out;
  out.kappas = kappas;
  const double frequency = problem.mlambda / problem.m;
  for (int i = 0; i < count; ++i) {
    out.levels.push_back(EnergyLevel{i, problem.l, problem.energy(kappas[i]), frequency,
                                     Provenance::kNumericalOracle});
  }
  RadialGrid half = grid;
  half.points = grid.points / 2;
  if (half.points >= 100 && half.points >= count) {
    const auto coarse = tridiagonal_eigenvalues(discretize(problem, half), count);
    for (int i = 0; i < count; ++i) {
      out.coarse_shift =
          std::max(out.coarse_shift, std::abs(coarse[i] - kappas[i]) / std::abs(kappas[i]));
    }
    out.grid_too_coarse = out.coarse_shift > 0.1;
  }
  return out;
}

FdSpectrum fd_hardwall_eigenvalues(const RadialProblem& problem, const RadialGrid& grid,
                                   int count) {
  if (problem.boundary != Boundary::kHardWall) {
    throw ValidationError("fd_hardwall_eigenvalues needs a hard-wall problem");
  }
  if (problem.alpha != 0.0 || problem.eta != 0.0) {
    throw ValidationError("hard-wall oracle takes no Coulomb or linear coupling");
  }
  return fd_eigenvalues(problem, grid, count);
}

double suggest_rho_max(const RadialProblem& problem, double target_energy) {
  const double kappa = problem.kappa(target_energy);
  if (problem.boundary == Boundary::kHardWall) return problem.rho0;
  auto excess = [&](double rho) { return problem.potential(rho) - kappa; };

  // V is convex on rho > 0 for nonnegative couplings; march out past the
  // minimum until V exceeds kappa.
  double rho = 1e-3;
  while (!(excess(rho) > 0.0 && excess(rho * 1.01) > excess(rho))) {
    rho *= 1.05;
    if (rho > 1e8) {
      throw ValidationError("effective potential never exceeds the target; no bound state to "
                            "enclose (M*lambda = 0 without confinement?)");
    }
  }
  double a = rho / 1.05;
  double b = rho;
  while (excess(a) > 0.0 && a > 1e-12) a /= 1.05;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (a + b);
    (excess(mid) > 0.0 ? b : a) = mid;
  }
  const double turning = b;

  double decay = 0.0;
  double r = turning;
  const double step = turning / 400.0;
  while (decay < 18.0) {
    const double next = r + step;
    decay += step * std::sqrt(std::max(0.0, excess(0.5 * (r + next))));
    r = next;
  }
  return r;
}

ConvergenceReport convergence_study(const RadialProblem& problem,
                                    const std::vector<RadialGrid>& grids, double reference,
                                    int count) {
  if (grids.size() < 3) throw ValidationError("convergence_study needs at least 3 grids");
  for (std::size_t i = 1; i < grids.size(); ++i) {
    if (grids[i].points != 2 * grids[i - 1].points) {
      throw ValidationError("convergence_study grids must double the point count");
    }
  }
  ConvergenceReport report;
  for (const auto& grid : grids) {
    const auto kappas = tridiagonal_eigenvalues(discretize(problem, grid), count);
    double best = problem.energy(kappas[0]);
    for (double k : kappas) {
      const double e = problem.energy(k);
      if (std::abs(e - reference) < std::abs(best - reference)) best = e;
    }
    report.points.push_back(grid.points);
    report.energies.push_back(best);
    report.errors.push_back(std::abs(best - reference));
  }
  for (std::size_t i = 1; i < report.errors.size(); ++i) {
    report.orders.push_back(std::log2(report.errors[i - 1] / report.errors[i]));
    if (!(report.errors[i] < report.errors[i - 1])) report.monotone = false;
  }
  report.observed_order = report.orders.back();
  const auto n = report.energies.size();
  report.richardson_order =
      std::log2(std::abs(report.energies[n - 3] - report.energies[n - 2]) /
                std::abs(report.energies[n - 2] - report.energies[n - 1]));
  return report;
}

}  // namespace mqm::oracle
