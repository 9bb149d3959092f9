#pragma once

// Field configuration behind the Landau-type setup: a quadrupole moment with
// M_rho_z = M_z_rho = M in a radial electric field lambda*rho^2/2. Natural
// units (hbar = c = 1) everywhere; z-momentum is fixed to zero.

namespace mqm {

struct SystemParams {
  double m = 1.0;       ///< particle mass
  double M = 1.0;       ///< quadrupole moment magnitude
  double lambda = 0.0;  ///< charge-density parameter

  /// Validating constructor: m > 0, M > 0, lambda >= 0.
  static SystemParams make(double m, double M, double lambda);

  /// Only the product M*lambda enters any observable; this builds params
  /// with M = 1 and lambda = mlambda.
  static SystemParams from_product(double m, double mlambda);

  double mlambda() const noexcept { return M * lambda; }
  /// Effective angular frequency M*lambda/m (half the cyclotron analogue).
  double frequency() const noexcept { return M * lambda / m; }
};

struct FieldConfig {
  SystemParams params;
  double rho = 0.0;
};

/// |E| = lambda*rho^2/2, radial.
double electric_field(const SystemParams& params, double rho);

/// |A_eff| = lambda*M*rho, azimuthal.
double effective_vector_potential(const SystemParams& params, double rho);

/// |B_eff| = lambda*M along z, independent of rho. This is the conventional
/// magnitude; the curl of A_eff is 2*lambda*M, the factor that makes the
/// cyclotron-type frequency 2*M*lambda/m rather than M*lambda/m.
double effective_magnetic_field(const SystemParams& params);

/// (1/rho) d(rho*A_eff)/drho by central differences with step h.
double curl_by_differences(const SystemParams& params, double rho, double h);

}  // namespace mqm
