#include "mqm/fields.hpp"

#include <cmath>
#include <string>

#include "mqm/error.hpp"

namespace mqm {

SystemParams SystemParams::make(double m, double M, double lambda) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw ValidationError("mass m must be positive and finite (got " + std::to_string(m) + ")");
  }
  if (!(M > 0.0) || !std::isfinite(M)) {
    throw ValidationError("quadrupole moment M must be positive and finite (got " +
                          std::to_string(M) + ")");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("charge density lambda must be nonnegative and finite (got " +
                          std::to_string(lambda) + ")");
  }
  return SystemParams{m, M, lambda};
}

SystemParams SystemParams::from_product(double m, double mlambda) {
  return make(m, 1.0, mlambda);
}

double electric_field(const SystemParams& params, double rho) {
  if (!(rho >= 0.0)) throw ValidationError("radius rho must be nonnegative");
  return 0.5 * params.lambda * rho * rho;
}

double effective_vector_potential(const SystemParams& params, double rho) {
  if (!(rho >= 0.0)) throw ValidationError("radius rho must be nonnegative");
  return params.lambda * params.M * rho;
}

double effective_magnetic_field(const SystemParams& params) {
  return params.lambda * params.M;
}

double curl_by_differences(const SystemParams& params, double rho, double h) {
  if (!(rho > h) || !(h > 0.0)) throw ValidationError("curl stencil needs rho > h > 0");
  auto flux = [&](double r) { return r * effective_vector_potential(params, r); };
  return (flux(rho + h) - flux(rho - h)) / (2.0 * h * rho);
}

}  // namespace mqm
