#include <doctest.h>

#include "mqm/error.hpp"
#include "mqm/fields.hpp"

using namespace mqm;

TEST_CASE("system params validate their ranges") {
  CHECK_THROWS_AS(SystemParams::make(0.0, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(SystemParams::make(1.0, -1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(SystemParams::make(1.0, 1.0, -0.1), ValidationError);
  const auto p = SystemParams::make(2.0, 2.0, 0.5);
  CHECK(p.mlambda() == doctest::Approx(1.0));
  CHECK(p.frequency() == doctest::Approx(0.5));
  CHECK(SystemParams::from_product(1.0, 3.0).mlambda() == doctest::Approx(3.0));
}

TEST_CASE("field magnitudes") {
  CHECK(effective_vector_potential(SystemParams::make(1, 1, 1), 0.0) == 0.0);
  CHECK(effective_vector_potential(SystemParams::make(1, 2, 3), 0.5) == doctest::Approx(3.0));
  CHECK(effective_vector_potential(SystemParams::make(1, 1, 0), 7.0) == 0.0);
  CHECK(effective_magnetic_field(SystemParams::make(1, 1, 1)) == 1.0);
  CHECK(effective_magnetic_field(SystemParams::make(1, 2, 0.5)) == 1.0);
  CHECK(electric_field(SystemParams::make(1, 1, 2), 3.0) == doctest::Approx(9.0));
  CHECK_THROWS_AS(effective_vector_potential(SystemParams::make(1, 1, 1), -1.0), ValidationError);
}

TEST_CASE("curl of the vector potential") {
  // d(rho * lambda M rho)/drho / rho = 2 lambda M exactly; central differences
  // are exact on the quadratic flux up to rounding.
  for (const auto& p : {SystemParams::make(1, 1, 1), SystemParams::make(2, 3, 0.7),
                        SystemParams::make(0.5, 0.2, 4.0)}) {
    for (double rho : {0.5, 1.0, 2.0, 3.7}) {
      const double curl = curl_by_differences(p, rho, 1e-4);
      CHECK(curl == doctest::Approx(2.0 * p.mlambda()).epsilon(1e-8));
      CHECK(curl == doctest::Approx(2.0 * effective_magnetic_field(p)).epsilon(1e-8));
    }
  }
  CHECK_THROWS_AS(curl_by_differences(SystemParams::make(1, 1, 1), 0.0, 1e-4), ValidationError);
}

TEST_CASE("magnetic field does not depend on the radius") {
  const auto p = SystemParams::make(1.3, 0.9, 2.1);
  const double b0 = effective_magnetic_field(p);
  const double c0 = curl_by_differences(p, 1.0, 1e-3);
  for (int i = 0; i < 10; ++i) {
    const double rho = 0.1 + 0.7 * i;
    CHECK(effective_magnetic_field(p) == b0);
    CHECK(curl_by_differences(p, rho, 1e-3) == doctest::Approx(c0).epsilon(1e-8));
  }
}
