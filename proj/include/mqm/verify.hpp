#pragma once

// Self-check suite behind `mqmspec verify`: limit consistency, scan-vs-closed
// form frequencies, truncation propagation, oracle membership, Landau limit,
// hard-wall quantisation and degeneracy breaking.

#include "mqm/report.hpp"
#include "mqm/spectra.hpp"

namespace mqm::verify {

struct VerifyOptions {
  int grid_points = 4000;
  /// Use the cubic without the alpha*eta factor for the mixed scenario.
  bool inject_printed_cubic = false;
};

report::Report run_verification(const VerifyOptions& options);

/// Residual of R'' + R'/r - l^2/r^2 R - r^2 R - theta r R - nu/r R + beta R
/// for the unnormalised polynomial solution at radius r > 0, with exact
/// derivatives of the polynomial and prefactor.
double radial_ode_residual(const ConfinementSpec& scenario, int n, int l, double m,
                           double frequency, double r);

}  // namespace mqm::verify
