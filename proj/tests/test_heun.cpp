#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mqm/error.hpp"
#include "mqm/heun.hpp"

using namespace mqm;
using namespace mqm::heun;

namespace {

// Pure-Coulomb recurrence, written out independently (a_1 from the k = -1 row).
std::vector<double> coulomb_series(int abs_l, double nu, double beta, int kmax) {
  std::vector<double> a(kmax + 1, 0.0);
  a[0] = 1.0;
  a[1] = nu / (1.0 + 2.0 * abs_l);
  for (int k = 0; k + 2 <= kmax; ++k) {
    const double den = (k + 2.0) * (k + 2.0 + 2.0 * abs_l);
    a[k + 2] = nu / den * a[k + 1] - (beta - 2.0 - 2.0 * abs_l - 2.0 * k) / den * a[k];
  }
  return a;
}

// Pure-linear recurrence.
std::vector<double> linear_series(int abs_l, double theta, double beta, int kmax) {
  std::vector<double> a(kmax + 1, 0.0);
  a[0] = 1.0;
  a[1] = theta / 2.0;
  for (int k = 0; k + 2 <= kmax; ++k) {
    const double den = (k + 2.0) * (k + 2.0 + 2.0 * abs_l);
    a[k + 2] = theta * (2.0 * k + 3.0 + 2.0 * abs_l) / (2.0 * den) * a[k + 1] -
               (4.0 * beta + theta * theta - 8.0 - 8.0 * abs_l - 8.0 * k) / (4.0 * den) * a[k];
  }
  return a;
}

// Residual of H'' + [(2|l|+1)/r - theta - 2r] H' + [beta + theta^2/4 - 2 - 2|l|
// - (theta(2|l|+1) + 2 nu)/(2r)] H for a polynomial H.
double heun_ode_residual(const HeunParams& p, const std::vector<double>& a, double r) {
  double h = 0, dh = 0, d2h = 0;
  for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k) {
    d2h = d2h * r + 2 * dh;
    dh = dh * r + h;
    h = h * r + a[k];
  }
  const double l2 = 2.0 * p.abs_l;
  return d2h + ((l2 + 1) / r - p.theta - 2 * r) * dh +
         (p.beta + p.theta * p.theta / 4 - 2 - l2 - (p.theta * (l2 + 1) + 2 * p.nu) / (2 * r)) * h;
}

}  // namespace

TEST_CASE("leading coefficients") {
  SUBCASE("coulomb a1") {
    const auto s = heun_coefficients({1, 0.0, 1.7, 3.0}, 4);
    CHECK(s.coefficients[0] == 1.0);
    CHECK(s.coefficients[1] == doctest::Approx(1.7 / 3.0));
  }
  SUBCASE("linear a1") {
    const auto s = heun_coefficients({2, 0.9, 0.0, 3.0}, 4);
    CHECK(s.coefficients[1] == doctest::Approx(0.45));
  }
  SUBCASE("general a2") {
    for (int al : {0, 1, 3}) {
      const double th = 0.8, nu = 1.3, be = 2.7;
      const double l2 = 2.0 * al;
      const double expected = th * th * (3 + l2) / (8 * (2 + l2)) +
                              th * nu * (1 + al) / ((2 + l2) * (1 + l2)) +
                              nu * nu / (2 * (2 + l2) * (1 + l2)) -
                              (4 * be + th * th - 8 - 8 * al) / (8 * (2 + l2));
      CHECK(heun_coefficients({al, th, nu, be}, 3).coefficients[2] ==
            doctest::Approx(expected).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(heun_coefficients({0, 1, 1, 1}, 1), ValidationError);
  CHECK_THROWS_AS(heun_coefficients({-1, 1, 1, 1}, 5), ValidationError);
}

TEST_CASE("unified recurrence specialises to the single-coupling recurrences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int al = trial % 4;
    const double nu = u(rng), theta = u(rng), beta = 4.0 * u(rng);
    const auto c = heun_coefficients({al, 0.0, nu, beta}, 50).coefficients;
    const auto c_ref = coulomb_series(al, nu, beta, 50);
    const auto l = heun_coefficients({al, theta, 0.0, beta}, 50).coefficients;
    const auto l_ref = linear_series(al, theta, beta, 50);
    for (int k = 0; k <= 50; ++k) {
      CHECK(c[k] == doctest::Approx(c_ref[k]).epsilon(1e-13).scale(1e-300));
      CHECK(l[k] == doctest::Approx(l_ref[k]).epsilon(1e-13).scale(1e-300));
    }
  }
}

TEST_CASE("evaluation") {
  const auto s = heun_coefficients({0, 0.5, 0.5, 2.0}, 30);
  CHECK(heun_eval(s, 0.0) == 1.0);
  // Degree-1 truncation: Coulomb with nu^2 = 2(1+2|l|), beta = 4 + 2|l|.
  const HeunParams p{0, 0.0, std::sqrt(2.0), 4.0};
  const auto t = heun_coefficients(p, 12);
  REQUIRE(t.truncated_at.has_value());
  CHECK(*t.truncated_at == 1);
  for (double r : {0.3, 1.0, 2.5}) CHECK(heun_eval(t, r) == 1.0 + std::sqrt(2.0) * r);
}

TEST_CASE("truncated degree-1 solution satisfies the Heun equation") {
  for (int al : {0, 1, 2}) {
    const double nu = std::sqrt(2.0 * (1 + 2 * al));
    const HeunParams p{al, 0.0, nu, 4.0 + 2.0 * al};
    const auto s = heun_coefficients(p, 10);
    REQUIRE(s.truncated_at == 1);
    const std::vector<double> poly(s.coefficients.begin(), s.coefficients.begin() + 2);
    for (double r : {0.5, 1.0, 2.0}) CHECK(std::abs(heun_ode_residual(p, poly, r)) < 1e-10);
  }
}

TEST_CASE("truncation conditions at the closed-form ground states") {
  for (int al : {0, 1, 2}) {
    SUBCASE("coulomb") {
      const double nu = std::sqrt(2.0 * (1 + 2 * al));
      const auto res = truncation_conditions(1, {al, 0.0, nu, 4.0 + 2.0 * al});
      CHECK(std::abs(res.energy_condition) < 1e-13);
      CHECK(std::abs(res.next_coefficient) < 1e-13);
    }
    SUBCASE("linear") {
      const double theta = std::sqrt(8.0 / (2 * al + 3));
      const double beta = beta_for_degree(1, al, theta);
      const auto res = truncation_conditions(1, {al, theta, 0.0, beta});
      CHECK(std::abs(res.energy_condition) < 1e-13);
      CHECK(std::abs(res.next_coefficient) < 1e-13);
    }
  }
  const HeunParams off{1, 0.7, 0.4, 2.9};
  CHECK(truncation_conditions(2, off).energy_condition ==
        doctest::Approx(4 * 2.9 + 0.49 - 8 - 8 - 16));
  CHECK_THROWS_AS(truncation_conditions(0, off), ValidationError);
}

TEST_CASE("physical parameter mapping") {
  // m = 1, M lambda = 4, alpha = 1, eta = 2: nu = 2/2 = 1, theta = 4/8 = 0.5.
  const auto p = HeunParams::from_physical(-1, 1.0, 4.0, 1.0, 2.0, 3.0);
  CHECK(p.abs_l == 1);
  CHECK(p.nu == doctest::Approx(1.0));
  CHECK(p.theta == doctest::Approx(0.5));
  CHECK(p.beta == doctest::Approx((6.0 - 8.0) / 4.0));
  const auto q = HeunParams::for_degree(2, 1, 1.0, 4.0, 1.0, 2.0);
  CHECK(truncation_conditions(2, q).energy_condition == doctest::Approx(0.0).epsilon(1e-14));
  CHECK_THROWS_AS(HeunParams::from_physical(0, 1.0, 0.0, 1.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("truncation propagates to every later coefficient") {
  // Mixed coupling at a root of a_{n+1}(theta, nu) found by bisection on nu.
  for (int n : {1, 2, 3}) {
    for (int al : {0, 1}) {
      const double theta = 0.6;
      auto next = [&](double nu) {
        HeunParams p{al, theta, nu, beta_for_degree(n, al, theta)};
        return truncation_conditions(n, p).next_coefficient;
      };
      // Scan for the first sign change in nu > 0.
      double lo = 0.01, hi = lo;
      bool found = false;
      for (int i = 1; i < 4000 && !found; ++i) {
        hi = 0.01 * (i + 1);
        if (next(lo) * next(hi) <= 0) found = true; else lo = hi;
      }
      REQUIRE(found);
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (next(lo) * next(mid) <= 0 ? hi : lo) = mid;
      }
      const HeunParams p{al, theta, 0.5 * (lo + hi), beta_for_degree(n, al, theta)};
      const auto s = heun_coefficients(p, n + 10);
      const double big = *std::max_element(s.coefficients.begin(), s.coefficients.end(),
                                           [](double x, double y) { return std::abs(x) < std::abs(y); });
      for (int k = n + 1; k <= n + 10; ++k) CHECK(std::abs(s.coefficients[k]) < 1e-12 * std::max(1.0, std::abs(big)));
      REQUIRE(s.truncated_at.has_value());
      CHECK(*s.truncated_at == n);
      CHECK(classify_truncation(n, p) == TruncationStatus::kPolynomial);
    }
  }
}

TEST_CASE("untruncated series is reported as such") {
  const HeunParams p{0, 0.3, 0.8, 5.1};
  const auto s = heun_coefficients(p, 40);
  CHECK_FALSE(s.truncated_at.has_value());
  CHECK(classify_truncation(1, p) == TruncationStatus::kNotTruncated);
  CHECK(std::isfinite(heun_eval(s, 0.5)));
  CHECK_THROWS_AS(heun_eval(s, 30.0), NonConvergence);
}

TEST_CASE("odd degrees are forbidden without couplings") {
  // theta = nu = 0: a_1 = 0 and odd coefficients vanish identically.
  const HeunParams p{1, 0.0, 0.0, beta_for_degree(1, 1, 0.0)};
  CHECK(classify_truncation(1, p) == TruncationStatus::kParityForbidden);
  const auto s = heun_coefficients({0, 0.0, 0.0, beta_for_degree(2, 0, 0.0)}, 12);
  CHECK(s.truncated_at == 2);
  for (int k = 1; k <= 12; k += 2) CHECK(s.coefficients[k] == 0.0);
}
