#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "egovel/quartic.hpp"
#include "support.hpp"

using namespace egovel;
using testsup::degrees;
using testsup::reference_config;

namespace {

constexpr double kPi = std::numbers::pi;

// Exact kinematics: range and its rate at time t for a point starting at
// (r0, theta) while the ego moves at (v, alpha). Independent of the
// simulator and of the coefficient builder.
double range_at(double r0, double theta, double v, double alpha, double t) {
  const double K = r0 * std::cos(theta - alpha);
  return std::sqrt(r0 * r0 - 2.0 * v * t * K + v * v * t * t);
}

double range_rate_at(double r0, double theta, double v, double alpha,
                     double t) {
  const double K = r0 * std::cos(theta - alpha);
  return (v * v * t - v * K) / range_at(r0, theta, v, alpha, t);
}

double exact_theta(const RadarConfig& cfg, double r0, double theta, double v,
                   double alpha, double t) {
  // Phase derivative of Phi(t) = 4*pi*r(t)/lambda.
  return 4.0 * kPi / cfg.wavelength() * range_rate_at(r0, theta, v, alpha, t);
}

// |p(v)| over the sum of its term magnitudes; invariant to scaling all
// coefficients (in particular to dividing by a).
double normalized_residual(const QuarticCoefficients& q, double v) {
  const double num = std::abs(q.eval(v));
  const double den = std::abs(q.a * v * v * v * v) +
                     std::abs(q.b * v * v * v) + std::abs(q.c * v * v) +
                     std::abs(q.d * v) + std::abs(q.e);
  return den > 0.0 ? num / den : num;
}

}  // namespace

TEST_CASE("factored quartic (v^2-1)(v^2-4)") {
  const QuarticCoefficients q{1.0, 0.0, -5.0, 0.0, 4.0};
  const auto roots = solve_quartic(q, 1e-6);
  REQUIRE(roots.size() == 4);
  CHECK(roots[0] == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(roots[1] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(roots[2] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(roots[3] == doctest::Approx(2.0).epsilon(1e-9));

  const auto windowed = solve_quartic_in_window(q, 1e-6, 0.0, 9.0);
  REQUIRE(windowed.size() == 2);
  CHECK(windowed[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(windowed[1] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("quadruple root (v-1)^4") {
  const QuarticCoefficients q{1.0, -4.0, 6.0, -4.0, 1.0};
  const auto roots = solve_quartic(q, 1e-6);
  REQUIRE(roots.size() == 4);
  for (double r : roots) CHECK(r == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("degenerate leading coefficient is rejected") {
  CHECK_THROWS_AS(quartic_roots({0.0, 1.0, 1.0, 1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("vieta checks over random quartics") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> lead(0.5, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    QuarticCoefficients q{lead(rng) * (trial % 2 ? 1.0 : -1.0), coef(rng),
                          coef(rng), coef(rng), coef(rng)};
    const auto roots = quartic_roots(q);
    std::complex<double> sum = 0.0, prod = 1.0;
    for (const auto& r : roots) {
      sum += r;
      prod *= r;
    }
    CHECK(std::abs(sum - std::complex<double>(-q.b / q.a)) <
          1e-8 * std::max(1.0, std::abs(q.b / q.a)));
    CHECK(std::abs(prod - std::complex<double>(q.e / q.a)) <
          1e-8 * std::max(1.0, std::abs(q.e / q.a)));
    // Every reported root satisfies the polynomial.
    for (const auto& r : roots) {
      const std::complex<double> val =
          (((q.a * r + q.b) * r + q.c) * r + q.d) * r + q.e;
      double scale = std::abs(q.a * r * r * r * r) + std::abs(q.b * r * r * r) +
                     std::abs(q.c * r * r) + std::abs(q.d * r) + std::abs(q.e);
      CHECK(std::abs(val) <= 1e-9 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("stationary platform factorization") {
  // Theta = 0 collapses the quartic to v^2 (t*v - K)^2.
  const auto cfg = reference_config();
  const double t = 0.01, r0 = 2.0, theta = degrees(25), alpha = 0.0;
  const auto q = quartic_coefficients(t, theta, r0, alpha, 0.0, cfg);
  const double K = r0 * std::cos(theta - alpha);
  CHECK(q.c == doctest::Approx(K * K));
  CHECK(q.d == 0.0);
  CHECK(q.e == 0.0);

  auto roots = solve_quartic(q, 1e-6);
  REQUIRE(roots.size() == 4);
  // d = e = 0 exactly, so the zero roots come out exact.
  CHECK(roots[0] == 0.0);
  CHECK(roots[1] == 0.0);
  CHECK(roots[2] == doctest::Approx(K / t).epsilon(1e-6));
  CHECK(roots[3] == doctest::Approx(K / t).epsilon(1e-6));

  // Only the zero root survives the physical speed window.
  const double v_max = max_unambiguous_speed(cfg, SpeedAmbiguity::Unwrapped);
  const auto windowed = solve_quartic_in_window(q, 1e-6, 0.0, v_max);
  REQUIRE(windowed.size() == 2);
  CHECK(windowed[0] == 0.0);
  CHECK(windowed[1] == 0.0);
}

TEST_CASE("exact oracle residual at the true speed") {
  const auto cfg = reference_config();
  const double r0 = 2.0, theta = 0.0, alpha = 0.0, v_b = 0.12;
  const double t = 0.5 * cfg.chirps_per_frame() * cfg.chirp_duration();
  const double Theta = exact_theta(cfg, r0, theta, v_b, alpha, t);
  const auto q = quartic_coefficients(t, theta, r0, alpha, Theta, cfg);
  CHECK(std::abs(q.eval(v_b)) < 1e-12);
}

TEST_CASE("root containment over randomized kinematics") {
  const auto cfg = reference_config();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double theta = degrees(-60.0 + 120.0 * u(rng));
    const double alpha = degrees(-45.0 + 90.0 * u(rng));
    const double r0 = 0.5 + 4.5 * u(rng);
    const double v_b = 0.01 + 1.99 * u(rng);
    const double t = cfg.chirp_duration() *
                     (1 + static_cast<int>(u(rng) * (cfg.chirps_per_frame() - 1)));
    const double Theta = exact_theta(cfg, r0, theta, v_b, alpha, t);
    const auto q = quartic_coefficients(t, theta, r0, alpha, Theta, cfg);

    CHECK(normalized_residual(q, v_b) < 1e-9);

    // And the solver actually reports a root at the true speed.
    double nearest = 1e9;
    for (const auto& z : quartic_roots(q))
      nearest = std::min(nearest, std::abs(z - std::complex<double>(v_b)));
    CHECK(nearest < 1e-6 * std::max(1.0, v_b));
  }
}

TEST_CASE("K sign flip negates only the odd coefficients") {
  const auto cfg = reference_config();
  const double t = 0.02, r0 = 3.0, theta = degrees(30), alpha = degrees(10);
  const double Theta = -500.0;
  const auto q1 = quartic_coefficients(t, theta, r0, alpha, Theta, cfg);
  const auto q2 = quartic_coefficients(t, theta, r0, alpha + kPi, Theta, cfg);
  CHECK(q2.a == doctest::Approx(q1.a).epsilon(1e-12));
  CHECK(q2.b == doctest::Approx(-q1.b).epsilon(1e-12));
  CHECK(q2.c == doctest::Approx(q1.c).epsilon(1e-12));
  CHECK(q2.d == doctest::Approx(-q1.d).epsilon(1e-12));
  CHECK(q2.e == doctest::Approx(q1.e).epsilon(1e-12));
}

TEST_CASE("degenerate chirp time is rejected") {
  const auto cfg = reference_config();
  CHECK_THROWS_AS(quartic_coefficients(0.0, 0.0, 2.0, 0.0, 100.0, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(quartic_coefficients(0.01, 0.0, 0.0, 0.0, 100.0, cfg),
                  std::invalid_argument);
}
