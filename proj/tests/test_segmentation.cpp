#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "egovel/segmentation.hpp"
#include "egovel/simulator.hpp"
#include "support.hpp"

using namespace egovel;
using testsup::degrees;
using testsup::reference_config;
using testsup::straight_drive;

namespace {

PointCloud static_cloud(const std::vector<double>& thetas, double v_b,
                        double alpha, double range = 2.0) {
  PointCloud cloud;
  for (double th : thetas) {
    RadarPoint p;
    p.range = range;
    p.azimuth = th;
    p.radial_speed = v_b * std::cos(th - alpha);
    cloud.points.push_back(p);
  }
  return cloud;
}

}  // namespace

TEST_CASE("symmetric pair gives zero heading") {
  const auto cfg = reference_config();
  const auto cloud = static_cloud({degrees(-30), degrees(30)}, 0.5, 0.0);
  const auto alpha = estimate_alpha(cloud, cfg);
  REQUIRE(alpha);
  CHECK(*alpha == 0.0);
}

TEST_CASE("heading recovered from exact static points") {
  const auto cfg = reference_config();
  const double alpha_true = degrees(10);
  const auto cloud = static_cloud(
      {degrees(-40), degrees(-20), 0.0, degrees(20), degrees(40)}, 0.5,
      alpha_true);
  const auto alpha = estimate_alpha(cloud, cfg);
  REQUIRE(alpha);
  CHECK(std::abs(*alpha - alpha_true) < 1e-9);
}

TEST_CASE("degenerate pairs are skipped") {
  const auto cfg = reference_config();
  // Two points at the same azimuth: the ratio carries no heading
  // information, so no estimate comes back.
  const auto cloud = static_cloud({degrees(15), degrees(15)}, 0.5, 0.0);
  CHECK(!estimate_alpha(cloud, cfg));

  // Below the radial-speed floor nothing is usable either.
  auto slow = static_cloud({degrees(-30), degrees(30)}, 0.01, 0.0);
  CHECK(!estimate_alpha(slow, cfg));
}

TEST_CASE("heading estimate is invariant to radial-speed scaling") {
  const auto cfg = reference_config();
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    PointCloud cloud;
    const int n = 4 + static_cast<int>(u(rng) * 6);
    for (int i = 0; i < n; ++i) {
      RadarPoint p;
      p.range = 1.0 + 3.0 * u(rng);
      p.azimuth = degrees(-50.0 + 100.0 * u(rng));
      p.radial_speed = 0.15 + 0.8 * u(rng);
      cloud.points.push_back(p);
    }
    const auto base = estimate_alpha(cloud, cfg);
    const double scale = 0.5 + 3.0 * u(rng);
    PointCloud scaled = cloud;
    for (auto& p : scaled.points) p.radial_speed *= scale;
    const auto after = estimate_alpha(scaled, cfg);
    REQUIRE(base.has_value() == after.has_value());
    if (base) CHECK(*base == *after);
  }
}

TEST_CASE("all-static cloud stays together") {
  const auto cfg = reference_config();
  const auto cloud = static_cloud(
      {degrees(-35), degrees(-10), degrees(5), degrees(25), degrees(45)}, 0.5,
      0.0);
  const auto res = segment(cloud, 0.0, cfg);
  CHECK(!res.no_points);
  CHECK(res.mode_m0 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res.static_indices.size() == cloud.size());
  for (auto label : res.labels) CHECK(label == PointLabel::Static);
}

TEST_CASE("quantized dynamics are excluded from the static set") {
  const auto cfg = reference_config();
  const double v_b = 0.5;
  const auto traj = straight_drive(v_b, 0.0);

  std::vector<Reflector> scene;
  for (double th : {-40.0, -20.0, 0.0, 20.0, 40.0}) {
    Reflector r;
    r.x = 2.5 * std::sin(degrees(th));
    r.y = 2.5 * std::cos(degrees(th));
    scene.push_back(r);
  }
  // Two dynamic reflectors closing at an extra 0.3 m/s along boresight.
  for (double x : {-0.8, 0.9}) {
    Reflector r;
    r.x = x;
    r.y = 3.2;
    r.vy = -0.3;
    scene.push_back(r);
  }

  QuantSpec quant;  // full quantization, 2 degree angle noise
  int mislabeled = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cloud = synthesize_pointcloud(scene, traj, cfg, 0, quant, seed);
    REQUIRE(cloud.size() == scene.size());
    const auto res = segment(cloud, /*alpha=*/0.0, cfg);
    for (std::size_t i = 0; i < scene.size(); ++i) {
      const bool truly_static = scene[i].is_static();
      if ((res.labels[i] == PointLabel::Static) != truly_static) ++mislabeled;
    }
  }
  CHECK(mislabeled == 0);
}

TEST_CASE("dynamic point mimicking the static band is misclassified") {
  // Documented failure mode: a mover whose own velocity is orthogonal to
  // the line of sight contributes nothing to its radial speed, so its
  // per-point estimate matches the ego speed exactly.
  const auto cfg = reference_config();
  auto cloud = static_cloud(
      {degrees(-30), degrees(-10), degrees(10), degrees(30)}, 0.4, 0.0);
  RadarPoint impostor;
  impostor.range = 3.0;
  impostor.azimuth = degrees(20);
  impostor.radial_speed = 0.4 * std::cos(degrees(20));
  cloud.points.push_back(impostor);

  const auto res = segment(cloud, 0.0, cfg);
  CHECK(res.labels.back() == PointLabel::Static);
}

TEST_CASE("empty cloud flags no points") {
  const auto cfg = reference_config();
  const auto res = segment(PointCloud{}, 0.0, cfg);
  CHECK(res.no_points);
  CHECK(res.static_indices.empty());
}

TEST_CASE("partition is deterministic and total") {
  const auto cfg = reference_config();
  std::mt19937_64 rng(52);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    PointCloud cloud;
    const int n = 3 + static_cast<int>(u(rng) * 8);
    for (int i = 0; i < n; ++i) {
      RadarPoint p;
      p.range = 1.0 + 3.0 * u(rng);
      p.azimuth = degrees(-60.0 + 120.0 * u(rng));
      p.radial_speed = -0.5 + 1.5 * u(rng);
      cloud.points.push_back(p);
    }
    const double alpha = degrees(-20.0 + 40.0 * u(rng));
    const auto a = segment(cloud, alpha, cfg);
    const auto b = segment(cloud, alpha, cfg);
    CHECK(a.labels == b.labels);
    CHECK(a.labels.size() == cloud.size());
    std::size_t statics = 0;
    for (auto l : a.labels) statics += l == PointLabel::Static;
    CHECK(statics == a.static_indices.size());
  }
}

TEST_CASE("static-majority recovery across random scenes") {
  const auto cfg = reference_config();
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  std::size_t total = 0, correct = 0;
  int alpha_ok = 0, scenes = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const double v_b = 0.4 + 0.5 * u(rng);
    const double alpha_true = degrees(-20.0 + 40.0 * u(rng));
    const auto traj = straight_drive(v_b, alpha_true);

    // Dense indoor-style cloud: tens of wall/furniture returns plus a few
    // movers, comfortably past the static-majority assumption.
    std::vector<Reflector> scene;
    const int n_static = 26 + static_cast<int>(u(rng) * 14);
    for (int i = 0; i < n_static; ++i) {
      double th = alpha_true + degrees(-50.0 + 100.0 * u(rng));
      th = std::clamp(th, degrees(-57), degrees(57));  // keep inside the FoV
      const double r = 1.2 + 3.5 * u(rng);
      Reflector refl;
      refl.x = r * std::sin(th);
      refl.y = r * std::cos(th);
      scene.push_back(refl);
    }
    const int n_dyn = static_cast<int>(n_static * (0.1 + 0.2 * u(rng)));
    for (int i = 0; i < n_dyn; ++i) {
      const double th = degrees(-45.0 + 90.0 * u(rng));
      const double r = 1.2 + 3.5 * u(rng);
      Reflector refl;
      refl.x = r * std::sin(th);
      refl.y = r * std::cos(th);
      // Moves along its own line of sight, clearly off the static band.
      const double vd = (u(rng) < 0.5 ? -1.0 : 1.0) * (0.3 + 0.3 * u(rng));
      refl.vx = vd * std::sin(th);
      refl.vy = vd * std::cos(th);
      scene.push_back(refl);
    }

    QuantSpec quant;  // 2 degree angle noise
    quant.quantize_speed = false;
    const auto cloud = synthesize_pointcloud(scene, traj, cfg, 0, quant, trial);
    if (cloud.size() != scene.size()) continue;
    const auto alpha = estimate_alpha(cloud, cfg);
    if (!alpha) continue;
    const auto res = segment(cloud, *alpha, cfg);

    ++scenes;
    if (std::abs(*alpha - alpha_true) <= degrees(3)) ++alpha_ok;
    for (std::size_t i = 0; i < scene.size(); ++i) {
      ++total;
      if ((res.labels[i] == PointLabel::Static) == scene[i].is_static())
        ++correct;
    }
  }
  REQUIRE(scenes >= 35);
  CHECK(static_cast<double>(correct) / total >= 0.95);
  CHECK(alpha_ok == scenes);
}
