#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <cmath>
#include <numbers>
#include <vector>

#include "egovel/radar_config.hpp"
#include "egovel/scene.hpp"

namespace testsup {

inline double degrees(double deg) { return deg * std::numbers::pi / 180.0; }

// The 77 GHz configuration used throughout: 182 chirps x 256 samples at
// 10 fps, chirp duration solved so the resolutions land on 0.0429 m and
// 0.0496 m/s exactly.
inline egovel::RadarConfig reference_config() {
  const double carrier = 77e9;
  const double lambda = egovel::kSpeedOfLight / carrier;
  const double d_res = 0.0429;
  const double v_res = 0.0496;
  const double bandwidth = egovel::kSpeedOfLight / (2.0 * d_res);
  const std::uint32_t nc = 182;
  const std::uint32_t ns = 256;
  const double tc = lambda / (2.0 * nc * v_res);
  return egovel::RadarConfig(carrier, bandwidth, tc, nc, ns, 10.0, 0.15,
                             ns / tc);
}

// Single static reflector at (range, azimuth) with the ego driving at
// speed/heading for `seconds`.
inline std::vector<egovel::Reflector> single_reflector(double range,
                                                       double azimuth,
                                                       double amplitude = 1.0) {
  egovel::Reflector r;
  r.x = range * std::sin(azimuth);
  r.y = range * std::cos(azimuth);
  r.amplitude = amplitude;
  return {r};
}

inline egovel::EgoTrajectory straight_drive(double speed, double heading,
                                            double seconds = 30.0) {
  return egovel::EgoTrajectory({egovel::EgoSegment{speed, heading, seconds}});
}

inline egovel::NoiseSpec no_noise() { return egovel::NoiseSpec{0.0, 0.0}; }

inline egovel::QuantSpec exact_quant() {
  egovel::QuantSpec q;
  q.quantize_range = false;
  q.quantize_speed = false;
  q.angle_noise_std = 0.0;
  return q;
}

}  // namespace testsup
