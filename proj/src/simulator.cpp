#include "egovel/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace egovel {

namespace {

constexpr double kPi = std::numbers::pi;

// Stream tags keep the noise draws of independent products decoupled.
enum RngTag : std::uint64_t {
  kIqNoise = 1,
  kPhaseJitter = 2,
  kPointCloud = 3,
};

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t frame_index,
                         RngTag tag) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(frame_index),
                    static_cast<std::uint64_t>(tag)};
  return std::mt19937_64(seq);
}

struct EgoFrame {
  double x0, y0;       // ego position at frame start
  double vx, vy;       // ego velocity held through the frame
  double speed, heading;
};

EgoFrame ego_at_frame(const EgoTrajectory& traj, const RadarConfig& cfg,
                      std::uint32_t frame_index) {
  const double t0 = frame_index * cfg.frame_duration();
  const auto st = traj.at(t0);
  return {st.x, st.y, st.speed * std::sin(st.heading),
          st.speed * std::cos(st.heading), st.speed, st.heading};
}

}  // namespace

RelativePosition true_relative_position(const Reflector& refl,
                                        const EgoTrajectory& traj, double t) {
  const auto st = traj.at(t);
  const double dx = refl.x + refl.vx * t - st.x;
  const double dy = refl.y + refl.vy * t - st.y;
  RelativePosition rp;
  rp.range = std::hypot(dx, dy);
  rp.azimuth = std::atan2(dx, dy);  // 0 at boresight (+Y), positive toward +X
  return rp;
}

double true_radial_speed(const Reflector& refl, const EgoTrajectory& traj,
                         double t) {
  const auto st = traj.at(t);
  const double dx = refl.x + refl.vx * t - st.x;
  const double dy = refl.y + refl.vy * t - st.y;
  const double r = std::hypot(dx, dy);
  if (r == 0.0) return 0.0;
  // dr/dt = unit(rel) . (v_refl - v_ego); closing speed is its negative.
  const double vrelx = refl.vx - st.speed * std::sin(st.heading);
  const double vrely = refl.vy - st.speed * std::cos(st.heading);
  return -(dx * vrelx + dy * vrely) / r;
}

std::pair<IqCube, GroundTruth> synthesize_frame(
    const std::vector<Reflector>& scene, const EgoTrajectory& traj,
    const RadarConfig& cfg, std::uint32_t frame_index, const NoiseSpec& noise,
    std::uint64_t seed) {
  if (scene.empty())
    throw std::invalid_argument("synthesize_frame: scene has no reflectors");
  for (const auto& r : scene) {
    if (r.amplitude <= 0.0)
      throw std::invalid_argument("synthesize_frame: amplitude must be > 0");
  }

  const auto ego = ego_at_frame(traj, cfg, frame_index);
  if (ego.speed >= max_unambiguous_speed(cfg, SpeedAmbiguity::Unwrapped))
    throw std::invalid_argument(
        "synthesize_frame: ego speed at or above the unwrapped ambiguity limit");

  const double t_frame = frame_index * cfg.frame_duration();
  const double tc = cfg.chirp_duration();
  const std::uint32_t nc = cfg.chirps_per_frame();
  const std::uint32_t ns = cfg.samples_per_chirp();
  const double lambda = cfg.wavelength();
  const double slope = cfg.chirp_slope();
  const double f_adc = cfg.adc_sample_rate();
  const double d_res = range_resolution(cfg);

  IqCube cube(frame_index, nc, ns);
  GroundTruth truth;
  truth.frame_index = frame_index;
  truth.ego_speed = ego.speed;
  truth.ego_heading = ego.heading;
  truth.records.reserve(scene.size());

  // Exact per-chirp ranges, using the frame-start ego state held constant.
  std::vector<std::vector<double>> ranges(scene.size(),
                                          std::vector<double>(nc));
  for (std::size_t k = 0; k < scene.size(); ++k) {
    const auto& refl = scene[k];
    for (std::uint32_t i = 0; i < nc; ++i) {
      const double t = i * tc;
      const double dx = refl.x + refl.vx * (t_frame + t) - (ego.x0 + ego.vx * t);
      const double dy = refl.y + refl.vy * (t_frame + t) - (ego.y0 + ego.vy * t);
      const double r = std::hypot(dx, dy);
      if (r < d_res)
        throw std::invalid_argument(
            "synthesize_frame: reflector within one range cell of the radar");
      ranges[k][i] = r;
    }
    GroundTruthRecord rec;
    rec.frame_index = frame_index;
    rec.reflector_index = static_cast<std::uint32_t>(k);
    rec.ego_speed = ego.speed;
    rec.ego_heading = ego.heading;
    const double dx0 = refl.x + refl.vx * t_frame - ego.x0;
    const double dy0 = refl.y + refl.vy * t_frame - ego.y0;
    rec.range = std::hypot(dx0, dy0);
    rec.azimuth = std::atan2(dx0, dy0);
    const double vrelx = refl.vx - ego.vx;
    const double vrely = refl.vy - ego.vy;
    rec.radial_speed = -(dx0 * vrelx + dy0 * vrely) / rec.range;
    rec.is_static = refl.is_static();
    rec.range_per_chirp = ranges[k];
    truth.records.push_back(std::move(rec));
  }

  auto jitter_rng = make_rng(seed, frame_index, kPhaseJitter);
  auto noise_rng = make_rng(seed, frame_index, kIqNoise);
  std::normal_distribution<double> unit_normal(0.0, 1.0);

  std::vector<double> phase_jitter(nc, 0.0);
  if (noise.phase_jitter_std > 0.0) {
    for (auto& j : phase_jitter) j = noise.phase_jitter_std * unit_normal(jitter_rng);
  }

  std::vector<std::complex<double>> row(ns);
  for (std::uint32_t i = 0; i < nc; ++i) {
    std::fill(row.begin(), row.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t k = 0; k < scene.size(); ++k) {
      const double r = ranges[k][i];
      const double f_beat = slope * 2.0 * r / kSpeedOfLight;
      const double phase0 = 4.0 * kPi * r / lambda + phase_jitter[i];
      const double step = 2.0 * kPi * f_beat / f_adc;
      // One complex rotation per sample instead of two transcendentals.
      std::complex<double> z =
          scene[k].amplitude * std::complex<double>(std::cos(phase0),
                                                    std::sin(phase0));
      const std::complex<double> rot(std::cos(step), std::sin(step));
      for (std::uint32_t n = 0; n < ns; ++n) {
        row[n] += z;
        z *= rot;
      }
    }
    for (std::uint32_t n = 0; n < ns; ++n) {
      double re = row[n].real();
      double im = row[n].imag();
      if (noise.iq_noise_std > 0.0) {
        re += noise.iq_noise_std * unit_normal(noise_rng);
        im += noise.iq_noise_std * unit_normal(noise_rng);
      }
      cube.at(i, n) = {static_cast<float>(re), static_cast<float>(im)};
    }
  }

  return {std::move(cube), std::move(truth)};
}

PointCloud synthesize_pointcloud(const std::vector<Reflector>& scene,
                                 const EgoTrajectory& traj,
                                 const RadarConfig& cfg,
                                 std::uint32_t frame_index,
                                 const QuantSpec& quant, std::uint64_t seed) {
  if (scene.empty())
    throw std::invalid_argument("synthesize_pointcloud: scene has no reflectors");

  const double t_frame = frame_index * cfg.frame_duration();
  const auto ego = ego_at_frame(traj, cfg, frame_index);
  const double d_res = range_resolution(cfg);
  const double v_res = speed_resolution(cfg);
  const double max_range = quant.max_range > 0.0
                               ? quant.max_range
                               : 0.5 * cfg.samples_per_chirp() * d_res;

  auto rng = make_rng(seed, frame_index, kPointCloud);
  std::normal_distribution<double> unit_normal(0.0, 1.0);

  PointCloud cloud;
  cloud.frame_index = frame_index;

  auto degrade = [&](double r, double theta, double v_r) {
    RadarPoint p;
    p.range = quant.quantize_range ? std::round(r / d_res) * d_res : r;
    p.radial_speed =
        quant.quantize_speed ? std::round(v_r / v_res) * v_res : v_r;
    double az = theta;
    if (quant.angle_noise_std > 0.0)
      az += quant.angle_noise_std * unit_normal(rng);
    const double half_fov = 0.5 * quant.fov;
    if (az > half_fov) az = half_fov;
    if (az < -half_fov) az = -half_fov;
    p.azimuth = az;
    p.elevation = 0.0;
    return p;
  };

  std::vector<std::pair<double, std::pair<double, double>>> visible;
  for (const auto& refl : scene) {
    const double dx = refl.x + refl.vx * t_frame - ego.x0;
    const double dy = refl.y + refl.vy * t_frame - ego.y0;
    const double r = std::hypot(dx, dy);
    const double theta = std::atan2(dx, dy);
    // Visibility: inside the usable range span and the antenna FoV. The
    // later clamp only catches measurement noise at the FoV edge.
    if (r < d_res || r > max_range) continue;
    if (std::abs(theta) > 0.5 * quant.fov) continue;
    const double vrelx = refl.vx - ego.vx;
    const double vrely = refl.vy - ego.vy;
    const double v_r = -(dx * vrelx + dy * vrely) / r;
    cloud.points.push_back(degrade(r, theta, v_r));
    visible.push_back({r, {theta, v_r}});
  }

  if (quant.clutter_points > 0 && !visible.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, visible.size() - 1);
    for (std::uint32_t c = 0; c < quant.clutter_points; ++c) {
      const auto& base = visible[pick(rng)];
      const double r = base.first + 2.0 * d_res * unit_normal(rng);
      const double theta =
          base.second.first + 0.0872664625997164788 * unit_normal(rng);
      const double v_r = base.second.second + 1.5 * v_res * unit_normal(rng);
      if (r < d_res || r > max_range) continue;
      cloud.points.push_back(degrade(r, theta, v_r));
    }
  }

  return cloud;
}

}  // namespace egovel
