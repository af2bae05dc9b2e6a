#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "egovel/iq_cube.hpp"
#include "egovel/pointcloud.hpp"
#include "egovel/radar_config.hpp"
#include "egovel/scene.hpp"

namespace egovel {

// Synthesizes the dechirped beat signal for one frame. Chirp i starts at
// t_i = i*Tc after frame start; a reflector at range r contributes
// amplitude * exp(j*(2*pi*f_b*n/f_adc + 4*pi*r/lambda)) per sample n, with
// beat frequency f_b = slope*2r/c. Complex white noise and per-chirp phase
// jitter are added per NoiseSpec. GroundTruth carries the exact kinematics.
// Pure given (scene, traj, cfg, frame_index, noise, seed); frames may be
// generated concurrently.
std::pair<IqCube, GroundTruth> synthesize_frame(
    const std::vector<Reflector>& scene, const EgoTrajectory& traj,
    const RadarConfig& cfg, std::uint32_t frame_index, const NoiseSpec& noise,
    std::uint64_t seed);

// Synthesizes the detection layer directly: one point per visible reflector
// with the true (r, theta, 0, v_r) at frame start, degraded per QuantSpec
// (range/speed quantization, azimuth noise, FoV clamp, optional clutter
// duplicates). Points 0..k-1 correspond to the visible reflectors in scene
// order; clutter points follow.
PointCloud synthesize_pointcloud(const std::vector<Reflector>& scene,
                                 const EgoTrajectory& traj,
                                 const RadarConfig& cfg,
                                 std::uint32_t frame_index,
                                 const QuantSpec& quant, std::uint64_t seed);

// Exact closing speed of a reflector seen from the ego platform at time t
// (world clock). Positive while the range is shrinking.
double true_radial_speed(const Reflector& refl, const EgoTrajectory& traj,
                         double t);

// Exact range/azimuth of a reflector relative to the ego platform at time t.
struct RelativePosition {
  double range = 0.0;
  double azimuth = 0.0;
};
RelativePosition true_relative_position(const Reflector& refl,
                                        const EgoTrajectory& traj, double t);

}  // namespace egovel
