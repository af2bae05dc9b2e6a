#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "egovel/dsp.hpp"
#include "egovel/histogram.hpp"
#include "egovel/radar_config.hpp"

namespace egovel {

// A phase track tied to the static point it was selected from; theta and r0
// supply the geometry of the kinematic quartic.
struct StaticTrack {
  PhaseTrack track;
  double theta = 0.0;  // radians, the matched point's azimuth
  double r0 = 0.0;     // meters, the matched point's range at frame start
};

struct SpeedEstimatorParams {
  double root_bin_width = 0.0;  // 0 = v_res/4
  double tol_imag = 1e-6;
  // Modal-bin count ties break toward this value: the previous frame's
  // estimate, or the segmentation mode on the first frame.
  std::optional<double> tie_break;
};

struct SpeedEstimate {
  std::uint32_t frame_index = 0;
  double v_b_hat = 0.0;       // meters/second, >= 0
  double alpha_hat = 0.0;     // radians
  std::uint32_t n_static_points = 0;
  std::uint64_t n_roots_accumulated = 0;
  double confidence = 0.0;    // modal bin count / total roots
  bool indeterminate = false; // no roots accumulated
};

// Solves the kinematic quartic per (track, chirp) for every chirp past the
// frame start, accumulates the real roots inside [0, v_max_unwrapped] into
// a histogram, and reports the modal bin: v_b_hat is the mean of the roots
// that fell into it. Per-track solves are independent; hist_out, when
// given, receives the merged histogram for diagnostics.
SpeedEstimate estimate_speed(std::span<const StaticTrack> tracks, double alpha,
                             const RadarConfig& cfg,
                             const SpeedEstimatorParams& params = {},
                             BinHistogram* hist_out = nullptr);

}  // namespace egovel
