#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "egovel/dsp.hpp"
#include "egovel/pointcloud.hpp"
#include "egovel/radar_config.hpp"

namespace egovel {

struct DopplerBaselineParams {
  double vb_bin = 0.0;      // mode histogram bin; 0 = v_res/2
  double cos_floor = 0.1;   // drop points too close to broadside
  // Parabolic peak interpolation across the three bins around the peak.
  // The plain baseline keeps this off; resolution quantization is the
  // behavior under test.
  bool parabolic_interpolation = false;
};

struct DopplerEstimate {
  std::uint32_t frame_index = 0;
  double v_b_hat = 0.0;
  double confidence = 0.0;
  bool indeterminate = false;
  std::vector<double> per_point_vb;  // one entry per usable static point
};

// Conventional doppler-FFT ego-speed: per static point, read the peak
// doppler bin at the point's range bin, convert to a closing speed, divide
// by cos(theta - alpha), and take the histogram mode across points.
DopplerEstimate doppler_speed(const RangeProfile& profile,
                              std::span<const RadarPoint> static_points,
                              double alpha, const RadarConfig& cfg,
                              const DopplerBaselineParams& params = {});

DopplerEstimate doppler_speed(const IqCube& cube,
                              std::span<const RadarPoint> static_points,
                              double alpha, const RadarConfig& cfg,
                              const DopplerBaselineParams& params = {});

}  // namespace egovel
