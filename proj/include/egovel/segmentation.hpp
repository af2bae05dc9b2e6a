#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "egovel/pointcloud.hpp"
#include "egovel/radar_config.hpp"

namespace egovel {

struct SegmentationParams {
  double k = 1.0;               // half-width of the static band in sigmas
  double alpha_bin = 0.017453292519943295;  // heading histogram bin (1 degree)
  double vb_bin = 0.0;          // speed histogram bin; 0 = v_res/2
  double cos_floor = 0.1;       // drop points too close to broadside
  double vr_floor = 0.0;        // drop near-zero doppler; 0 = v_res/2
  double sigma_floor = 0.0;     // lower bound on the band sigma; 0 = v_res/2
};

enum class PointLabel : std::uint8_t { Static, Dynamic };

struct SegmentationResult {
  bool no_points = false;
  double alpha = 0.0;      // heading the partition was computed with
  double mode_m0 = 0.0;    // modal per-point ego-speed estimate
  double sigma = 0.0;      // band sigma actually used (after the floor)
  std::vector<PointLabel> labels;       // one per input point
  std::vector<double> vb_estimates;     // per point; NaN when unusable
  std::vector<std::uint32_t> static_indices;

  std::vector<RadarPoint> static_points(const PointCloud& cloud) const;
};

// Heading estimate from pairwise radial-speed ratios of the frame's points:
// each usable pair votes arctan((vrj*cos ti - vri*cos tj)/(vri*sin tj -
// vrj*sin ti)) into a histogram and the modal bin center wins. Pairs with
// (near-)equal azimuths or sub-floor radial speeds are skipped. Vote-count
// ties break toward tie_break (the previous frame's heading). Returns
// nullopt when fewer than two usable points exist.
std::optional<double> estimate_alpha(const PointCloud& cloud,
                                     const RadarConfig& cfg,
                                     const SegmentationParams& params = {},
                                     std::optional<double> tie_break = {});

// Splits the cloud by the per-point ego-speed estimate v_r/cos(theta-alpha):
// the static set is the open band (M0 - k*sigma, M0 + k*sigma) around the
// modal estimate. Unusable points (broadside or sub-floor doppler) are
// labeled dynamic.
SegmentationResult segment(const PointCloud& cloud, double alpha,
                           const RadarConfig& cfg,
                           const SegmentationParams& params = {});

}  // namespace egovel
