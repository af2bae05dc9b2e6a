#pragma once

#include <cstdint>
#include <vector>

namespace egovel {

// One radar detection. radial_speed is the closing speed along the line of
// sight: positive while the range to the point is shrinking. For a static
// point seen from a platform moving at speed v_b with heading alpha,
// radial_speed = v_b * cos(theta - alpha).
struct RadarPoint {
  double range = 0.0;         // meters, > 0
  double azimuth = 0.0;       // radians, signed, 0 at boresight
  double elevation = 0.0;     // radians, carried but unused by the pipeline
  double radial_speed = 0.0;  // meters/second, closing-positive
};

struct PointCloud {
  std::uint32_t frame_index = 0;
  std::vector<RadarPoint> points;

  bool empty() const { return points.empty(); }
  std::size_t size() const { return points.size(); }
};

}  // namespace egovel
