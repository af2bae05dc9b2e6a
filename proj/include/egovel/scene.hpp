#pragma once

#include <cstdint>
#include <vector>

namespace egovel {

// A point reflector in the world frame. The radar starts at the origin with
// boresight along +Y; azimuth is measured from boresight toward +X, so a
// reflector at range r and azimuth theta sits at (r*sin(theta), r*cos(theta)).
struct Reflector {
  double x = 0.0;          // meters at t = 0
  double y = 0.0;          // meters at t = 0
  double vx = 0.0;         // meters/second, zero for static reflectors
  double vy = 0.0;
  double amplitude = 1.0;  // unitless reflectivity, > 0

  bool is_static() const { return vx == 0.0 && vy == 0.0; }
};

// One leg of the ego motion script: constant speed at a constant heading
// angle (radians from boresight, |heading| < pi/2) for a duration.
struct EgoSegment {
  double speed = 0.0;     // meters/second, >= 0
  double heading = 0.0;   // radians
  double duration = 0.0;  // seconds, > 0
};

// Piecewise-constant ego motion. Speed and heading are sampled at frame
// start and held for the whole frame, which keeps v_b constant within a
// frame by construction. Past the last segment the ego keeps the final
// segment's speed and heading.
class EgoTrajectory {
 public:
  EgoTrajectory() = default;
  explicit EgoTrajectory(std::vector<EgoSegment> segments);

  struct State {
    double speed = 0.0;
    double heading = 0.0;
    double x = 0.0;  // ego position, world frame
    double y = 0.0;
  };

  // Speed/heading active at time t plus the integrated position.
  State at(double t) const;

  const std::vector<EgoSegment>& segments() const { return segments_; }

 private:
  std::vector<EgoSegment> segments_;
};

// Additive disturbances applied when synthesizing raw I/Q.
struct NoiseSpec {
  // Std of the white noise added to each of I and Q, relative to a
  // unit-amplitude reflector.
  double iq_noise_std = 0.0;
  // Std of a random phase offset applied to each chirp as a whole (radians).
  double phase_jitter_std = 0.0;
};

// Detection-level degradations applied when synthesizing point clouds.
struct QuantSpec {
  bool quantize_range = true;   // snap range to range_resolution steps
  bool quantize_speed = true;   // snap radial speed to speed_resolution steps
  double angle_noise_std = 0.034906585039886591;  // radians (2 degrees)
  double fov = 2.0943951023931953;                // radians (120 degrees)
  double max_range = 0.0;      // meters; 0 = half the range-FFT span
  std::uint32_t clutter_points = 0;  // extra jittered copies per frame
};

// Exact per-reflector kinematics for one frame; the evaluation reference.
struct GroundTruthRecord {
  std::uint32_t frame_index = 0;
  std::uint32_t reflector_index = 0;
  double ego_speed = 0.0;      // true v_b during the frame
  double ego_heading = 0.0;    // true alpha
  double range = 0.0;          // range at frame start
  double azimuth = 0.0;        // azimuth at frame start
  double radial_speed = 0.0;   // closing speed at frame start
  bool is_static = false;
  // Range at every chirp time, for finite-difference checks.
  std::vector<double> range_per_chirp;
};

struct GroundTruth {
  std::uint32_t frame_index = 0;
  double ego_speed = 0.0;
  double ego_heading = 0.0;
  std::vector<GroundTruthRecord> records;
};

}  // namespace egovel
