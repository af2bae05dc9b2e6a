#include "egovel/scene.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace egovel {

EgoTrajectory::EgoTrajectory(std::vector<EgoSegment> segments)
    : segments_(std::move(segments)) {
  for (const auto& s : segments_) {
    if (s.speed < 0.0)
      throw std::invalid_argument("EgoTrajectory: segment speed must be >= 0");
    if (s.duration <= 0.0)
      throw std::invalid_argument("EgoTrajectory: segment duration must be > 0");
    if (std::abs(s.heading) >= std::numbers::pi / 2.0)
      throw std::invalid_argument(
          "EgoTrajectory: |heading| must be < pi/2 (forward half-plane)");
  }
}

EgoTrajectory::State EgoTrajectory::at(double t) const {
  State st;
  if (segments_.empty()) return st;
  double elapsed = 0.0;
  for (const auto& s : segments_) {
    const double dt = (t - elapsed >= s.duration) ? s.duration : (t - elapsed);
    if (dt <= 0.0) break;
    st.x += s.speed * std::sin(s.heading) * dt;
    st.y += s.speed * std::cos(s.heading) * dt;
    elapsed += dt;
  }
  // Active segment: the one containing t; past the script end the ego keeps
  // the final segment's velocity.
  double start = 0.0;
  const EgoSegment* active = &segments_.back();
  for (const auto& s : segments_) {
    if (t < start + s.duration) {
      active = &s;
      break;
    }
    start += s.duration;
  }
  if (t > elapsed) {
    st.x += active->speed * std::sin(active->heading) * (t - elapsed);
    st.y += active->speed * std::cos(active->heading) * (t - elapsed);
  }
  st.speed = active->speed;
  st.heading = active->heading;
  return st;
}

}  // namespace egovel
