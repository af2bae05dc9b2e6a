#include "egovel/doppler_baseline.hpp"

#include <cmath>

#include "egovel/histogram.hpp"

namespace egovel {

DopplerEstimate doppler_speed(const RangeProfile& profile,
                              std::span<const RadarPoint> static_points,
                              double alpha, const RadarConfig& cfg,
                              const DopplerBaselineParams& params) {
  DopplerEstimate est;
  if (static_points.empty()) {
    est.indeterminate = true;
    return est;
  }

  const double d_res = range_resolution(cfg);
  const double v_res = speed_resolution(cfg);
  const int nc = static_cast<int>(profile.num_chirps);
  const double vb_bin = params.vb_bin > 0.0 ? params.vb_bin : 0.5 * v_res;

  BinHistogram hist(vb_bin);
  for (const auto& p : static_points) {
    const double c = std::cos(p.azimuth - alpha);
    if (std::abs(c) < params.cos_floor) continue;
    int bin = static_cast<int>(std::lround(p.range / d_res));
    if (bin < 0 || bin >= static_cast<int>(profile.usable_bins())) continue;

    const auto spectrum = doppler_spectrum(profile, bin);
    const int peak = doppler_peak_bin(spectrum);
    double peak_pos = peak;
    if (params.parabolic_interpolation && peak > 0 && peak + 1 < nc) {
      // Parabola through the log magnitudes around the peak.
      const double m0 = std::abs(spectrum[peak - 1]);
      const double m1 = std::abs(spectrum[peak]);
      const double m2 = std::abs(spectrum[peak + 1]);
      if (m0 > 0.0 && m1 > 0.0 && m2 > 0.0) {
        const double l0 = std::log(m0), l1 = std::log(m1), l2 = std::log(m2);
        const double denom = l0 - 2.0 * l1 + l2;
        if (denom != 0.0) peak_pos += 0.5 * (l0 - l2) / denom;
      }
    }
    const double closing =
        (zero_doppler_bin(nc) - peak_pos) * v_res;
    const double vb = closing / c;
    est.per_point_vb.push_back(vb);
    hist.add(vb);
  }

  if (hist.empty()) {
    est.indeterminate = true;
    return est;
  }
  const auto mode = hist.mode(0.0);
  // Interpolated peaks carry sub-bin information worth keeping; the plain
  // baseline stays on the quantized grid.
  est.v_b_hat =
      params.parabolic_interpolation ? mode->bin_mean : mode->bin_center;
  est.confidence =
      static_cast<double>(mode->count) / static_cast<double>(hist.total_count());
  return est;
}

DopplerEstimate doppler_speed(const IqCube& cube,
                              std::span<const RadarPoint> static_points,
                              double alpha, const RadarConfig& cfg,
                              const DopplerBaselineParams& params) {
  return doppler_speed(range_fft(cube, cfg), static_points, alpha, cfg, params);
}

}  // namespace egovel
