#include "egovel/speed_estimator.hpp"

#include <cmath>

#include "egovel/quartic.hpp"

namespace egovel {

SpeedEstimate estimate_speed(std::span<const StaticTrack> tracks, double alpha,
                             const RadarConfig& cfg,
                             const SpeedEstimatorParams& params,
                             BinHistogram* hist_out) {
  const double v_res = speed_resolution(cfg);
  const double bin_width =
      params.root_bin_width > 0.0 ? params.root_bin_width : 0.25 * v_res;
  const double v_max = max_unambiguous_speed(cfg, SpeedAmbiguity::Unwrapped);

  BinHistogram hist(bin_width);
  for (const auto& st : tracks) {
    const auto& tr = st.track;
    if (!tr.valid() || st.r0 <= 0.0) continue;
    for (std::size_t i = 0; i < tr.time.size(); ++i) {
      const double t = tr.time[i];
      if (t <= 0.0) continue;  // first chirp: degenerate quartic
      const auto coeffs =
          quartic_coefficients(t, st.theta, st.r0, alpha, tr.derivative[i], cfg);
      for (double v :
           solve_quartic_in_window(coeffs, params.tol_imag, 0.0, v_max)) {
        hist.add(v);
      }
    }
  }

  SpeedEstimate est;
  est.alpha_hat = alpha;
  est.n_static_points = static_cast<std::uint32_t>(tracks.size());
  est.n_roots_accumulated = hist.total_count();
  if (hist.empty()) {
    est.indeterminate = true;
    if (hist_out) *hist_out = hist;
    return est;
  }
  const auto mode = hist.mode(params.tie_break);
  est.v_b_hat = mode->bin_mean;
  est.confidence =
      static_cast<double>(mode->count) / static_cast<double>(hist.total_count());
  if (hist_out) *hist_out = hist;
  return est;
}

}  // namespace egovel
