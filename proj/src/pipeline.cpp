#include "egovel/pipeline.hpp"

#include <chrono>
#include <cmath>

namespace egovel {

namespace {

using clock_t_ = std::chrono::steady_clock;

double ms_since(clock_t_::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_t_::now() - t0).count();
}

}  // namespace

FramePipeline::FramePipeline(const RadarConfig& cfg, PipelineParams params)
    : cfg_(cfg), params_(std::move(params)) {}

void FramePipeline::reset() {
  prev_alpha_.reset();
  prev_speed_.reset();
  prev_doppler_.reset();
}

FrameResult FramePipeline::process(const IqCube& cube, const PointCloud& cloud) {
  FrameResult res;
  res.frame_index = cube.frame_index();

  const auto t_phase0 = clock_t_::now();

  // Heading, with fallback to the previous frame (0 before any estimate);
  // heading continuity also settles vote-count ties.
  const auto alpha_est = estimate_alpha(cloud, cfg_, params_.segmentation,
                                        prev_alpha_.value_or(0.0));
  const double alpha = alpha_est ? *alpha_est : prev_alpha_.value_or(0.0);
  if (alpha_est) prev_alpha_ = alpha;

  res.segmentation = segment(cloud, alpha, cfg_, params_.segmentation);

  std::vector<double> static_ranges;
  for (auto i : res.segmentation.static_indices)
    static_ranges.push_back(cloud.points[i].range);

  const auto profile = range_fft(cube, cfg_);
  if (params_.collect_snr) res.snr_db = profile.snr_db;
  res.selected_bins =
      select_range_bins(profile, static_ranges, cfg_, params_.bin_selection);

  // Build a phase track per selected bin that has a dominant phasor, and
  // match it to the nearest static point for its geometry.
  const double d_res = range_resolution(cfg_);
  for (int bin : res.selected_bins) {
    const auto spectrum = doppler_spectrum(profile, bin);
    if (!dominant_phasor_gate(spectrum, params_.phasor_ratio)) continue;

    const RadarPoint* matched = nullptr;
    int best_dist = params_.bin_selection.window_bins + 1;
    for (auto i : res.segmentation.static_indices) {
      const auto& p = cloud.points[i];
      const int pbin = static_cast<int>(std::lround(p.range / d_res));
      const int dist = std::abs(pbin - bin);
      if (dist < best_dist) {
        best_dist = dist;
        matched = &p;
      }
    }
    if (!matched) continue;

    StaticTrack st;
    st.track = extract_phase_track(profile, bin, cfg_);
    st.theta = matched->azimuth;
    st.r0 = matched->range;
    res.tracks.push_back(std::move(st));
  }

  SpeedEstimatorParams est_params = params_.estimator;
  if (!est_params.tie_break) {
    est_params.tie_break = prev_speed_ ? *prev_speed_
                           : (res.segmentation.no_points
                                  ? 0.0
                                  : res.segmentation.mode_m0);
  }
  BinHistogram hist(est_params.root_bin_width > 0.0
                        ? est_params.root_bin_width
                        : 0.25 * speed_resolution(cfg_));
  res.phase = estimate_speed(res.tracks, alpha, cfg_, est_params,
                             params_.collect_root_histogram ? &hist : nullptr);
  res.phase.frame_index = res.frame_index;
  res.phase.n_static_points =
      static_cast<std::uint32_t>(res.segmentation.static_indices.size());
  if (params_.collect_root_histogram) res.root_histogram = hist;

  if (res.phase.indeterminate) {
    res.phase_status = EstimateStatus::Indeterminate;
    res.phase.v_b_hat = prev_speed_.value_or(0.0);
  } else {
    prev_speed_ = res.phase.v_b_hat;
  }
  res.phase_latency_ms = ms_since(t_phase0);

  const auto t_dopp0 = clock_t_::now();
  const auto statics = res.segmentation.static_points(cloud);
  res.doppler = doppler_speed(profile, statics, alpha, cfg_, params_.doppler);
  res.doppler.frame_index = res.frame_index;
  if (res.doppler.indeterminate) {
    res.doppler_status = EstimateStatus::Indeterminate;
    res.doppler.v_b_hat = prev_doppler_.value_or(0.0);
  } else {
    prev_doppler_ = res.doppler.v_b_hat;
  }
  res.doppler_latency_ms = ms_since(t_dopp0);

  return res;
}

}  // namespace egovel
