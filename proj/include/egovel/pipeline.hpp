#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "egovel/doppler_baseline.hpp"
#include "egovel/dsp.hpp"
#include "egovel/histogram.hpp"
#include "egovel/iq_cube.hpp"
#include "egovel/pointcloud.hpp"
#include "egovel/radar_config.hpp"
#include "egovel/segmentation.hpp"
#include "egovel/speed_estimator.hpp"

namespace egovel {

struct PipelineParams {
  SegmentationParams segmentation;
  RangeBinSelection bin_selection;
  SpeedEstimatorParams estimator;
  DopplerBaselineParams doppler;
  double phasor_ratio = 3.0;  // dominant-phasor gate threshold
  bool collect_root_histogram = false;
  bool collect_snr = false;  // keep the per-bin SNR for diagnostics dumps
};

enum class EstimateStatus : std::uint8_t {
  Ok,
  // No usable tracks/points this frame; the reported value is the previous
  // frame's estimate carried forward (0 on the first frame).
  Indeterminate,
};

struct FrameResult {
  std::uint32_t frame_index = 0;
  SegmentationResult segmentation;
  std::vector<int> selected_bins;
  std::vector<StaticTrack> tracks;  // tracks that passed the phasor gate

  SpeedEstimate phase;
  EstimateStatus phase_status = EstimateStatus::Ok;
  double phase_latency_ms = 0.0;

  DopplerEstimate doppler;
  EstimateStatus doppler_status = EstimateStatus::Ok;
  double doppler_latency_ms = 0.0;

  std::optional<BinHistogram> root_histogram;
  std::vector<double> snr_db;  // usable half; filled when collect_snr is set
};

// Stateful frame-by-frame runner: holds the previous frame's heading and
// speed for the fallback paths. Frames must be fed in order. For
// frame-parallel execution construct one pipeline per worker and disable
// carry-over via reset(); all stages are otherwise pure.
class FramePipeline {
 public:
  FramePipeline(const RadarConfig& cfg, PipelineParams params = {});

  FrameResult process(const IqCube& cube, const PointCloud& cloud);

  void reset();

  const RadarConfig& config() const { return cfg_; }
  const PipelineParams& params() const { return params_; }

 private:
  RadarConfig cfg_;
  PipelineParams params_;
  std::optional<double> prev_alpha_;
  std::optional<double> prev_speed_;
  std::optional<double> prev_doppler_;
};

}  // namespace egovel
