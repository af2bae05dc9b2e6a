#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "egovel/evaluation.hpp"
#include "egovel/pipeline.hpp"
#include "egovel/pointcloud.hpp"
#include "egovel/scene.hpp"

namespace egovel {

// Deterministic fixed-point formatting (normalizes -0) so identical runs
// produce byte-identical files.
std::string fmt_fixed(double v, int precision);

// truth.csv: frame,reflector,v_b_mps,alpha_rad,range_m,azimuth_rad,
//            radial_speed_mps,label
void write_truth_csv(const std::string& path,
                     std::span<const GroundTruth> truths);

// pointcloud.csv: frame,point,range_m,azimuth_rad,elevation_rad,
//                 radial_speed_mps
void write_pointcloud_csv(const std::string& path,
                          std::span<const PointCloud> clouds);
std::vector<PointCloud> read_pointcloud_csv(const std::string& path);

// estimates.csv: frame,method,v_b_hat,alpha_hat,confidence,latency_ms,status
struct EstimatesCsvOptions {
  bool phase = true;
  bool doppler = true;
  // Writes latency_ms as 0.000; the one wall-clock column otherwise keeps
  // repeated runs from being byte-identical.
  bool scrub_timing = false;
};
void write_estimates_csv(const std::string& path,
                         std::span<const FrameRecord> frames,
                         const EstimatesCsvOptions& opts = {});

// Parsed rows of estimates.csv, one per (frame, method).
struct EstimateRow {
  std::uint32_t frame = 0;
  std::string method;
  double v_b_hat = 0.0;
  double alpha_hat = 0.0;
  double confidence = 0.0;
  double latency_ms = 0.0;
  std::string status;
};
std::vector<EstimateRow> read_estimates_csv(const std::string& path);

// Truth rows reduced to per-frame ego state, for `eval`.
struct TruthRow {
  std::uint32_t frame = 0;
  double v_b = 0.0;
  double alpha = 0.0;
};
std::vector<TruthRow> read_truth_frames_csv(const std::string& path);

EvalReport report_from_rows(const std::string& name,
                            std::span<const TruthRow> truth,
                            std::span<const EstimateRow> estimates);

// segmentation.csv: frame,point,range_m,azimuth_rad,radial_speed_mps,
//                   vb_estimate_mps,label
void write_segmentation_csv(const std::string& path,
                            std::span<const PointCloud> clouds,
                            std::span<const FrameResult> results);

// phase_tracks.csv: frame,range_bin,chirp,t_s,phase_rad,derivative_rad_s
void write_phase_tracks_csv(const std::string& path,
                            std::span<const FrameResult> results);

// root_histogram.csv: frame,bin_center_mps,count
void write_root_histogram_csv(const std::string& path,
                              std::span<const FrameResult> results);

// snr.csv: frame,bin,snr_db
void write_snr_csv(const std::string& path,
                   std::span<const FrameResult> results);

void write_report_csv(const std::string& path, const Summary& summary);

}  // namespace egovel
