#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egovel/pipeline.hpp"
#include "egovel/scenario.hpp"

namespace egovel {

enum class Method : std::uint8_t { Phase, Doppler };
std::string_view method_name(Method m);

// Speed regimes used by the comparative reports, by true ego speed:
// Low < 0.25, 0.25 <= Mid < 0.61, 0.61 <= High < 1.05 (m/s).
enum class Regime : std::uint8_t { Low, Mid, High };
std::string_view regime_name(Regime r);
std::optional<Regime> classify_regime(double true_speed);

// Per-frame estimate/truth pairing for one scenario run.
struct FrameRecord {
  std::uint32_t frame = 0;
  double truth_vb = 0.0;
  double truth_alpha = 0.0;

  double phase_vb = 0.0;
  double phase_alpha = 0.0;
  double phase_confidence = 0.0;
  double phase_latency_ms = 0.0;
  EstimateStatus phase_status = EstimateStatus::Ok;

  double doppler_vb = 0.0;
  double doppler_confidence = 0.0;
  double doppler_latency_ms = 0.0;
  EstimateStatus doppler_status = EstimateStatus::Ok;
};

struct EvalReport {
  std::string scenario;
  std::vector<FrameRecord> frames;
  bool has_phase = true;
  bool has_doppler = true;
};

struct ErrorStats {
  std::size_t n_frames = 0;
  double mae = 0.0;
  double median_ae = 0.0;
};

// |estimate - truth| statistics over the report's frames, optionally
// restricted to one true-speed regime. Carried-forward (indeterminate)
// frames count: the pipeline's output is what it is.
ErrorStats error_stats(const EvalReport& report, Method method,
                       std::optional<Regime> regime = {});

double median_latency_ms(const EvalReport& report, Method method);

// Per-method, per-regime MAE rows aggregated over one or more reports.
struct Summary {
  struct Row {
    Method method;
    std::optional<Regime> regime;  // nullopt = all frames
    ErrorStats stats;
    double median_latency_ms = 0.0;
  };
  std::vector<Row> rows;

  std::string to_text() const;
  std::string to_csv() const;
  const Row* find(Method method, std::optional<Regime> regime) const;
};

Summary summarize(std::span<const EvalReport> reports);

struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  bool parallel = false;
  PipelineParams pipeline;
};

struct RunArtifacts {
  std::uint64_t seed = 0;
  std::vector<IqCube> cubes;
  std::vector<GroundTruth> truths;
  std::vector<PointCloud> clouds;
  std::vector<FrameResult> results;
  EvalReport report;
};

// Synthesis products only (the `simulate` subcommand).
void simulate_scenario(const Scenario& sc, std::uint64_t seed,
                       std::vector<IqCube>& cubes,
                       std::vector<GroundTruth>& truths,
                       std::vector<PointCloud>& clouds);

// Runs the estimation pipeline over pre-synthesized frames. Sequential mode
// carries state (heading fallback, previous-estimate tie break) across
// frames; parallel mode processes frames independently and then back-fills
// carried values for indeterminate frames in frame order.
std::vector<FrameResult> estimate_frames(const RadarConfig& cfg,
                                         std::span<const IqCube> cubes,
                                         std::span<const PointCloud> clouds,
                                         const PipelineParams& params,
                                         bool parallel);

EvalReport make_report(const std::string& scenario_name,
                       std::span<const GroundTruth> truths,
                       std::span<const FrameResult> results);

// simulate + estimate + report.
RunArtifacts run_scenario(const Scenario& sc, const RunOptions& opts = {});

}  // namespace egovel
