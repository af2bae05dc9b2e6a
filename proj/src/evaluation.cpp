#include "egovel/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "egovel/simulator.hpp"

namespace egovel {

std::string_view method_name(Method m) {
  return m == Method::Phase ? "phase" : "doppler";
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Low:
      return "low";
    case Regime::Mid:
      return "mid";
    case Regime::High:
      return "high";
  }
  return "?";
}

std::optional<Regime> classify_regime(double true_speed) {
  if (true_speed < 0.25) return Regime::Low;
  if (true_speed < 0.61) return Regime::Mid;
  if (true_speed < 1.05) return Regime::High;
  return std::nullopt;
}

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.end());
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

std::vector<double> abs_errors(const EvalReport& report, Method method,
                               std::optional<Regime> regime) {
  std::vector<double> errs;
  for (const auto& f : report.frames) {
    if (regime && classify_regime(f.truth_vb) != regime) continue;
    const double est = method == Method::Phase ? f.phase_vb : f.doppler_vb;
    errs.push_back(std::abs(est - f.truth_vb));
  }
  return errs;
}

}  // namespace

ErrorStats error_stats(const EvalReport& report, Method method,
                       std::optional<Regime> regime) {
  const auto errs = abs_errors(report, method, regime);
  ErrorStats st;
  st.n_frames = errs.size();
  if (errs.empty()) return st;
  double acc = 0.0;
  for (double e : errs) acc += e;
  st.mae = acc / errs.size();
  st.median_ae = median_of(errs);
  return st;
}

double median_latency_ms(const EvalReport& report, Method method) {
  std::vector<double> lat;
  for (const auto& f : report.frames)
    lat.push_back(method == Method::Phase ? f.phase_latency_ms
                                          : f.doppler_latency_ms);
  return median_of(std::move(lat));
}

const Summary::Row* Summary::find(Method method,
                                  std::optional<Regime> regime) const {
  for (const auto& r : rows) {
    if (r.method == method && r.regime == regime) return &r;
  }
  return nullptr;
}

Summary summarize(std::span<const EvalReport> reports) {
  // Pool all frames, then slice per method/regime.
  EvalReport pooled;
  pooled.has_phase = false;
  pooled.has_doppler = false;
  for (const auto& r : reports) {
    pooled.frames.insert(pooled.frames.end(), r.frames.begin(), r.frames.end());
    pooled.has_phase = pooled.has_phase || r.has_phase;
    pooled.has_doppler = pooled.has_doppler || r.has_doppler;
  }

  Summary sum;
  for (Method m : {Method::Phase, Method::Doppler}) {
    if (m == Method::Phase && !pooled.has_phase) continue;
    if (m == Method::Doppler && !pooled.has_doppler) continue;
    Summary::Row all;
    all.method = m;
    all.stats = error_stats(pooled, m);
    all.median_latency_ms = median_latency_ms(pooled, m);
    sum.rows.push_back(all);
    for (Regime reg : {Regime::Low, Regime::Mid, Regime::High}) {
      const auto st = error_stats(pooled, m, reg);
      if (st.n_frames == 0) continue;
      Summary::Row row;
      row.method = m;
      row.regime = reg;
      row.stats = st;
      row.median_latency_ms = all.median_latency_ms;
      sum.rows.push_back(row);
    }
  }
  return sum;
}

std::string Summary::to_text() const {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-8s %-7s %8s %12s %12s %14s\n", "method",
                "regime", "frames", "mae_mps", "median_ae", "latency_ms");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-8s %-7s %8zu %12.6f %12.6f %14.3f\n",
                  std::string(method_name(r.method)).c_str(),
                  r.regime ? std::string(regime_name(*r.regime)).c_str() : "all",
                  r.stats.n_frames, r.stats.mae, r.stats.median_ae,
                  r.median_latency_ms);
    out += buf;
  }
  return out;
}

std::string Summary::to_csv() const {
  std::string out = "method,regime,n_frames,mae_mps,median_ae_mps,median_latency_ms\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%.6f,%.6f,%.3f\n",
                  std::string(method_name(r.method)).c_str(),
                  r.regime ? std::string(regime_name(*r.regime)).c_str() : "all",
                  r.stats.n_frames, r.stats.mae, r.stats.median_ae,
                  r.median_latency_ms);
    out += buf;
  }
  return out;
}

void simulate_scenario(const Scenario& sc, std::uint64_t seed,
                       std::vector<IqCube>& cubes,
                       std::vector<GroundTruth>& truths,
                       std::vector<PointCloud>& clouds) {
  cubes.clear();
  truths.clear();
  clouds.clear();
  cubes.reserve(sc.frames);
  truths.reserve(sc.frames);
  clouds.reserve(sc.frames);
  for (std::uint32_t f = 0; f < sc.frames; ++f) {
    auto [cube, truth] =
        synthesize_frame(sc.reflectors, sc.trajectory, sc.radar, f, sc.noise, seed);
    clouds.push_back(synthesize_pointcloud(sc.reflectors, sc.trajectory,
                                           sc.radar, f, sc.quantization, seed));
    cubes.push_back(std::move(cube));
    truths.push_back(std::move(truth));
  }
}

std::vector<FrameResult> estimate_frames(const RadarConfig& cfg,
                                         std::span<const IqCube> cubes,
                                         std::span<const PointCloud> clouds,
                                         const PipelineParams& params,
                                         bool parallel) {
  if (cubes.size() != clouds.size())
    throw ValidationError("estimate_frames: cube/point-cloud frame counts differ");
  const std::size_t n = cubes.size();
  std::vector<FrameResult> results(n);

  if (!parallel) {
    FramePipeline pipeline(cfg, params);
    for (std::size_t i = 0; i < n; ++i)
      results[i] = pipeline.process(cubes[i], clouds[i]);
    return results;
  }

  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      static_cast<unsigned>(n)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      FramePipeline pipeline(cfg, params);
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        pipeline.reset();
        results[i] = pipeline.process(cubes[i], clouds[i]);
      }
    });
  }
  for (auto& t : pool) t.join();

  // Back-fill carried values in frame order, matching the sequential
  // convention for indeterminate frames.
  double prev_phase = 0.0, prev_doppler = 0.0;
  for (auto& r : results) {
    if (r.phase_status == EstimateStatus::Indeterminate)
      r.phase.v_b_hat = prev_phase;
    else
      prev_phase = r.phase.v_b_hat;
    if (r.doppler_status == EstimateStatus::Indeterminate)
      r.doppler.v_b_hat = prev_doppler;
    else
      prev_doppler = r.doppler.v_b_hat;
  }
  return results;
}

EvalReport make_report(const std::string& scenario_name,
                       std::span<const GroundTruth> truths,
                       std::span<const FrameResult> results) {
  if (truths.size() != results.size())
    throw ValidationError("make_report: truth/result frame counts differ");
  EvalReport report;
  report.scenario = scenario_name;
  report.frames.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& t = truths[i];
    const auto& r = results[i];
    FrameRecord rec;
    rec.frame = r.frame_index;
    rec.truth_vb = t.ego_speed;
    rec.truth_alpha = t.ego_heading;
    rec.phase_vb = r.phase.v_b_hat;
    rec.phase_alpha = r.phase.alpha_hat;
    rec.phase_confidence = r.phase.confidence;
    rec.phase_latency_ms = r.phase_latency_ms;
    rec.phase_status = r.phase_status;
    rec.doppler_vb = r.doppler.v_b_hat;
    rec.doppler_confidence = r.doppler.confidence;
    rec.doppler_latency_ms = r.doppler_latency_ms;
    rec.doppler_status = r.doppler_status;
    report.frames.push_back(rec);
  }
  return report;
}

RunArtifacts run_scenario(const Scenario& sc, const RunOptions& opts) {
  RunArtifacts art;
  art.seed = opts.seed_override.value_or(sc.seed);
  simulate_scenario(sc, art.seed, art.cubes, art.truths, art.clouds);
  art.results =
      estimate_frames(sc.radar, art.cubes, art.clouds, opts.pipeline, opts.parallel);
  art.report = make_report(sc.name, art.truths, art.results);
  return art;
}

}  // namespace egovel
