// Command-line front-end: scenario simulation, ego-speed estimation, and
// report generation. See README.md for the scenario file schema.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "egovel/csv.hpp"
#include "egovel/evaluation.hpp"
#include "egovel/iq_cube.hpp"
#include "egovel/scenario.hpp"

namespace fs = std::filesystem;
using namespace egovel;

namespace {

struct CommonArgs {
  std::string scenario_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string method = "both";
  bool dump_phase = false;
  bool dump_roots = false;
  bool dump_segmentation = false;
  bool dump_snr = false;
  bool parallel = false;
  bool scrub_timing = false;
};

void add_seed_option(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--seed", args.seed, "Override the scenario's random seed")
      ->each([&args](const std::string&) { args.seed_set = true; });
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

RunOptions make_run_options(const CommonArgs& args) {
  RunOptions opts;
  if (args.seed_set) opts.seed_override = args.seed;
  opts.parallel = args.parallel;
  opts.pipeline.collect_root_histogram = args.dump_roots;
  opts.pipeline.collect_snr = args.dump_snr;
  return opts;
}

void zero_latencies(EvalReport& report) {
  for (auto& f : report.frames) {
    f.phase_latency_ms = 0.0;
    f.doppler_latency_ms = 0.0;
  }
}

void write_run_outputs(const fs::path& dir, const Scenario& sc,
                       const RunArtifacts& art, const CommonArgs& args) {
  write_iq_file((dir / "iq.bin").string(), art.cubes);
  write_truth_csv((dir / "truth.csv").string(), art.truths);
  write_pointcloud_csv((dir / "pointcloud.csv").string(), art.clouds);

  EstimatesCsvOptions eopts;
  eopts.phase = args.method != "doppler";
  eopts.doppler = args.method != "phase";
  eopts.scrub_timing = args.scrub_timing;
  write_estimates_csv((dir / "estimates.csv").string(), art.report.frames, eopts);

  EvalReport report = art.report;
  report.has_phase = eopts.phase;
  report.has_doppler = eopts.doppler;
  if (args.scrub_timing) zero_latencies(report);
  const auto summary = summarize(std::span(&report, 1));
  write_report_csv((dir / "report.csv").string(), summary);
  std::cout << "scenario: " << sc.name << " (seed " << art.seed << ", "
            << sc.frames << " frames)\n"
            << summary.to_text();

  if (args.dump_phase)
    write_phase_tracks_csv((dir / "phase_tracks.csv").string(), art.results);
  if (args.dump_roots)
    write_root_histogram_csv((dir / "root_histogram.csv").string(),
                             art.results);
  if (args.dump_segmentation)
    write_segmentation_csv((dir / "segmentation.csv").string(), art.clouds,
                           art.results);
  if (args.dump_snr)
    write_snr_csv((dir / "snr.csv").string(), art.results);
}

int run_simulate(const CommonArgs& args) {
  const auto sc = load_scenario(args.scenario_path);
  const auto dir = ensure_out_dir(args.out_dir);
  const std::uint64_t seed = args.seed_set ? args.seed : sc.seed;
  std::vector<IqCube> cubes;
  std::vector<GroundTruth> truths;
  std::vector<PointCloud> clouds;
  simulate_scenario(sc, seed, cubes, truths, clouds);
  write_iq_file((dir / "iq.bin").string(), cubes);
  write_truth_csv((dir / "truth.csv").string(), truths);
  write_pointcloud_csv((dir / "pointcloud.csv").string(), clouds);
  std::cout << "simulated " << sc.frames << " frames of '" << sc.name
            << "' (seed " << seed << ") into " << dir.string() << "\n";
  return 0;
}

int run_estimate(const CommonArgs& args, const std::string& iq_path,
                 const std::string& pc_path) {
  const auto sc = load_scenario(args.scenario_path);
  const auto dir = ensure_out_dir(args.out_dir);
  const auto iq = iq_path.empty() ? (dir / "iq.bin").string() : iq_path;
  const auto pc =
      pc_path.empty() ? (dir / "pointcloud.csv").string() : pc_path;

  const auto cubes = read_iq_file(iq);
  const auto clouds = read_pointcloud_csv(pc);

  PipelineParams params;
  params.collect_root_histogram = args.dump_roots;
  params.collect_snr = args.dump_snr;
  const auto results =
      estimate_frames(sc.radar, cubes, clouds, params, args.parallel);

  // Estimates only; truth stays out of this command's inputs.
  std::vector<GroundTruth> placeholder(results.size());
  for (std::size_t i = 0; i < results.size(); ++i)
    placeholder[i].frame_index = results[i].frame_index;
  const auto report = make_report(sc.name, placeholder, results);

  EstimatesCsvOptions eopts;
  eopts.phase = args.method != "doppler";
  eopts.doppler = args.method != "phase";
  eopts.scrub_timing = args.scrub_timing;
  write_estimates_csv((dir / "estimates.csv").string(), report.frames, eopts);
  if (args.dump_phase)
    write_phase_tracks_csv((dir / "phase_tracks.csv").string(), results);
  if (args.dump_roots)
    write_root_histogram_csv((dir / "root_histogram.csv").string(), results);
  if (args.dump_segmentation)
    write_segmentation_csv((dir / "segmentation.csv").string(), clouds,
                           results);
  if (args.dump_snr) write_snr_csv((dir / "snr.csv").string(), results);
  std::cout << "estimated " << results.size() << " frames -> "
            << (dir / "estimates.csv").string() << "\n";
  return 0;
}

int run_eval(const std::string& out_dir, const std::string& estimates_path,
             const std::string& truth_path, const std::string& name) {
  const fs::path dir = ensure_out_dir(out_dir);
  const auto est =
      estimates_path.empty() ? (dir / "estimates.csv").string() : estimates_path;
  const auto tru = truth_path.empty() ? (dir / "truth.csv").string() : truth_path;

  const auto estimates = read_estimates_csv(est);
  const auto truth = read_truth_frames_csv(tru);
  const auto report = report_from_rows(name, truth, estimates);
  const auto summary = summarize(std::span(&report, 1));
  write_report_csv((dir / "report.csv").string(), summary);
  std::cout << summary.to_text();
  return 0;
}

int run_all(const CommonArgs& args) {
  const auto sc = load_scenario(args.scenario_path);
  const auto dir = ensure_out_dir(args.out_dir);
  const auto art = run_scenario(sc, make_run_options(args));
  write_run_outputs(dir, sc, art, args);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FMCW radar ego-speed estimation harness"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string iq_path, pc_path, estimates_path, truth_path, eval_name = "eval";

  auto* sim = app.add_subcommand("simulate",
                                 "Synthesize raw I/Q, truth, and point clouds");
  sim->add_option("--scenario", args.scenario_path, "Scenario file")->required();
  sim->add_option("--out-dir", args.out_dir, "Output directory");
  add_seed_option(sim, args);

  auto* est = app.add_subcommand(
      "estimate", "Run the estimators on simulated I/Q + point clouds");
  est->add_option("--scenario", args.scenario_path,
                  "Scenario file (radar config and parameters)")
      ->required();
  est->add_option("--out-dir", args.out_dir, "Output directory");
  est->add_option("--iq", iq_path, "I/Q binary (default <out-dir>/iq.bin)");
  est->add_option("--pointcloud", pc_path,
                  "Point-cloud CSV (default <out-dir>/pointcloud.csv)");
  est->add_option("--method", args.method, "phase|doppler|both")
      ->check(CLI::IsMember({"phase", "doppler", "both"}));
  est->add_flag("--dump-phase", args.dump_phase, "Write phase_tracks.csv");
  est->add_flag("--dump-roots", args.dump_roots, "Write root_histogram.csv");
  est->add_flag("--dump-segmentation", args.dump_segmentation,
                "Write segmentation.csv");
  est->add_flag("--dump-snr", args.dump_snr, "Write snr.csv");
  est->add_flag("--parallel", args.parallel, "Frame-parallel estimation");
  est->add_flag("--scrub-timing", args.scrub_timing,
                "Write latency columns as zero (reproducible output)");

  auto* ev = app.add_subcommand("eval", "Score estimates against truth");
  ev->add_option("--out-dir", args.out_dir, "Directory with the CSVs");
  ev->add_option("--estimates", estimates_path, "estimates.csv path");
  ev->add_option("--truth", truth_path, "truth.csv path");
  ev->add_option("--name", eval_name, "Report label");

  auto* run = app.add_subcommand("run", "simulate + estimate + eval");
  run->add_option("--scenario", args.scenario_path, "Scenario file")->required();
  run->add_option("--out-dir", args.out_dir, "Output directory");
  add_seed_option(run, args);
  run->add_option("--method", args.method, "phase|doppler|both")
      ->check(CLI::IsMember({"phase", "doppler", "both"}));
  run->add_flag("--dump-phase", args.dump_phase, "Write phase_tracks.csv");
  run->add_flag("--dump-roots", args.dump_roots, "Write root_histogram.csv");
  run->add_flag("--dump-segmentation", args.dump_segmentation,
                "Write segmentation.csv");
  run->add_flag("--dump-snr", args.dump_snr, "Write snr.csv");
  run->add_flag("--parallel", args.parallel, "Frame-parallel estimation");
  run->add_flag("--scrub-timing", args.scrub_timing,
                "Write latency columns as zero (reproducible output)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return run_simulate(args);
    if (est->parsed()) return run_estimate(args, iq_path, pc_path);
    if (ev->parsed())
      return run_eval(args.out_dir, estimates_path, truth_path, eval_name);
    if (run->parsed()) return run_all(args);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
