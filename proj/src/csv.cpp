#include "egovel/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace egovel {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

const char* status_name(EstimateStatus st) {
  return st == EstimateStatus::Ok ? "ok" : "indeterminate";
}

}  // namespace

std::string fmt_fixed(double v, int precision) {
  if (v == 0.0) v = 0.0;  // collapse -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

void write_truth_csv(const std::string& path,
                     std::span<const GroundTruth> truths) {
  auto out = open_out(path);
  out << "frame,reflector,v_b_mps,alpha_rad,range_m,azimuth_rad,"
         "radial_speed_mps,label\n";
  for (const auto& t : truths) {
    for (const auto& r : t.records) {
      out << r.frame_index << ',' << r.reflector_index << ','
          << fmt_fixed(r.ego_speed, 6) << ',' << fmt_fixed(r.ego_heading, 6)
          << ',' << fmt_fixed(r.range, 6) << ',' << fmt_fixed(r.azimuth, 6)
          << ',' << fmt_fixed(r.radial_speed, 6) << ','
          << (r.is_static ? "static" : "dynamic") << '\n';
    }
  }
}

void write_pointcloud_csv(const std::string& path,
                          std::span<const PointCloud> clouds) {
  auto out = open_out(path);
  out << "frame,point,range_m,azimuth_rad,elevation_rad,radial_speed_mps\n";
  for (const auto& c : clouds) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      const auto& p = c.points[i];
      out << c.frame_index << ',' << i << ',' << fmt_fixed(p.range, 6) << ','
          << fmt_fixed(p.azimuth, 6) << ',' << fmt_fixed(p.elevation, 6) << ','
          << fmt_fixed(p.radial_speed, 6) << '\n';
    }
  }
}

std::vector<PointCloud> read_pointcloud_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);  // header
  std::map<std::uint32_t, PointCloud> by_frame;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 6)
      throw std::runtime_error("pointcloud csv: bad row: " + line);
    const auto frame = static_cast<std::uint32_t>(std::stoul(f[0]));
    RadarPoint p;
    p.range = std::stod(f[2]);
    p.azimuth = std::stod(f[3]);
    p.elevation = std::stod(f[4]);
    p.radial_speed = std::stod(f[5]);
    auto& cloud = by_frame[frame];
    cloud.frame_index = frame;
    cloud.points.push_back(p);
  }
  std::vector<PointCloud> out;
  out.reserve(by_frame.size());
  for (auto& [frame, cloud] : by_frame) out.push_back(std::move(cloud));
  return out;
}

void write_estimates_csv(const std::string& path,
                         std::span<const FrameRecord> frames,
                         const EstimatesCsvOptions& opts) {
  auto out = open_out(path);
  out << "frame,method,v_b_hat,alpha_hat,confidence,latency_ms,status\n";
  for (const auto& f : frames) {
    if (opts.phase) {
      out << f.frame << ",phase," << fmt_fixed(f.phase_vb, 6) << ','
          << fmt_fixed(f.phase_alpha, 6) << ','
          << fmt_fixed(f.phase_confidence, 4) << ','
          << fmt_fixed(opts.scrub_timing ? 0.0 : f.phase_latency_ms, 3) << ','
          << status_name(f.phase_status) << '\n';
    }
    if (opts.doppler) {
      // Both methods run off the same segmentation heading.
      out << f.frame << ",doppler," << fmt_fixed(f.doppler_vb, 6) << ','
          << fmt_fixed(f.phase_alpha, 6) << ','
          << fmt_fixed(f.doppler_confidence, 4) << ','
          << fmt_fixed(opts.scrub_timing ? 0.0 : f.doppler_latency_ms, 3) << ','
          << status_name(f.doppler_status) << '\n';
    }
  }
}

std::vector<EstimateRow> read_estimates_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  std::vector<EstimateRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 7)
      throw std::runtime_error("estimates csv: bad row: " + line);
    EstimateRow r;
    r.frame = static_cast<std::uint32_t>(std::stoul(f[0]));
    r.method = f[1];
    r.v_b_hat = std::stod(f[2]);
    r.alpha_hat = std::stod(f[3]);
    r.confidence = std::stod(f[4]);
    r.latency_ms = std::stod(f[5]);
    r.status = f[6];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TruthRow> read_truth_frames_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  std::map<std::uint32_t, TruthRow> by_frame;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_line(line);
    if (f.size() != 8) throw std::runtime_error("truth csv: bad row: " + line);
    TruthRow r;
    r.frame = static_cast<std::uint32_t>(std::stoul(f[0]));
    r.v_b = std::stod(f[2]);
    r.alpha = std::stod(f[3]);
    by_frame.emplace(r.frame, r);
  }
  std::vector<TruthRow> out;
  out.reserve(by_frame.size());
  for (const auto& [frame, row] : by_frame) out.push_back(row);
  return out;
}

EvalReport report_from_rows(const std::string& name,
                            std::span<const TruthRow> truth,
                            std::span<const EstimateRow> estimates) {
  std::map<std::uint32_t, FrameRecord> by_frame;
  for (const auto& t : truth) {
    FrameRecord rec;
    rec.frame = t.frame;
    rec.truth_vb = t.v_b;
    rec.truth_alpha = t.alpha;
    by_frame[t.frame] = rec;
  }
  for (const auto& e : estimates) {
    auto it = by_frame.find(e.frame);
    if (it == by_frame.end())
      throw ValidationError("estimates reference frame " +
                            std::to_string(e.frame) + " absent from truth");
    auto& rec = it->second;
    const auto status = e.status == "ok" ? EstimateStatus::Ok
                                         : EstimateStatus::Indeterminate;
    if (e.method == "phase") {
      rec.phase_vb = e.v_b_hat;
      rec.phase_alpha = e.alpha_hat;
      rec.phase_confidence = e.confidence;
      rec.phase_latency_ms = e.latency_ms;
      rec.phase_status = status;
    } else if (e.method == "doppler") {
      rec.doppler_vb = e.v_b_hat;
      rec.doppler_confidence = e.confidence;
      rec.doppler_latency_ms = e.latency_ms;
      rec.doppler_status = status;
    } else {
      throw ValidationError("unknown method in estimates csv: " + e.method);
    }
  }
  EvalReport report;
  report.scenario = name;
  report.has_phase = false;
  report.has_doppler = false;
  for (const auto& e : estimates) {
    if (e.method == "phase") report.has_phase = true;
    if (e.method == "doppler") report.has_doppler = true;
  }
  report.frames.reserve(by_frame.size());
  for (const auto& [frame, rec] : by_frame) report.frames.push_back(rec);
  return report;
}

void write_segmentation_csv(const std::string& path,
                            std::span<const PointCloud> clouds,
                            std::span<const FrameResult> results) {
  auto out = open_out(path);
  out << "frame,point,range_m,azimuth_rad,radial_speed_mps,vb_estimate_mps,"
         "label\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& seg = results[i].segmentation;
    const auto& cloud = clouds[i];
    for (std::size_t p = 0; p < cloud.points.size(); ++p) {
      const auto& pt = cloud.points[p];
      const double vb = p < seg.vb_estimates.size() ? seg.vb_estimates[p]
                                                    : std::nan("");
      out << results[i].frame_index << ',' << p << ',' << fmt_fixed(pt.range, 6)
          << ',' << fmt_fixed(pt.azimuth, 6) << ','
          << fmt_fixed(pt.radial_speed, 6) << ','
          << (std::isnan(vb) ? std::string("nan") : fmt_fixed(vb, 6)) << ','
          << (p < seg.labels.size() && seg.labels[p] == PointLabel::Static
                  ? "static"
                  : "dynamic")
          << '\n';
    }
  }
}

void write_phase_tracks_csv(const std::string& path,
                            std::span<const FrameResult> results) {
  auto out = open_out(path);
  out << "frame,range_bin,chirp,t_s,phase_rad,derivative_rad_s\n";
  for (const auto& r : results) {
    for (const auto& st : r.tracks) {
      for (std::size_t i = 0; i < st.track.phase.size(); ++i) {
        out << r.frame_index << ',' << st.track.range_bin << ',' << i << ','
            << fmt_fixed(st.track.time[i], 9) << ','
            << fmt_fixed(st.track.phase[i], 6) << ','
            << fmt_fixed(st.track.derivative[i], 3) << '\n';
      }
    }
  }
}

void write_root_histogram_csv(const std::string& path,
                              std::span<const FrameResult> results) {
  auto out = open_out(path);
  out << "frame,bin_center_mps,count\n";
  for (const auto& r : results) {
    if (!r.root_histogram) continue;
    for (const auto& [center, count] : r.root_histogram->bins()) {
      out << r.frame_index << ',' << fmt_fixed(center, 6) << ',' << count
          << '\n';
    }
  }
}

void write_snr_csv(const std::string& path,
                   std::span<const FrameResult> results) {
  auto out = open_out(path);
  out << "frame,bin,snr_db\n";
  for (const auto& r : results) {
    for (std::size_t b = 0; b < r.snr_db.size(); ++b) {
      out << r.frame_index << ',' << b << ',' << fmt_fixed(r.snr_db[b], 3)
          << '\n';
    }
  }
}

void write_report_csv(const std::string& path, const Summary& summary) {
  auto out = open_out(path);
  out << summary.to_csv();
}

}  // namespace egovel
