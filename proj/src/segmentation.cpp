#include "egovel/segmentation.hpp"

#include <cmath>
#include <limits>

#include "egovel/histogram.hpp"

namespace egovel {

namespace {

double vr_floor_of(const SegmentationParams& params, const RadarConfig& cfg) {
  return params.vr_floor > 0.0 ? params.vr_floor : 0.5 * speed_resolution(cfg);
}

}  // namespace

std::vector<RadarPoint> SegmentationResult::static_points(
    const PointCloud& cloud) const {
  std::vector<RadarPoint> out;
  out.reserve(static_indices.size());
  for (auto i : static_indices) out.push_back(cloud.points[i]);
  return out;
}

std::optional<double> estimate_alpha(const PointCloud& cloud,
                                     const RadarConfig& cfg,
                                     const SegmentationParams& params,
                                     std::optional<double> tie_break) {
  const double vr_floor = vr_floor_of(params, cfg);

  std::vector<const RadarPoint*> usable;
  for (const auto& p : cloud.points) {
    if (std::abs(p.radial_speed) >= vr_floor) usable.push_back(&p);
  }
  if (usable.size() < 2) return std::nullopt;

  BinHistogram hist(params.alpha_bin);
  for (std::size_t i = 0; i < usable.size(); ++i) {
    for (std::size_t j = i + 1; j < usable.size(); ++j) {
      const double ti = usable[i]->azimuth;
      const double tj = usable[j]->azimuth;
      if (std::abs(ti - tj) < 1e-9) continue;  // ratio degenerates
      const double vri = usable[i]->radial_speed;
      const double vrj = usable[j]->radial_speed;
      const double num = vrj * std::cos(ti) - vri * std::cos(tj);
      const double den = vri * std::sin(tj) - vrj * std::sin(ti);
      if (num == 0.0 && den == 0.0) continue;
      hist.add(std::atan(num / den));
    }
  }
  const auto mode = hist.mode(tie_break);
  if (!mode) return std::nullopt;
  return mode->bin_center;
}

SegmentationResult segment(const PointCloud& cloud, double alpha,
                           const RadarConfig& cfg,
                           const SegmentationParams& params) {
  SegmentationResult res;
  res.alpha = alpha;
  if (cloud.empty()) {
    res.no_points = true;
    return res;
  }

  const double v_res = speed_resolution(cfg);
  const double vr_floor = vr_floor_of(params, cfg);
  const double vb_bin = params.vb_bin > 0.0 ? params.vb_bin : 0.5 * v_res;
  const double sigma_floor =
      params.sigma_floor > 0.0 ? params.sigma_floor : 0.5 * v_res;

  const std::size_t n = cloud.size();
  res.labels.assign(n, PointLabel::Dynamic);
  res.vb_estimates.assign(n, std::numeric_limits<double>::quiet_NaN());

  BinHistogram hist(vb_bin);
  std::vector<double> values;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = cloud.points[i];
    const double c = std::cos(p.azimuth - alpha);
    if (std::abs(c) < params.cos_floor) continue;
    if (std::abs(p.radial_speed) < vr_floor) continue;
    const double vb = p.radial_speed / c;
    res.vb_estimates[i] = vb;
    hist.add(vb);
    values.push_back(vb);
  }

  if (values.empty()) {
    res.no_points = true;
    return res;
  }

  // Mean of the modal bin rather than its center: the center quantizes M0
  // to the bin grid, which the band then inherits.
  const auto mode = hist.mode();
  res.mode_m0 = mode->bin_mean;

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= values.size();
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= values.size();
  res.sigma = std::max(std::sqrt(var), sigma_floor);

  const double lo = res.mode_m0 - params.k * res.sigma;
  const double hi = res.mode_m0 + params.k * res.sigma;
  for (std::size_t i = 0; i < n; ++i) {
    const double vb = res.vb_estimates[i];
    if (std::isnan(vb)) continue;
    if (vb > lo && vb < hi) {
      res.labels[i] = PointLabel::Static;
      res.static_indices.push_back(static_cast<std::uint32_t>(i));
    }
  }
  return res;
}

}  // namespace egovel
