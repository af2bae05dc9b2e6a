#include "egovel/dsp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace egovel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW planner is not thread-safe; plans are cached per length and executed
// via the new-array interface (planned with FFTW_UNALIGNED so any buffer is
// acceptable).
class FftCache {
 public:
  static FftCache& instance() {
    static FftCache cache;
    return cache;
  }

  void forward_inplace(std::complex<double>* data, int n) {
    fftw_plan plan = plan_for(n);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                     reinterpret_cast<fftw_complex*>(data));
  }

 private:
  fftw_plan plan_for(int n) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    fftw_plan plan = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()), FFTW_FORWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(n, plan);
    return plan;
  }

  std::mutex mu_;
  std::map<int, fftw_plan> plans_;
};

std::vector<double> hann_window(std::uint32_t n) {
  std::vector<double> w(n);
  for (std::uint32_t i = 0; i < n; ++i)
    w[i] = 0.5 * (1.0 - std::cos(kTwoPi * i / (n - 1)));
  return w;
}

double median(std::vector<double> v) {
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

double percentile(std::vector<double> v, double pct) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double rank = pct / 100.0 * (v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(rank);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = rank - lo;
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

bool PhaseTrack::valid() const {
  if (phase.size() < 2 || phase.size() != derivative.size() ||
      phase.size() != time.size())
    return false;
  for (std::size_t i = 1; i < phase.size(); ++i) {
    if (std::abs(phase[i] - phase[i - 1]) >= kTwoPi) return false;
  }
  return true;
}

RangeProfile range_fft(const IqCube& cube, const RadarConfig& cfg) {
  if (cube.num_chirps() != cfg.chirps_per_frame() ||
      cube.num_samples() != cfg.samples_per_chirp())
    throw std::invalid_argument("range_fft: cube does not match config");

  const std::uint32_t nc = cube.num_chirps();
  const std::uint32_t ns = cube.num_samples();
  RangeProfile profile;
  profile.num_chirps = nc;
  profile.num_bins = ns;
  profile.spectra.resize(static_cast<std::size_t>(nc) * ns);

  const auto window = hann_window(ns);
  auto& fft = FftCache::instance();
  for (std::uint32_t i = 0; i < nc; ++i) {
    std::complex<double>* row = &profile.spectra[static_cast<std::size_t>(i) * ns];
    for (std::uint32_t n = 0; n < ns; ++n) {
      const auto s = cube.at(i, n);
      row[n] = {window[n] * s.real(), window[n] * s.imag()};
    }
    fft.forward_inplace(row, static_cast<int>(ns));
  }

  const std::uint32_t usable = profile.usable_bins();
  std::vector<double> mag(usable, 0.0);
  for (std::uint32_t b = 0; b < usable; ++b) {
    double acc = 0.0;
    for (std::uint32_t i = 0; i < nc; ++i) acc += std::abs(profile.at(i, b));
    mag[b] = acc / nc;
  }
  const double floor = median(mag);
  profile.snr_db.resize(usable);
  for (std::uint32_t b = 0; b < usable; ++b) {
    profile.snr_db[b] =
        floor > 0.0 ? 20.0 * std::log10(mag[b] / floor) : 0.0;
  }
  return profile;
}

std::vector<int> select_range_bins(const RangeProfile& profile,
                                   const std::vector<double>& static_ranges,
                                   const RadarConfig& cfg,
                                   const RangeBinSelection& sel) {
  const std::uint32_t usable = profile.usable_bins();
  if (usable == 0 || static_ranges.empty()) return {};

  const double p = percentile(profile.snr_db, sel.snr_percentile);
  const double gate = std::max(p, sel.min_snr_db);

  const double d_res = range_resolution(cfg);
  std::vector<int> out;
  for (std::uint32_t b = 0; b < usable; ++b) {
    if (profile.snr_db[b] < gate) continue;
    for (double r : static_ranges) {
      const int center = static_cast<int>(std::lround(r / d_res));
      if (std::abs(static_cast<int>(b) - center) <= sel.window_bins) {
        out.push_back(static_cast<int>(b));
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> unwrap_phase(std::span<const double> raw_phase) {
  std::vector<double> out(raw_phase.begin(), raw_phase.end());
  if (out.size() < 2) return out;
  double correction = 0.0;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double step = raw_phase[i] - raw_phase[i - 1];
    // Bring the step into (-pi, pi].
    const double wrapped = step - kTwoPi * std::ceil((step - kPi) / kTwoPi);
    correction += wrapped - step;
    out[i] = raw_phase[i] + correction;
  }
  return out;
}

std::vector<double> phase_derivative(std::span<const double> phase, double dt) {
  const std::size_t n = phase.size();
  if (n < 2) throw std::invalid_argument("phase_derivative: need >= 2 samples");
  std::vector<double> d(n);
  if (n == 2) {
    d[0] = d[1] = (phase[1] - phase[0]) / dt;
    return d;
  }
  // Difference form keeps a constant input at exactly zero.
  d[0] = (4.0 * (phase[1] - phase[0]) - (phase[2] - phase[0])) / (2.0 * dt);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = (phase[i + 1] - phase[i - 1]) / (2.0 * dt);
  d[n - 1] = (4.0 * (phase[n - 1] - phase[n - 2]) -
              (phase[n - 1] - phase[n - 3])) /
             (2.0 * dt);
  return d;
}

double bin_phase_scale(const RadarConfig& cfg) {
  const std::uint32_t ns = cfg.samples_per_chirp();
  const double d_res = range_resolution(cfg);
  return 1.0 + cfg.wavelength() * (ns - 1.0) / (4.0 * ns * d_res);
}

PhaseTrack extract_phase_track(const RangeProfile& profile, int bin,
                               const RadarConfig& cfg) {
  if (bin < 0 || static_cast<std::uint32_t>(bin) >= profile.num_bins)
    throw std::out_of_range("extract_phase_track: bin out of range");

  const std::uint32_t nc = profile.num_chirps;
  std::vector<double> raw(nc);
  for (std::uint32_t i = 0; i < nc; ++i)
    raw[i] = std::arg(profile.at(i, static_cast<std::uint32_t>(bin)));

  PhaseTrack track;
  track.range_bin = bin;
  track.phase = unwrap_phase(raw);
  const double scale = bin_phase_scale(cfg);
  for (auto& p : track.phase) p /= scale;
  track.time.resize(nc);
  for (std::uint32_t i = 0; i < nc; ++i) track.time[i] = i * cfg.chirp_duration();
  track.derivative = phase_derivative(track.phase, cfg.chirp_duration());
  return track;
}

std::vector<std::complex<double>> doppler_spectrum(const RangeProfile& profile,
                                                   int bin) {
  if (bin < 0 || static_cast<std::uint32_t>(bin) >= profile.num_bins)
    throw std::out_of_range("doppler_spectrum: bin out of range");
  const std::uint32_t nc = profile.num_chirps;
  std::vector<std::complex<double>> x(nc);
  for (std::uint32_t i = 0; i < nc; ++i)
    x[i] = profile.at(i, static_cast<std::uint32_t>(bin));
  FftCache::instance().forward_inplace(x.data(), static_cast<int>(nc));
  // FFT shift: move the zero-velocity bin to index floor(nc/2).
  std::rotate(x.begin(), x.begin() + (nc + 1) / 2, x.end());
  return x;
}

std::vector<std::complex<double>> doppler_spectrum(const IqCube& cube,
                                                   const RadarConfig& cfg,
                                                   int bin) {
  return doppler_spectrum(range_fft(cube, cfg), bin);
}

int zero_doppler_bin(int num_chirps) { return num_chirps / 2; }

double doppler_bin_closing_speed(int bin, int num_chirps, double v_res) {
  return (zero_doppler_bin(num_chirps) - bin) * v_res;
}

int doppler_peak_bin(std::span<const std::complex<double>> spectrum) {
  if (spectrum.empty()) throw std::invalid_argument("doppler_peak_bin: empty");
  double max_mag = 0.0;
  for (const auto& v : spectrum) max_mag = std::max(max_mag, std::abs(v));
  const int z = zero_doppler_bin(static_cast<int>(spectrum.size()));
  int best = -1;
  for (int m = 0; m < static_cast<int>(spectrum.size()); ++m) {
    if (std::abs(spectrum[m]) < max_mag * (1.0 - 1e-9)) continue;
    if (best < 0 || std::abs(m - z) < std::abs(best - z)) best = m;
  }
  return best;
}

bool dominant_phasor_gate(std::span<const std::complex<double>> spectrum,
                          double rho) {
  if (rho <= 1.0)
    throw std::invalid_argument("dominant_phasor_gate: rho must be > 1");
  const std::size_t n = spectrum.size();
  if (n == 0) return false;

  std::vector<double> mag(n);
  for (std::size_t i = 0; i < n; ++i) mag[i] = std::abs(spectrum[i]);

  // Inputs shorter than 3 bins are a bare phasor list: compare directly.
  if (n < 3) {
    std::sort(mag.begin(), mag.end(), std::greater<double>());
    if (mag.size() < 2 || mag[1] == 0.0) return true;
    return mag[0] >= rho * mag[1];
  }

  std::vector<int> candidates;
  const double floor = median(mag);
  for (std::size_t i = 0; i < n; ++i) {
    if (mag[i] <= floor) continue;
    const bool left_ok = (i == 0) || mag[i] >= mag[i - 1];
    const bool right_ok = (i + 1 == n) || mag[i] >= mag[i + 1];
    if (left_ok && right_ok) candidates.push_back(static_cast<int>(i));
  }
  if (candidates.empty()) return false;

  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
    if (mag[a] != mag[b]) return mag[a] > mag[b];
    return a < b;
  });

  // A tone's mainlobe can straddle two bins; collapse candidates that sit
  // within 2 bins of a stronger one before comparing phasors.
  std::vector<int> peaks;
  for (int c : candidates) {
    bool shadowed = false;
    for (int p : peaks) {
      if (std::abs(c - p) <= 2) {
        shadowed = true;
        break;
      }
    }
    if (!shadowed) peaks.push_back(c);
  }

  if (peaks.size() == 1) return true;
  return mag[peaks[0]] >= rho * mag[peaks[1]];
}

}  // namespace egovel
