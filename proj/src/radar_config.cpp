#include "egovel/radar_config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace egovel {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("RadarConfig: " + what);
}

}  // namespace

RadarConfig::RadarConfig(double carrier_frequency_hz, double bandwidth_hz,
                         double chirp_duration_s, std::uint32_t chirps_per_frame,
                         std::uint32_t samples_per_chirp, double frame_rate_hz,
                         double frame_duration_s, double adc_sample_rate_hz)
    : carrier_frequency_(carrier_frequency_hz),
      bandwidth_(bandwidth_hz),
      chirp_duration_(chirp_duration_s),
      chirps_per_frame_(chirps_per_frame),
      samples_per_chirp_(samples_per_chirp),
      frame_rate_(frame_rate_hz),
      frame_duration_(frame_duration_s),
      adc_sample_rate_(adc_sample_rate_hz) {
  require(carrier_frequency_ > 0, "carrier_frequency must be > 0");
  require(bandwidth_ > 0, "bandwidth must be > 0");
  require(chirp_duration_ > 0, "chirp_duration must be > 0");
  require(chirps_per_frame_ >= 2, "chirps_per_frame must be >= 2");
  require(samples_per_chirp_ >= 2, "samples_per_chirp must be >= 2");
  require(frame_rate_ > 0, "frame_rate must be > 0");
  require(frame_duration_ > 0, "frame_duration must be > 0");
  require(adc_sample_rate_ > 0, "adc_sample_rate must be > 0");
  require(chirps_per_frame_ * chirp_duration_ <= frame_duration_ * (1 + 1e-12),
          "chirps do not fit in one frame (Nc*Tc > Tf)");
  // The range-FFT bin <-> range mapping (bin b at b*d_res) holds only when
  // the ADC samples span the chirp exactly: f_adc * Tc == Ns.
  require(std::abs(adc_sample_rate_ * chirp_duration_ / samples_per_chirp_ - 1.0) < 1e-6,
          "adc_sample_rate * chirp_duration must equal samples_per_chirp");
}

double range_resolution(const RadarConfig& cfg) {
  return kSpeedOfLight / (2.0 * cfg.bandwidth());
}

double speed_resolution(const RadarConfig& cfg) {
  return cfg.wavelength() /
         (2.0 * cfg.chirps_per_frame() * cfg.chirp_duration());
}

double max_unambiguous_speed(const RadarConfig& cfg, SpeedAmbiguity mode) {
  const double per_pair = cfg.wavelength() / (4.0 * cfg.chirp_duration());
  return mode == SpeedAmbiguity::PerChirpPair ? per_pair : 2.0 * per_pair;
}

}  // namespace egovel
