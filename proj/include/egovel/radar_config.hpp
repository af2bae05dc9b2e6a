#pragma once

#include <cstdint>

namespace egovel {

// Propagation constant used throughout. Radar chirp arithmetic conventionally
// rounds c to 3e8 m/s; every resolution figure in this project assumes it.
inline constexpr double kSpeedOfLight = 3.0e8;

enum class SpeedAmbiguity {
  PerChirpPair,  // single chirp-pair phase difference, |dphi| < pi
  Unwrapped,     // after unwrapping a chirp train, |dphi| < 2*pi
};

// Chirp/frame timing and RF parameters of one FMCW configuration.
// Validated eagerly: a constructed RadarConfig is always usable and
// immutable, so downstream code never re-checks.
class RadarConfig {
 public:
  RadarConfig(double carrier_frequency_hz, double bandwidth_hz,
              double chirp_duration_s, std::uint32_t chirps_per_frame,
              std::uint32_t samples_per_chirp, double frame_rate_hz,
              double frame_duration_s, double adc_sample_rate_hz);

  double carrier_frequency() const { return carrier_frequency_; }
  double bandwidth() const { return bandwidth_; }
  double chirp_duration() const { return chirp_duration_; }
  std::uint32_t chirps_per_frame() const { return chirps_per_frame_; }
  std::uint32_t samples_per_chirp() const { return samples_per_chirp_; }
  double frame_rate() const { return frame_rate_; }
  double frame_duration() const { return frame_duration_; }
  double adc_sample_rate() const { return adc_sample_rate_; }

  // lambda = c / f_carrier; derived, never stored independently.
  double wavelength() const { return kSpeedOfLight / carrier_frequency_; }

  // Chirp slope B / Tc in Hz/s.
  double chirp_slope() const { return bandwidth_ / chirp_duration_; }

 private:
  double carrier_frequency_;
  double bandwidth_;
  double chirp_duration_;
  std::uint32_t chirps_per_frame_;
  std::uint32_t samples_per_chirp_;
  double frame_rate_;
  double frame_duration_;
  double adc_sample_rate_;
};

// d_res = c / (2B).
double range_resolution(const RadarConfig& cfg);

// v_res = lambda / (2 * Nc * Tc).
double speed_resolution(const RadarConfig& cfg);

// lambda/(4*Tc) per chirp pair, lambda/(2*Tc) with unwrapping.
double max_unambiguous_speed(const RadarConfig& cfg, SpeedAmbiguity mode);

}  // namespace egovel
