#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "egovel/iq_cube.hpp"
#include "egovel/radar_config.hpp"

namespace egovel {

// Per-chirp range spectra of one frame plus an aggregate per-bin SNR.
// Bin b spans the range interval around b * range_resolution. Only the
// lower half of the bins is physical (positive beat frequencies).
struct RangeProfile {
  std::uint32_t num_chirps = 0;
  std::uint32_t num_bins = 0;
  std::vector<std::complex<double>> spectra;  // [chirp][bin]
  std::vector<double> snr_db;                 // usable half only

  std::complex<double>& at(std::uint32_t chirp, std::uint32_t bin) {
    return spectra[static_cast<std::size_t>(chirp) * num_bins + bin];
  }
  const std::complex<double>& at(std::uint32_t chirp, std::uint32_t bin) const {
    return spectra[static_cast<std::size_t>(chirp) * num_bins + bin];
  }
  std::uint32_t usable_bins() const { return num_bins / 2; }
};

// Continuous phase history of one range bin across a frame's chirps,
// rescaled so the values track 4*pi*r(t)/lambda up to a constant.
struct PhaseTrack {
  int range_bin = -1;
  std::vector<double> time;        // t_i = i * Tc
  std::vector<double> phase;       // unwrapped, radians
  std::vector<double> derivative;  // radians/second

  bool valid() const;
};

struct RangeBinSelection {
  double snr_percentile = 95.0;  // candidate gate on the per-frame SNR
  double min_snr_db = 6.0;       // reject bins this close to the noise floor
  int window_bins = 3;           // +- window around each static range
};

// Hann-windowed DFT along the sample axis of every chirp. SNR per bin is
// 20*log10(mean |bin| across chirps / median across usable bins).
RangeProfile range_fft(const IqCube& cube, const RadarConfig& cfg);

// Candidate peaks are usable bins whose SNR reaches the per-frame
// percentile (and the absolute floor); of those, keep the ones within
// +-window_bins of some static range. Sorted, deduplicated. An empty
// result is valid output.
std::vector<int> select_range_bins(const RangeProfile& profile,
                                   const std::vector<double>& static_ranges,
                                   const RadarConfig& cfg,
                                   const RangeBinSelection& sel = {});

// Removes 2*pi jumps: every output step is the input step brought into
// (-pi, pi]. Total function, output[0] == input[0].
std::vector<double> unwrap_phase(std::span<const double> raw_phase);

// dphi/dt: central differences on interior samples, second-order one-sided
// stencils at the two ends. Exact for quadratic phase histories.
std::vector<double> phase_derivative(std::span<const double> phase, double dt);

// Ratio between the measured bin-phase change and the geometric phase
// change 4*pi/lambda per meter: the beat tone, referenced to the chirp
// start, adds pi*(Ns-1)/Ns per range bin on top of the geometric term.
double bin_phase_scale(const RadarConfig& cfg);

// arg() of the given bin across chirps, unwrapped and rescaled by
// 1/bin_phase_scale, with the time axis and derivative filled in.
PhaseTrack extract_phase_track(const RangeProfile& profile, int bin,
                               const RadarConfig& cfg);

// DFT across the chirp axis at one range bin, FFT-shifted so index 0 is
// the most negative radial velocity. Index m maps to range rate
// (m - Nc/2) * v_res, i.e. negative while approaching.
std::vector<std::complex<double>> doppler_spectrum(const RangeProfile& profile,
                                                   int bin);
std::vector<std::complex<double>> doppler_spectrum(const IqCube& cube,
                                                   const RadarConfig& cfg,
                                                   int bin);

// Index of the zero-velocity bin of an FFT-shifted length-n spectrum.
int zero_doppler_bin(int num_chirps);

// Closing speed (positive approaching) of an FFT-shifted doppler bin.
double doppler_bin_closing_speed(int bin, int num_chirps, double v_res);

// Largest-magnitude bin; near-ties (relative 1e-9) resolve toward the
// zero-velocity bin so half-bin tones quantize toward zero.
int doppler_peak_bin(std::span<const std::complex<double>> spectrum);

// True when one phasor dominates the bin: among the spectrum's peaks
// (local maxima above the median floor, de-duplicated within +-2 bins of a
// stronger peak), the largest magnitude is at least rho times the second
// largest. Inputs shorter than 3 bins are treated as a bare phasor list.
bool dominant_phasor_gate(std::span<const std::complex<double>> spectrum,
                          double rho);

}  // namespace egovel
