#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace egovel {

// Raw beat-signal samples for one frame, laid out [chirp][sample].
class IqCube {
 public:
  IqCube() = default;
  IqCube(std::uint32_t frame_index, std::uint32_t num_chirps,
         std::uint32_t num_samples)
      : frame_index_(frame_index),
        num_chirps_(num_chirps),
        num_samples_(num_samples),
        data_(static_cast<std::size_t>(num_chirps) * num_samples) {}

  std::uint32_t frame_index() const { return frame_index_; }
  std::uint32_t num_chirps() const { return num_chirps_; }
  std::uint32_t num_samples() const { return num_samples_; }

  std::complex<float>& at(std::uint32_t chirp, std::uint32_t sample) {
    return data_[static_cast<std::size_t>(chirp) * num_samples_ + sample];
  }
  const std::complex<float>& at(std::uint32_t chirp, std::uint32_t sample) const {
    return data_[static_cast<std::size_t>(chirp) * num_samples_ + sample];
  }

  const std::vector<std::complex<float>>& data() const { return data_; }
  std::vector<std::complex<float>>& data() { return data_; }

 private:
  std::uint32_t frame_index_ = 0;
  std::uint32_t num_chirps_ = 0;
  std::uint32_t num_samples_ = 0;
  std::vector<std::complex<float>> data_;
};

// Binary container: 32-byte header (magic "EGIQ", version, Nc, Ns, frame
// count, 12 reserved bytes), then little-endian float32 (I,Q) pairs,
// frame-major, chirp-major, sample-major.
void write_iq_file(const std::string& path, const std::vector<IqCube>& frames);
std::vector<IqCube> read_iq_file(const std::string& path);

void write_iq_stream(std::ostream& out, const std::vector<IqCube>& frames);
std::vector<IqCube> read_iq_stream(std::istream& in);

}  // namespace egovel
