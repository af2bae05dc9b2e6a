#include "egovel/iq_cube.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace egovel {

namespace {

constexpr char kMagic[4] = {'E', 'G', 'I', 'Q'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<unsigned char, 4> b = {
      static_cast<unsigned char>(v & 0xff),
      static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff),
      static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b.data()), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  return static_cast<std::uint32_t>(b[0]) |
         (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f32(std::ostream& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(out, bits);
}

float get_f32(std::istream& in) {
  std::uint32_t bits = get_u32(in);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

}  // namespace

void write_iq_stream(std::ostream& out, const std::vector<IqCube>& frames) {
  if (frames.empty()) throw std::invalid_argument("write_iq_stream: no frames");
  const std::uint32_t nc = frames.front().num_chirps();
  const std::uint32_t ns = frames.front().num_samples();
  for (const auto& f : frames) {
    if (f.num_chirps() != nc || f.num_samples() != ns)
      throw std::invalid_argument("write_iq_stream: inconsistent frame shape");
  }
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, nc);
  put_u32(out, ns);
  put_u32(out, static_cast<std::uint32_t>(frames.size()));
  for (int i = 0; i < 12; ++i) out.put('\0');
  for (const auto& f : frames) {
    for (const auto& s : f.data()) {
      put_f32(out, s.real());
      put_f32(out, s.imag());
    }
  }
}

std::vector<IqCube> read_iq_stream(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("read_iq_stream: bad magic");
  const std::uint32_t version = get_u32(in);
  if (version != kVersion)
    throw std::runtime_error("read_iq_stream: unsupported version");
  const std::uint32_t nc = get_u32(in);
  const std::uint32_t ns = get_u32(in);
  const std::uint32_t nframes = get_u32(in);
  in.ignore(12);
  std::vector<IqCube> frames;
  frames.reserve(nframes);
  for (std::uint32_t f = 0; f < nframes; ++f) {
    IqCube cube(f, nc, ns);
    for (auto& s : cube.data()) {
      const float re = get_f32(in);
      const float im = get_f32(in);
      s = {re, im};
    }
    if (!in) throw std::runtime_error("read_iq_stream: truncated file");
    frames.push_back(std::move(cube));
  }
  return frames;
}

void write_iq_file(const std::string& path, const std::vector<IqCube>& frames) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_iq_stream(out, frames);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<IqCube> read_iq_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_iq_stream(in);
}

}  // namespace egovel
