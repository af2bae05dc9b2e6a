#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>

namespace egovel {

// Fixed-width histogram over the reals with bins centered at integer
// multiples of the width: bin k covers [k*w - w/2, k*w + w/2). Keeps the
// accumulated values' sums so a modal bin can report the mean of its
// members. merge() supports per-worker accumulation.
class BinHistogram {
 public:
  explicit BinHistogram(double bin_width) : width_(bin_width) {}

  void add(double value) {
    const std::int64_t k = static_cast<std::int64_t>(std::llround(value / width_));
    auto& b = bins_[k];
    b.count += 1;
    b.sum += value;
    total_ += 1;
  }

  void merge(const BinHistogram& other) {
    for (const auto& [k, b] : other.bins_) {
      auto& mine = bins_[k];
      mine.count += b.count;
      mine.sum += b.sum;
    }
    total_ += other.total_;
  }

  std::uint64_t total_count() const { return total_; }
  bool empty() const { return total_ == 0; }
  double bin_width() const { return width_; }

  struct Mode {
    double bin_center = 0.0;
    double bin_mean = 0.0;  // mean of the values accumulated into the bin
    std::uint64_t count = 0;
  };

  // Modal bin. Count ties break toward the bin center closest to
  // tie_break_target when given, otherwise toward the lower center.
  std::optional<Mode> mode(std::optional<double> tie_break_target = {}) const {
    if (bins_.empty()) return std::nullopt;
    const Bin* best = nullptr;
    std::int64_t best_k = 0;
    for (const auto& [k, b] : bins_) {
      if (!best) {
        best = &b;
        best_k = k;
        continue;
      }
      if (b.count > best->count) {
        best = &b;
        best_k = k;
      } else if (b.count == best->count && tie_break_target) {
        const double c = k * width_;
        const double bc = best_k * width_;
        if (std::abs(c - *tie_break_target) < std::abs(bc - *tie_break_target)) {
          best = &b;
          best_k = k;
        }
      }
    }
    Mode m;
    m.bin_center = best_k * width_;
    m.bin_mean = best->sum / static_cast<double>(best->count);
    m.count = best->count;
    return m;
  }

  // Ordered (center, count) pairs, for diagnostics dumps.
  std::map<double, std::uint64_t> bins() const {
    std::map<double, std::uint64_t> out;
    for (const auto& [k, b] : bins_) out[k * width_] = b.count;
    return out;
  }

 private:
  struct Bin {
    std::uint64_t count = 0;
    double sum = 0.0;
  };
  double width_;
  std::map<std::int64_t, Bin> bins_;
  std::uint64_t total_ = 0;
};

}  // namespace egovel
