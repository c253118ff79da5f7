#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace rgs {

/// Seeded random stream. Independent substreams are derived from (seed, index)
/// so that chunked sampling gives the same bits no matter how chunks are scheduled.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  RngStream substream(std::uint64_t index) const;

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  std::size_t uniform_index(std::size_t n);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rgs
