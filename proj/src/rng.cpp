#include "rgs/rng.hpp"

#include <boost/random/normal_distribution.hpp>

namespace rgs {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), engine_(mix_seed(seed, stream)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(mix_seed(seed_, stream_), index);
}

double RngStream::uniform() { return uniform_(engine_); }

// Ziggurat sampler; the std polar method costs a log per pair.
double RngStream::normal() { return boost::random::normal_distribution<double>{}(engine_); }

std::size_t RngStream::uniform_index(std::size_t n) {
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

}  // namespace rgs
