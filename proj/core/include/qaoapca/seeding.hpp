#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace qaoapca {

/// FNV-1a over the bytes followed by a splitmix64 finalizer. Stable across
/// platforms and runs, unlike std::hash.
std::uint64_t stable_hash(std::string_view bytes);

/// Seed for one (stage, graph, restart) task under a master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view stage_tag,
                          std::string_view graph_id, std::uint64_t index);

std::string hex64(std::uint64_t x);

/// mt19937_64 with hand-rolled conversions to real numbers, so draws are
/// identical on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1].
  double uniform_open_closed() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }
  /// Uniform on [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qaoapca
