#pragma once

#include "qslice/matrix.hpp"

#include <cstdint>

namespace qslice {

/// Counter-based generator: output k is splitmix64's finalizer applied to
/// key + k * golden. Streams are split by rekeying, so sample (seed, stream)
/// never depends on how many values another stream consumed. The mixing
/// constants are pinned; changing them changes every seeded fixture.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(mix(seed ^ mix(stream + 0x5851F42D4C957F2Dull))) {}

  std::uint64_t next() noexcept { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform integer in [lo, hi] via Lemire's multiply-shift rejection.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) noexcept {
    const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * range;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return lo + static_cast<std::int64_t>(m >> 64);
  }

  bool coin() noexcept { return (next() >> 63) != 0; }

  Rng split(std::uint64_t stream) const noexcept { return Rng(key_, stream); }

  /// Matrix with independent entries in [-bound, bound].
  Matrix matrix(std::size_t rows, std::size_t cols, int bound = 3) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(uniform(-bound, bound));
    return m;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Random invertible matrix with small entries (rejection on rank).
Matrix random_invertible(Rng& rng, std::size_t n, int bound = 2);

}  // namespace qslice
