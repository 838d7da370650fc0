#pragma once

#include <array>
#include <cstdint>

namespace remlab {

// Counter-based splittable generator (Philox-style 4x64, 10 rounds).  A
// stream is addressed by (seed, stream index); distinct stream indices give
// statistically independent sequences, and the same address replays the same
// bits on any machine, thread count or call pattern.
//
// Normal variates use Box-Muller on fixed pairs of uniforms: every normal
// consumes a deterministic number of draws, which is what makes replica
// streams bit-reproducible.  This choice is frozen; do not swap in a
// rejection sampler.

enum class Purpose : std::uint32_t {
  Batch = 1,
  Poisson = 2,
  Stable = 3,
  Gaf = 4,
  Zeta = 5,
  Generic = 6,
};

std::uint64_t stream_index(std::uint64_t replica, Purpose purpose);

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double uniform();
  // Standard normal; Box-Muller pair cached.
  double normal();
  // Unit-rate exponential.
  double exponential();

 private:
  void refill();
  std::uint64_t key_[2];
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> block_{};
  int idx_ = 4;
  double cached_normal_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace remlab
