#include "remlab/rng.hpp"

#include <cmath>

#include "remlab/types.hpp"

namespace remlab {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ull;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ull;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73Bull;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

}  // namespace

std::uint64_t stream_index(std::uint64_t replica, Purpose purpose) {
  return (static_cast<std::uint64_t>(purpose) << 48) ^ replica;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : key_{seed, stream} {}

void RngStream::refill() {
  std::uint64_t c[4] = {counter_++, 0x0123456789ABCDEFull, 0ull, 0xFEDCBA9876543210ull};
  std::uint64_t k0 = key_[0], k1 = key_[1];
  for (int round = 0; round < 10; ++round) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    const std::uint64_t n0 = hi1 ^ c[1] ^ k0;
    const std::uint64_t n1 = lo1;
    const std::uint64_t n2 = hi0 ^ c[3] ^ k1;
    const std::uint64_t n3 = lo0;
    c[0] = n0;
    c[1] = n1;
    c[2] = n2;
    c[3] = n3;
    k0 += kWeyl0;
    k1 += kWeyl1;
  }
  block_ = {c[0], c[1], c[2], c[3]};
  idx_ = 0;
}

std::uint64_t RngStream::next_u64() {
  if (idx_ >= 4) refill();
  return block_[idx_++];
}

double RngStream::uniform() {
  // 53 bits, shifted to the open interval.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_normal_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double th = kTwoPi * u2;
  cached_normal_ = r * std::sin(th);
  has_cached_ = true;
  return r * std::cos(th);
}

double RngStream::exponential() { return -std::log(uniform()); }

}  // namespace remlab
