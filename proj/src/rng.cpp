#include "designlab/rng.hpp"

#include <cmath>

namespace designlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer: bijective, strong avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_(stream_id) {
  std::uint64_t a = mix64(seed + kGolden);
  std::uint64_t b = mix64(stream_id + 0x6A09E667F3BCC909ull);
  key_ = mix64(a ^ (b + kGolden + (a << 6) + (a >> 2)));
}

std::uint64_t CounterRng::next_u64() {
  return mix64(key_ + (counter_++) * kGolden);
}

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  // u1 in (0,1] keeps the log finite.
  double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  double u2 = next_double();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

cplx CounterRng::next_cgaussian() {
  double re = next_gaussian();
  double im = next_gaussian();
  return {re, im};
}

}  // namespace designlab
