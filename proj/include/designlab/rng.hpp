#pragma once

#include <cstdint>

#include "designlab/common.hpp"

namespace designlab {

// Counter-based generator: the i-th output is a pure function of
// (seed, stream_id, i), so parallel Monte Carlo streams can be assigned in
// any order and replayed exactly.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double next_double();    // uniform in [0, 1)
  double next_gaussian();  // standard normal, Box-Muller
  cplx next_cgaussian();   // independent N(0,1) real and imaginary parts

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace designlab
