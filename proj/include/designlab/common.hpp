#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace designlab {

using cplx = std::complex<double>;

enum class GroupFamily { Unitary, Symplectic, Orthogonal };

const char* family_name(GroupFamily f);
GroupFamily family_from_name(const std::string& name);

// Error taxonomy. The CLI maps these onto process exit codes:
// validation -> 2, budget -> 3, convergence -> 4.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Global size limits. max_dim bounds d^t for any realized operator;
// max_dense_dim additionally bounds dense (dim x dim) materialization.
struct Budget {
  std::size_t max_dim = 65536;
  std::size_t max_dense_dim = 8192;
};

Budget& budget();

// Checked d^t; throws budget_error when the result exceeds budget().max_dim.
std::size_t checked_pow_dim(int d, int t);

inline constexpr const char* kToolVersion = "designlab 1.0.0";

}  // namespace designlab
