#pragma once

#include <cstdint>
#include <vector>

#include "designlab/operator.hpp"
#include "designlab/rng.hpp"

// Haar-measure samplers. Unitary: complex Ginibre + Gram-Schmidt with the
// positive-diagonal normalization. Symplectic: quaternionic Ginibre,
// orthonormalized in partner pairs (column j and -Omega conj(col j)) so the
// form constraint holds by construction. Orthogonal: real Ginibre + QR with
// a determinant sign fix onto SO(d).

namespace designlab::sampling {

struct EnsembleSpec {
  GroupFamily family = GroupFamily::Unitary;
  int d = 2;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

class HaarSampler {
 public:
  explicit HaarSampler(const EnsembleSpec& spec);

  // Next d x d sample, row-major.
  std::vector<cplx> next();
  Operator next_operator();

  const EnsembleSpec& spec() const { return spec_; }

 private:
  EnsembleSpec spec_;
  CounterRng rng_;
};

// Single draws (first element of the spec's stream).
Operator haar_unitary(const EnsembleSpec& spec);
Operator haar_symplectic(const EnsembleSpec& spec);
Operator haar_orthogonal(const EnsembleSpec& spec);

// Residuals used by the samplers' self-checks and tests.
double unitarity_residual(const std::vector<cplx>& u, int d);       // ||U^dag U - I||_F
double symplectic_residual(const std::vector<cplx>& u, int d);      // ||U^T Omega U - Omega||_F
double quaternionic_residual(const std::vector<cplx>& u, int d);    // ||U - Omega U* Omega^T||_F

}  // namespace designlab::sampling
