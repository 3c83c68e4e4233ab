#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "designlab/brauer.hpp"
#include "designlab/linalg.hpp"
#include "designlab/operator.hpp"
#include "designlab/sampling.hpp"

// Exact group twirls through the commutant basis: realized diagram
// operators, their Gram matrix, its pseudo-inverse, and the induced
// projector E_G[U^t X U^t-dagger] = sum (W^+)_{mu nu} tr(P_mu X) P_nu.

namespace designlab::wg {

struct CommutantBasis {
  GroupFamily family = GroupFamily::Unitary;
  int t = 0;
  int d = 0;
  std::vector<brauer::Pairing> diagrams;  // empty for the orthogonal family
  std::vector<std::string> labels;
  std::vector<Operator> ops;
  int perm_count = 0;  // leading entries realized from permutations
  RMatrix gram;
  RMatrix gram_pinv;
  int rank = 0;
};

// Unitary: t! permutation operators. Symplectic: all (2t-1)!! diagram
// realizations (printed-formula sign convention). Orthogonal (t <= 2,
// d >= 3): I, SWAP, P_Phi = sum |ii><jj|, plus the Levi-Civita invariant
// at d = 4 where SO(4) has a fourth t=2 commutant element.
CommutantBasis build_basis(GroupFamily family, int t, int d);

struct TwirlResult {
  std::vector<double> coeffs;
  double max_imag_coeff = 0.0;  // nonzero only for inputs outside the real span
  cplx trace_in;
  cplx trace_out;
  bool materialized = false;
  Operator op;
};

TwirlResult twirl(const Operator& x, const CommutantBasis& basis, bool materialize = true);

// Empirical mean of U^t X U^t-dagger over N Haar samples. Samples are
// partitioned into fixed-size counter streams and reduced in stream order,
// so the result does not depend on the worker count.
Operator mc_twirl(const Operator& x, const sampling::EnsembleSpec& spec, int t,
                  std::int64_t n_samples, int workers = 1);

// Test hook: identical accumulation, caller supplies the d x d samples.
Operator mc_twirl_with(const Operator& x, int d, int t, std::int64_t n_samples,
                       const std::function<std::vector<cplx>(std::int64_t)>& sample);

// Analytic t = 2 twirls for the two families. The symplectic form divides
// by (d - 2) and is rejected for d < 4; the pseudo-inverse path covers d = 2.
Operator twirl2_unitary_closed(const Operator& x2, int d);
Operator twirl2_symplectic_closed(const Operator& x2, int d);

// b_mu = tr(P_mu x) overlap vector.
std::vector<cplx> overlap_vector(const Operator& x, const CommutantBasis& basis);

}  // namespace designlab::wg
