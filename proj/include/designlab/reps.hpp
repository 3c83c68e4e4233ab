#pragma once

#include <vector>

#include "designlab/brauer.hpp"
#include "designlab/operator.hpp"

// Matrix realizations on the t-fold tensor space: the canonical antisymmetric
// form Omega, the permutation representation, the Brauer-diagram realization
// built from Omega-contractions, and the normalized symmetric projector.

namespace designlab::reps {

// Canonical form [[0, I_{d/2}], [-I_{d/2}, 0]], stored implicitly: each
// column j maps to sign(j) * e_{partner(j)}.
struct SymplecticForm {
  int d = 0;

  int half() const { return d / 2; }
  int partner(int x) const { return x < d / 2 ? x + d / 2 : x - d / 2; }
  // Value of Omega_{x, partner(x)}.
  double row_sign(int x) const { return x < d / 2 ? 1.0 : -1.0; }
};

SymplecticForm omega(int d);              // parity error when d is odd
Operator omega_matrix(int d);             // explicit d x d realization

// P_d(pi) |i_1..i_t> = |i_{pi^{-1}(1)} .. i_{pi^{-1}(t)}>; pi is 0-based
// one-line form. Exactly d^t unit entries.
Operator perm_rep(const std::vector<int>& pi, int d);

// Realization of a Brauer diagram. `plain` is the direct Omega-contraction
// (equals perm_rep on permutations); `homomorphic` rescales each diagram by
// a sign so that products satisfy
//   F(a) F(b) = (-d)^{loops} F(a*b)
// exactly. Both span the same operator space.
enum class BrauerSign { plain, homomorphic };

Operator brauer_rep(const brauer::Pairing& sigma, int d,
                    BrauerSign convention = BrauerSign::plain);

// Sign relating the two conventions: homomorphic = sign * paper.
int brauer_rep_sign(const brauer::Pairing& sigma);

// Normalized projector onto the symmetric subspace:
// sum_pi P_d(pi) / (d (d+1) ... (d+t-1)); trace 1.
Operator sym_projector(int t, int d);

// d (d+1) ... (d+t-1), the symmetric subspace dimension.
double sym_dimension(int t, int d);

// apply permutation pi to the digit positions of a packed base-d index.
std::uint64_t permute_index(const std::vector<int>& pi, std::uint64_t idx, int d, int t);

}  // namespace designlab::reps
