#pragma once

#include <cstdint>
#include <vector>

#include "designlab/linalg.hpp"
#include "designlab/operator.hpp"
#include "designlab/sampling.hpp"

// Brick-layer circuit ensembles on a line of qubits and the second-moment
// operator of a single layer, applied matrix-free on the doubled space
// (two ket copies, two conjugated copies; dimension 2^{4n}). Each local
// gate contributes the exact t = 2 twirl projector of its group, stored in
// rank-factored form. The layer operator is a product of two half-layer
// projectors, so its spectrum is real and lies in [0, 1]; the spectral gap
// is the largest eigenvalue below the fixed subspace.

namespace designlab::circuits {

enum class ArchStyle { unitary, symplectic };

struct BrickGate {
  int a = 0;  // acts on qubits (a, a+1), 1-based
  GroupFamily fam = GroupFamily::Unitary;
};

struct BrickArchitecture {
  int n_qubits = 0;
  ArchStyle style = ArchStyle::unitary;
  std::vector<BrickGate> odd_gates;   // (1,2), (3,4), ...
  std::vector<BrickGate> even_gates;  // (2,3), (4,5), ...

  // unitary: SU(4) everywhere. symplectic: SP(2) on gates touching qubit 1,
  // SO(4) elsewhere.
  static BrickArchitecture make(int n_qubits, ArchStyle style);
};

// SU(4): 15, SO(4): 6, SP(2): 10.
int params_per_gate(GroupFamily fam);

class MomentOperator {
 public:
  explicit MomentOperator(const BrickArchitecture& arch);

  int n_qubits() const { return arch_.n_qubits; }
  std::size_t dim() const { return dim_; }
  const BrickArchitecture& architecture() const { return arch_; }

  void apply_half(bool odd, std::vector<cplx>& psi) const;
  // T(psi) = A_odd(B_even(psi)), the single-layer moment operator.
  void apply_layer(std::vector<cplx>& psi) const;
  // B A B: Hermitian PSD with the same nonzero spectrum as the layer.
  void apply_bab(std::vector<cplx>& psi) const;

  // Orthonormal basis of the layer's fixed subspace (the global t = 2
  // commutant: I and SWAP, plus the Omega pairing for the symplectic style).
  const std::vector<std::vector<cplx>>& fixed_subspace() const { return fixed_; }

  std::vector<int> gate_ranks() const;

  // Dense layer matrix, column by column; dim <= 4096.
  std::vector<cplx> materialize_dense() const;

 private:
  struct GateCtx {
    int a = 0;
    GroupFamily fam = GroupFamily::Unitary;
    int rank = 0;
    std::vector<std::vector<cplx>> basis;  // commutant vectorizations, 256 each
    RMatrix pinv;
    std::vector<std::uint64_t> inner_off;  // 256 offsets
    std::vector<std::uint64_t> outer_off;  // 2^{4n-8} block bases
  };

  void apply_gate(const GateCtx& g, std::vector<cplx>& psi) const;

  BrickArchitecture arch_;
  std::size_t dim_ = 0;
  std::vector<GateCtx> odd_, even_;
  std::vector<std::vector<cplx>> fixed_;
};

MomentOperator layer_moment_operator(const BrickArchitecture& arch);

struct GapReport {
  double lambda = 0.0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

// Largest eigenvalue below the fixed subspace, by block subspace iteration
// on the symmetrized operator with deflation against the fixed basis.
// Throws convergence_error when the iteration cap is hit.
GapReport spectral_gap(const MomentOperator& mo, double tol = 1e-8, int max_iter = 4000,
                       std::uint64_t seed = 7, int block = 3);

// Rayleigh estimate of the overall top eigenvalue (no deflation); converges
// onto the fixed subspace, so the value certifies spectrum <= 1.
double top_eigenvalue(const MomentOperator& mo, double tol = 1e-10, int max_iter = 2000,
                      std::uint64_t seed = 11);

// Smallest quadratic form <v, BAB v> over random unit vectors; certifies
// nonnegativity of the symmetrized layer up to rounding.
double min_quadratic_form(const MomentOperator& mo, int n_vectors, std::uint64_t seed = 13);

// One layer with freshly sampled local gates applied to psi (even half
// first); averaging over samples converges to apply_layer.
void apply_sampled_layer(const BrickArchitecture& arch, std::vector<cplx>& psi,
                         std::vector<sampling::HaarSampler>& gate_samplers);

// Samplers matching the architecture's gate list (even gates then odd).
std::vector<sampling::HaarSampler> make_gate_samplers(const BrickArchitecture& arch,
                                                      std::uint64_t seed,
                                                      std::uint64_t stream);

// (n_sp / n_u) * log(1/lambda_u) / log(1/lambda_sp): ratio of total
// parameter counts at equal approximation quality.
double parameter_ratio(double lambda_u, double lambda_sp, double n_u_per_gate,
                       double n_sp_per_gate);

// Smallest L with lambda^L <= eps / 2^n (non-strict comparison).
long design_depth(double lambda, double eps, int n);

}  // namespace designlab::circuits
