#pragma once

#include <cstdint>
#include <vector>

#include "designlab/brauer.hpp"
#include "designlab/operator.hpp"
#include "designlab/sampling.hpp"
#include "designlab/weingarten.hpp"

// Numerical verdicts: annihilation residuals for non-permutation diagrams,
// state-design distances (exact Weingarten or Monte Carlo) against the
// symmetric projector, and the rank-two mixed-state gap between the
// unitary and symplectic second-moment twirls.

namespace designlab::designs {

enum class Mode { exact, monte_carlo };

struct DesignReport {
  GroupFamily family;
  int t = 0;
  int d = 0;
  Mode mode = Mode::exact;
  double distance = 0.0;
  std::int64_t samples = 0;
  double tolerance = 0.0;
  bool verdict = false;
};

struct ResidualRow {
  brauer::Pairing diagram;
  bool is_perm = false;
  double state_left = 0.0;   // ||F(sigma) rho_0^t||_F
  double state_right = 0.0;  // ||rho_0^t F(sigma)||_F
  double proj_left = 0.0;    // ||F(sigma) Pi_sym||_F
  double proj_right = 0.0;   // ||Pi_sym F(sigma)||_F
};

struct MixedGapReport {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  int d = 0;
  double gap = 0.0;                     // ||E_U - E_SP||_F at t = 2
  bool closed_form_applicable = false;  // false at d = 2
  double closed_u_residual = 0.0;
  double closed_sp_residual = 0.0;
  std::vector<double> coeffs_u;
  std::vector<double> coeffs_sp;
};

// Residuals of F(sigma) against rho_0^{x t} and Pi_sym for every diagram;
// permutations are reported as the (nonzero) control group.
std::vector<ResidualRow> annihilation_residuals(int t, int d, const std::vector<cplx>& psi0);

// Exact mode twirls |psi0><psi0|^t through the family's commutant basis;
// MC mode averages over n_samples Haar draws. Distance is Frobenius to the
// symmetric projector. psi0 defaults to |0...0>.
DesignReport state_design_test(GroupFamily family, int t, int d, Mode mode,
                               std::int64_t n_samples = 0, std::uint64_t seed = 0,
                               const std::vector<cplx>* psi0 = nullptr,
                               double tol_factor = 5.0, int workers = 1);

// rho = lambda0 |v0><v0| + (1-lambda0) |v1><v1| with v0, v1 the first two
// basis vectors (or v1 = Omega-partner of v0 when partner_embedding).
MixedGapReport mixed_state_gap(double lambda0, int d, bool partner_embedding = false);

std::vector<cplx> basis_state(int d, int index);
std::vector<cplx> random_state(int d, CounterRng& rng);

}  // namespace designlab::designs
