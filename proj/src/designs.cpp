#include "designlab/designs.hpp"

#include <cmath>

#include "designlab/reps.hpp"

namespace designlab::designs {

namespace {

Operator rank_one(const std::vector<cplx>& v, int d, int t) {
  std::size_t dim = checked_pow_dim(d, t);
  std::vector<cplx> w = tensor_power(v, t);
  if (w.size() != dim) throw validation_error("state dimension mismatch");
  Operator x = Operator::dense_zero(d, t);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) x.a[r * dim + c] = w[r] * std::conj(w[c]);
  }
  return x;
}

double norm_of(const std::vector<cplx>& v) { return vec_norm(v); }

}  // namespace

std::vector<cplx> basis_state(int d, int index) {
  std::vector<cplx> v(d, cplx{0.0, 0.0});
  v[index] = cplx{1.0, 0.0};
  return v;
}

std::vector<cplx> random_state(int d, CounterRng& rng) {
  std::vector<cplx> v(d);
  for (auto& x : v) x = rng.next_cgaussian();
  vec_normalize(v);
  return v;
}

std::vector<ResidualRow> annihilation_residuals(int t, int d, const std::vector<cplx>& psi0) {
  if (d % 2 != 0) throw validation_error("annihilation residuals require even d");
  if (static_cast<int>(psi0.size()) != d) throw validation_error("state dimension mismatch");
  if (std::abs(norm_of(psi0) - 1.0) > 1e-10) {
    throw validation_error("reference state must be normalized");
  }

  std::vector<cplx> psit = tensor_power(psi0, t);
  Operator proj = reps::sym_projector(t, d);

  std::vector<ResidualRow> rows;
  for (const auto& sigma : brauer::enumerate_pairings(t)) {
    Operator f = reps::brauer_rep(sigma, d);
    ResidualRow row;
    row.diagram = sigma;
    row.is_perm = brauer::is_permutation(sigma);

    // ||F (psi psi*)^t||_F = ||F psi^t|| since the state power is rank one.
    row.state_left = vec_norm(apply_op(f, psit));
    row.state_right = vec_norm(apply_op_dagger(f, psit));
    row.proj_left = frobenius_norm(sparse_times_dense(f, proj));
    row.proj_right = frobenius_norm(dense_times_sparse(proj, f));
    rows.push_back(std::move(row));
  }
  return rows;
}

DesignReport state_design_test(GroupFamily family, int t, int d, Mode mode,
                               std::int64_t n_samples, std::uint64_t seed,
                               const std::vector<cplx>* psi0, double tol_factor,
                               int workers) {
  std::vector<cplx> ref = psi0 ? *psi0 : basis_state(d, 0);
  if (std::abs(norm_of(ref) - 1.0) > 1e-10) {
    throw validation_error("reference state must be normalized");
  }
  Operator target = reps::sym_projector(t, d);

  DesignReport report;
  report.family = family;
  report.t = t;
  report.d = d;
  report.mode = mode;

  if (mode == Mode::exact) {
    wg::CommutantBasis basis = wg::build_basis(family, t, d);
    Operator x = rank_one(ref, d, t);
    wg::TwirlResult tw = wg::twirl(x, basis);
    report.distance = frobenius_distance(tw.op, target);
    report.tolerance = 1e-10;
  } else {
    if (n_samples < 1) throw validation_error("monte_carlo mode requires n_samples >= 1");
    sampling::EnsembleSpec spec{family, d, seed, 0};
    Operator x = rank_one(ref, d, t);
    Operator emp = wg::mc_twirl(x, spec, t, n_samples, workers);
    report.distance = frobenius_distance(emp, target);
    report.samples = n_samples;
    report.tolerance = tol_factor / std::sqrt(static_cast<double>(n_samples));
  }
  report.verdict = report.distance <= report.tolerance;
  return report;
}

MixedGapReport mixed_state_gap(double lambda0, int d, bool partner_embedding) {
  if (d < 2 || d % 2 != 0) throw validation_error("mixed_state_gap requires even d >= 2");
  if (lambda0 < 0.0 || lambda0 > 1.0) {
    throw validation_error("lambda0 must lie in [0, 1]");
  }

  MixedGapReport report;
  report.lambda0 = lambda0;
  report.lambda1 = 1.0 - lambda0;
  report.d = d;

  std::vector<cplx> v0 = basis_state(d, 0);
  std::vector<cplx> v1 = basis_state(d, partner_embedding ? d / 2 : 1);

  Operator rho = Operator::dense_zero(d, 1);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      rho.a[static_cast<std::size_t>(r) * d + c] =
          lambda0 * v0[r] * std::conj(v0[c]) + report.lambda1 * v1[r] * std::conj(v1[c]);
    }
  }
  Operator rho2 = kron(rho, rho);

  wg::CommutantBasis basis_u = wg::build_basis(GroupFamily::Unitary, 2, d);
  wg::CommutantBasis basis_sp = wg::build_basis(GroupFamily::Symplectic, 2, d);
  wg::TwirlResult tw_u = wg::twirl(rho2, basis_u);
  wg::TwirlResult tw_sp = wg::twirl(rho2, basis_sp);
  report.coeffs_u = tw_u.coeffs;
  report.coeffs_sp = tw_sp.coeffs;
  report.gap = frobenius_distance(tw_u.op, tw_sp.op);

  if (d >= 4) {
    report.closed_form_applicable = true;
    report.closed_u_residual = frobenius_distance(wg::twirl2_unitary_closed(rho2, d), tw_u.op);
    report.closed_sp_residual =
        frobenius_distance(wg::twirl2_symplectic_closed(rho2, d), tw_sp.op);
  }
  return report;
}

}  // namespace designlab::designs
