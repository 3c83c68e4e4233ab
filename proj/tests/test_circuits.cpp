#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "designlab/circuits.hpp"
#include "designlab/kernels.hpp"
#include "designlab/linalg.hpp"
#include "designlab/rng.hpp"

using namespace designlab;
using circuits::ArchStyle;
using circuits::BrickArchitecture;
using circuits::MomentOperator;

TEST_CASE("brick layout and gate families") {
  CHECK(circuits::params_per_gate(GroupFamily::Unitary) == 15);
  CHECK(circuits::params_per_gate(GroupFamily::Orthogonal) == 6);
  CHECK(circuits::params_per_gate(GroupFamily::Symplectic) == 10);

  auto u4 = BrickArchitecture::make(4, ArchStyle::unitary);
  REQUIRE(u4.odd_gates.size() == 2);
  REQUIRE(u4.even_gates.size() == 1);
  CHECK(u4.odd_gates[0].a == 1);
  CHECK(u4.odd_gates[1].a == 3);
  CHECK(u4.even_gates[0].a == 2);
  for (const auto& g : u4.odd_gates) CHECK(g.fam == GroupFamily::Unitary);

  auto s5 = BrickArchitecture::make(5, ArchStyle::symplectic);
  REQUIRE(s5.odd_gates.size() == 2);
  REQUIRE(s5.even_gates.size() == 2);
  CHECK(s5.odd_gates[0].fam == GroupFamily::Symplectic);   // touches qubit 1
  CHECK(s5.odd_gates[1].fam == GroupFamily::Orthogonal);
  CHECK(s5.even_gates[0].fam == GroupFamily::Orthogonal);
  CHECK(s5.even_gates[1].fam == GroupFamily::Orthogonal);

  CHECK_THROWS_AS(BrickArchitecture::make(1, ArchStyle::unitary), validation_error);
  CHECK_THROWS_AS(BrickArchitecture::make(7, ArchStyle::unitary), budget_error);
}

TEST_CASE("single-gate layers are projectors with the commutant rank") {
  MomentOperator mu(BrickArchitecture::make(2, ArchStyle::unitary));
  CHECK(mu.gate_ranks() == std::vector<int>{2});
  CHECK(mu.fixed_subspace().size() == 2);

  // Dense spectrum: eigenvalues in {0, 1}, multiplicity of 1 = rank.
  auto dense = mu.materialize_dense();
  auto eigs = herm_eigenvalues(256, dense);
  int ones = 0;
  for (double v : eigs) {
    bool near0 = std::abs(v) < 1e-10;
    bool near1 = std::abs(v - 1.0) < 1e-10;
    CHECK((near0 || near1));
    if (near1) ++ones;
  }
  CHECK(ones == 2);

  MomentOperator ms(BrickArchitecture::make(2, ArchStyle::symplectic));
  CHECK(ms.gate_ranks() == std::vector<int>{3});
  CHECK(ms.fixed_subspace().size() == 3);
  auto dense_s = ms.materialize_dense();
  auto eigs_s = herm_eigenvalues(256, dense_s);
  int ones_s = 0;
  for (double v : eigs_s) {
    CHECK((std::abs(v) < 1e-10 || std::abs(v - 1.0) < 1e-10));
    if (std::abs(v - 1.0) < 1e-10) ++ones_s;
  }
  CHECK(ones_s == 3);
}

TEST_CASE("single-gate spectral gap is exactly zero") {
  MomentOperator mo(BrickArchitecture::make(2, ArchStyle::unitary));
  auto gap = circuits::spectral_gap(mo, 1e-10, 100);
  CHECK(gap.converged);
  CHECK(std::abs(gap.lambda) < 1e-10);
}

TEST_CASE("fixed subspace vectors are invariant under the layer") {
  for (int n : {2, 3, 4}) {
    for (ArchStyle style : {ArchStyle::unitary, ArchStyle::symplectic}) {
      MomentOperator mo(BrickArchitecture::make(n, style));
      for (const auto& f : mo.fixed_subspace()) {
        std::vector<cplx> v = f;
        mo.apply_layer(v);
        kern::axpy(v.size(), cplx{-1.0, 0.0}, f.data(), v.data());
        CHECK(vec_norm(v) < 1e-10);
      }
    }
  }
}

TEST_CASE("layer spectra stay inside [0, 1]") {
  for (int n : {3, 4}) {
    for (ArchStyle style : {ArchStyle::unitary, ArchStyle::symplectic}) {
      MomentOperator mo(BrickArchitecture::make(n, style));
      double top = circuits::top_eigenvalue(mo);
      CHECK(top <= 1.0 + 1e-10);
      CHECK(std::abs(top - 1.0) < 1e-8);  // the fixed subspace is nonempty
      CHECK(circuits::min_quadratic_form(mo, 25) > -1e-10);
    }
  }
}

TEST_CASE("sampled layers average to the exact moment operator") {
  const std::int64_t n_samples = 10000;
  for (ArchStyle style : {ArchStyle::unitary, ArchStyle::symplectic}) {
    BrickArchitecture arch = BrickArchitecture::make(3, style);
    MomentOperator mo(arch);
    CounterRng rng(616, 0);
    std::vector<cplx> v(mo.dim());
    for (auto& x : v) x = rng.next_cgaussian();
    vec_normalize(v);

    std::vector<cplx> exact = v;
    mo.apply_layer(exact);

    std::vector<cplx> acc(mo.dim(), cplx{0.0, 0.0});
    auto samplers = circuits::make_gate_samplers(arch, 99, 0);
    for (std::int64_t s = 0; s < n_samples; ++s) {
      std::vector<cplx> w = v;
      circuits::apply_sampled_layer(arch, w, samplers);
      kern::axpy(acc.size(), cplx{1.0, 0.0}, w.data(), acc.data());
    }
    kern::scal(acc.size(), cplx{1.0 / static_cast<double>(n_samples), 0.0}, acc.data());

    kern::axpy(acc.size(), cplx{-1.0, 0.0}, exact.data(), acc.data());
    CHECK(vec_norm(acc) < 5.0 / std::sqrt(static_cast<double>(n_samples)));
  }
}

TEST_CASE("small brickwork gaps are reproducible and inside (0, 1)") {
  MomentOperator mo(BrickArchitecture::make(3, ArchStyle::unitary));
  auto g1 = circuits::spectral_gap(mo, 1e-9, 3000, 21);
  auto g2 = circuits::spectral_gap(mo, 1e-9, 3000, 21);
  CHECK(g1.converged);
  CHECK(g1.lambda == g2.lambda);
  CHECK(g1.lambda > 0.0);
  CHECK(g1.lambda < 1.0);
  MESSAGE("unitary n=3 layer gap: ", g1.lambda);

  MomentOperator ms(BrickArchitecture::make(3, ArchStyle::symplectic));
  auto gs = circuits::spectral_gap(ms, 1e-9, 3000, 21);
  CHECK(gs.converged);
  CHECK(gs.lambda > 0.0);
  CHECK(gs.lambda < 1.0);
  MESSAGE("symplectic n=3 layer gap: ", gs.lambda);
}

TEST_CASE("parameter ratio arithmetic") {
  // log(1/0.64)/log(1/0.6461) * 6/15 = 0.40869 (to the printed precision).
  CHECK(circuits::parameter_ratio(0.64, 0.6461, 15, 6) ==
        doctest::Approx(0.40869).epsilon(5e-4));
  CHECK(circuits::parameter_ratio(0.5, 0.5, 7, 7) == doctest::Approx(1.0));
  CHECK(circuits::parameter_ratio(0.64, 0.6461, 15, 15) ==
        doctest::Approx(1.02172).epsilon(5e-4));
  // Scale invariance in the per-gate counts.
  CHECK(circuits::parameter_ratio(0.64, 0.6461, 15, 6) ==
        doctest::Approx(circuits::parameter_ratio(0.64, 0.6461, 45, 18)));
  CHECK_THROWS_AS(circuits::parameter_ratio(1.2, 0.5, 1, 1), validation_error);
  CHECK_THROWS_AS(circuits::parameter_ratio(0.5, 0.0, 1, 1), validation_error);
}

TEST_CASE("design depth thresholds") {
  CHECK(circuits::design_depth(0.5, 0.5, 1) == 2);   // (1/2)^L <= 1/4
  CHECK(circuits::design_depth(1.0 / 2, 1.0, 0) == 0);
  // ceil((log 100 + 8 log 2)/log(1/0.64))
  long expect = static_cast<long>(
      std::ceil((std::log(100.0) + 8.0 * std::log(2.0)) / std::log(1.0 / 0.64)));
  CHECK(circuits::design_depth(0.64, 0.01, 8) == expect);
  CHECK(expect == 23);
  // Exactness at the boundary: lambda^L <= target and lambda^{L-1} > target.
  for (double lam : {0.3, 0.64, 0.9}) {
    long depth = circuits::design_depth(lam, 0.01, 4);
    CHECK(std::pow(lam, static_cast<double>(depth)) <= 0.01 / 16.0 + 1e-15);
    CHECK(std::pow(lam, static_cast<double>(depth - 1)) > 0.01 / 16.0);
  }
  CHECK_THROWS_AS(circuits::design_depth(0.0, 0.5, 1), validation_error);
  CHECK_THROWS_AS(circuits::design_depth(0.5, 0.0, 1), validation_error);
}
