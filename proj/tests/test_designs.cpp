#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "designlab/designs.hpp"
#include "designlab/reps.hpp"

using namespace designlab;
using designs::Mode;

TEST_CASE("lemma1 residuals: hand-checked small cases") {
  std::vector<cplx> zero2 = designs::basis_state(2, 0);
  std::vector<cplx> psi00{cplx{1, 0}, cplx{0, 0}};
  auto rows = designs::annihilation_residuals(2, 2, psi00);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    if (!row.is_perm) {
      CHECK(row.state_left < 1e-12);
      CHECK(row.state_right < 1e-12);
      CHECK(row.proj_left < 1e-12);
      CHECK(row.proj_right < 1e-12);
    }
  }
  // The swap diagram fixes |00><00| and has residual exactly 1.
  brauer::Pairing swap = brauer::from_permutation({1, 0});
  for (const auto& row : rows) {
    if (row.diagram == swap) {
      CHECK(row.state_left == doctest::Approx(1.0));
      CHECK(row.state_right == doctest::Approx(1.0));
    }
  }

  CHECK_THROWS_AS(designs::annihilation_residuals(2, 2, {cplx{2.0, 0.0}, cplx{0.0, 0.0}}),
                  validation_error);
  CHECK_THROWS_AS(designs::annihilation_residuals(2, 3, {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}}),
                  validation_error);
}

TEST_CASE("lemma1 residuals vanish on non-permutation diagrams") {
  for (int t : {2, 3}) {
    for (int d : {2, 4}) {
      CounterRng rng(500 + 10 * t + d, 0);
      for (int rep = 0; rep < 2; ++rep) {
        std::vector<cplx> psi = designs::random_state(d, rng);
        auto rows = designs::annihilation_residuals(t, d, psi);
        int non_perm = 0;
        for (const auto& row : rows) {
          if (row.is_perm) {
            CHECK(row.state_left > 0.9);  // unitarily rotated rank-one, norm 1
          } else {
            ++non_perm;
            CHECK(row.state_left < 1e-12);
            CHECK(row.state_right < 1e-12);
            CHECK(row.proj_left < 1e-12);
            CHECK(row.proj_right < 1e-12);
          }
        }
        if (t == 3) CHECK(non_perm == 9);
      }
    }
  }
}

TEST_CASE("exact state-design distances are zero for both families") {
  for (auto [t, d] : std::vector<std::pair<int, int>>{{1, 4}, {2, 2}, {2, 4}, {2, 6}, {3, 4}}) {
    auto rep = designs::state_design_test(GroupFamily::Symplectic, t, d, Mode::exact);
    CHECK(rep.distance <= 1e-10);
    CHECK(rep.verdict);
  }
  for (auto [t, d] : std::vector<std::pair<int, int>>{{2, 4}, {3, 4}, {2, 3}}) {
    auto rep = designs::state_design_test(GroupFamily::Unitary, t, d, Mode::exact);
    CHECK(rep.distance <= 1e-10);
    CHECK(rep.verdict);
  }
}

TEST_CASE("design distance does not depend on the reference state") {
  auto base = designs::state_design_test(GroupFamily::Symplectic, 2, 4, Mode::exact);
  CounterRng rng(909, 0);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<cplx> psi = designs::random_state(4, rng);
    auto r = designs::state_design_test(GroupFamily::Symplectic, 2, 4, Mode::exact, 0, 0, &psi);
    CHECK(std::abs(r.distance - base.distance) < 1e-10);
  }
}

TEST_CASE("both proof routes produce the same twirl output") {
  // Route 1: pseudo-inverse coefficients. Route 2: the overlap vector has
  // support only on permutations, which forces the output onto the
  // symmetric projector directly.
  for (auto [t, d] : std::vector<std::pair<int, int>>{{2, 4}, {3, 4}, {2, 6}}) {
    wg::CommutantBasis basis = wg::build_basis(GroupFamily::Symplectic, t, d);
    CounterRng rng(4242 + t + d, 0);
    std::vector<cplx> psi = designs::random_state(d, rng);
    std::vector<cplx> psit = tensor_power(psi, t);
    Operator x = Operator::dense_zero(d, t);
    for (std::size_t r = 0; r < x.dim; ++r) {
      for (std::size_t c = 0; c < x.dim; ++c) x.a[r * x.dim + c] = psit[r] * std::conj(psit[c]);
    }
    Operator route1 = wg::twirl(x, basis).op;

    std::vector<cplx> b = wg::overlap_vector(x, basis);
    double off_perm = 0.0;
    for (std::size_t i = basis.perm_count; i < b.size(); ++i) {
      off_perm = std::max(off_perm, std::abs(b[i]));
    }
    REQUIRE(off_perm < 1e-12);
    Operator route2 = reps::sym_projector(t, d);

    CHECK(frobenius_distance(route1, route2) < 1e-10);
  }
}

TEST_CASE("monte carlo design test converges") {
  const std::int64_t n = 20000;
  auto rep = designs::state_design_test(GroupFamily::Symplectic, 2, 4, Mode::monte_carlo, n, 31);
  CHECK(rep.samples == n);
  CHECK(rep.tolerance == doctest::Approx(5.0 / std::sqrt(static_cast<double>(n))));
  CHECK(rep.verdict);

  // Doubling the sample count does not increase the median distance.
  std::vector<double> d1, d2;
  for (int k = 0; k < 10; ++k) {
    d1.push_back(designs::state_design_test(GroupFamily::Symplectic, 2, 4, Mode::monte_carlo,
                                            500, 1000 + static_cast<std::uint64_t>(k) * 64)
                     .distance);
    d2.push_back(designs::state_design_test(GroupFamily::Symplectic, 2, 4, Mode::monte_carlo,
                                            1000, 5000 + static_cast<std::uint64_t>(k) * 64)
                     .distance);
  }
  std::sort(d1.begin(), d1.end());
  std::sort(d2.begin(), d2.end());
  CHECK(d2[5] <= d1[5]);
}

TEST_CASE("rank-two mixed states split the two ensembles") {
  // Pure edge: lambda0 = 1 collapses the gap.
  auto pure = designs::mixed_state_gap(1.0, 4);
  CHECK(pure.gap <= 1e-10);
  CHECK(pure.closed_form_applicable);
  CHECK(pure.closed_u_residual <= 1e-10);
  CHECK(pure.closed_sp_residual <= 1e-10);

  // Balanced rank-two state, components on the first two basis vectors:
  // gap = 1/sqrt(480).
  auto mixed = designs::mixed_state_gap(0.5, 4);
  CHECK(mixed.gap > 1e-3);
  CHECK(mixed.gap == doctest::Approx(1.0 / std::sqrt(480.0)).epsilon(1e-10));
  CHECK(mixed.closed_u_residual <= 1e-10);
  CHECK(mixed.closed_sp_residual <= 1e-10);

  // Omega-partner embedding: gap = 1/sqrt(120), and the symplectic
  // coefficients take the substituted values (1/20, 1/40, -1/40).
  auto partner = designs::mixed_state_gap(0.5, 4, true);
  CHECK(partner.gap == doctest::Approx(1.0 / std::sqrt(120.0)).epsilon(1e-10));
  REQUIRE(partner.coeffs_sp.size() == 3);
  CHECK(partner.coeffs_sp[0] == doctest::Approx(1.0 / 20.0).epsilon(1e-10));
  CHECK(partner.coeffs_sp[1] == doctest::Approx(1.0 / 40.0).epsilon(1e-10));
  CHECK(partner.coeffs_sp[2] == doctest::Approx(-1.0 / 40.0).epsilon(1e-10));
  CHECK(partner.closed_sp_residual <= 1e-10);

  // Closed forms agree with the generic path at d = 6 as well.
  auto d6 = designs::mixed_state_gap(0.3, 6);
  CHECK(d6.closed_u_residual <= 1e-10);
  CHECK(d6.closed_sp_residual <= 1e-10);
  CHECK(d6.gap > 1e-3);

  // d = 2 runs through the pseudo-inverse only.
  auto d2 = designs::mixed_state_gap(0.5, 2);
  CHECK_FALSE(d2.closed_form_applicable);

  CHECK_THROWS_AS(designs::mixed_state_gap(1.5, 4), validation_error);
  CHECK_THROWS_AS(designs::mixed_state_gap(0.5, 5), validation_error);
}
