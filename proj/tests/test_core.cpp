#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "designlab/brauer.hpp"
#include "designlab/json_writer.hpp"
#include "designlab/kernels.hpp"
#include "designlab/rng.hpp"

using namespace designlab;
using brauer::Pairing;

namespace {

// Independent enumeration of perfect matchings: the partner of the largest
// point is chosen among the remaining ones, then the rest recurses.
void oracle_matchings(std::vector<int> points, std::vector<std::pair<int, int>>& acc,
                      int t, std::vector<Pairing>& out) {
  if (points.empty()) {
    out.push_back(brauer::make_pairing(t, acc));
    return;
  }
  int last = points.back();
  points.pop_back();
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::vector<int> rest = points;
    rest.erase(rest.begin() + static_cast<long>(k));
    acc.emplace_back(points[k], last);
    oracle_matchings(rest, acc, t, out);
    acc.pop_back();
  }
}

std::vector<Pairing> oracle_enumerate(int t) {
  std::vector<int> pts(2 * t);
  for (int i = 0; i < 2 * t; ++i) pts[i] = i + 1;
  std::vector<std::pair<int, int>> acc;
  std::vector<Pairing> out;
  oracle_matchings(pts, acc, t, out);
  return out;
}

long double_factorial(int m) {
  long v = 1;
  for (int k = m; k > 1; k -= 2) v *= k;
  return v;
}

}  // namespace

TEST_CASE("kernel backends agree with the scalar reference") {
  const kern::Backend initial = kern::active_backend();
  std::vector<kern::Backend> simd;
  for (kern::Backend b : {kern::Backend::avx2, kern::Backend::neon}) {
    if (kern::backend_supported(b)) simd.push_back(b);
  }
  CounterRng rng(42, 0);
  for (std::size_t n : {1u, 2u, 3u, 7u, 16u, 255u, 256u, 1000u}) {
    std::vector<cplx> x(n), y(n);
    for (auto& v : x) v = rng.next_cgaussian();
    for (auto& v : y) v = rng.next_cgaussian();
    cplx alpha = rng.next_cgaussian();

    kern::set_backend(kern::Backend::scalar);
    std::vector<cplx> y_ref = y;
    kern::axpy(n, alpha, x.data(), y_ref.data());
    cplx dot_ref = kern::dotc(n, x.data(), y.data());
    double nrm_ref = kern::nrm2sq(n, x.data());
    std::vector<cplx> s_ref = x;
    kern::scal(n, alpha, s_ref.data());

    for (kern::Backend b : simd) {
      kern::set_backend(b);
      std::vector<cplx> y_simd = y;
      kern::axpy(n, alpha, x.data(), y_simd.data());
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(y_simd[i] - y_ref[i]) < 1e-12);
      }
      CHECK(std::abs(kern::dotc(n, x.data(), y.data()) - dot_ref) <
            1e-12 * (1.0 + std::abs(dot_ref)));
      CHECK(std::abs(kern::nrm2sq(n, x.data()) - nrm_ref) < 1e-12 * (1.0 + nrm_ref));
      std::vector<cplx> s_simd = x;
      kern::scal(n, alpha, s_simd.data());
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(s_simd[i] - s_ref[i]) < 1e-12);
      }
    }
  }
  kern::set_backend(initial);
}

TEST_CASE("counter rng is reproducible and stream-separated") {
  CounterRng a(123, 5), b(123, 5), c(123, 6);
  bool identical = true, distinct = false;
  for (int i = 0; i < 64; ++i) {
    std::uint64_t va = a.next_u64();
    if (va != b.next_u64()) identical = false;
    if (va != c.next_u64()) distinct = true;
  }
  CHECK(identical);
  CHECK(distinct);

  CounterRng g(7, 0);
  double mean = 0.0, var = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double x = g.next_gaussian();
    mean += x;
    var += x * x;
  }
  mean /= n;
  var = var / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("pairing counts match the independent enumerator") {
  for (int t = 1; t <= 6; ++t) {
    auto ours = brauer::enumerate_pairings(t);
    auto oracle = oracle_enumerate(t);
    CHECK(static_cast<long>(ours.size()) == double_factorial(2 * t - 1));
    CHECK(ours.size() == oracle.size());

    std::set<std::string> lhs, rhs;
    for (const auto& p : ours) lhs.insert(brauer::to_string(p));
    for (const auto& p : oracle) rhs.insert(brauer::to_string(p));
    CHECK(lhs == rhs);
  }
  CHECK(brauer::enumerate_pairings(1).size() == 1);
  CHECK(brauer::enumerate_pairings(2).size() == 3);
  CHECK(brauer::enumerate_pairings(3).size() == 15);
  CHECK(brauer::enumerate_pairings(4).size() == 105);
  CHECK_THROWS_AS(brauer::enumerate_pairings(0), budget_error);
  CHECK_THROWS_AS(brauer::enumerate_pairings(9), budget_error);
}

TEST_CASE("permutations come first in enumeration order") {
  for (int t : {2, 3, 4}) {
    auto all = brauer::enumerate_pairings(t);
    long fact = 1;
    for (int k = 2; k <= t; ++k) fact *= k;
    for (long i = 0; i < static_cast<long>(all.size()); ++i) {
      CHECK(brauer::is_permutation(all[i]) == (i < fact));
    }
    CHECK(all[0] == brauer::identity_pairing(t));
  }
  auto all3 = brauer::enumerate_pairings(3);
  int n_perms = 0;
  for (const auto& p : all3) n_perms += brauer::is_permutation(p) ? 1 : 0;
  CHECK(n_perms == 6);
}

TEST_CASE("composition unit laws and loop counting") {
  for (int t : {1, 2, 3}) {
    Pairing id = brauer::identity_pairing(t);
    for (const auto& sigma : brauer::enumerate_pairings(t)) {
      auto left = brauer::compose(id, sigma);
      auto right = brauer::compose(sigma, id);
      CHECK(left.diagram == sigma);
      CHECK(left.loop_power == 0);
      CHECK(right.diagram == sigma);
      CHECK(right.loop_power == 0);
    }
  }

  Pairing swap = brauer::from_permutation({1, 0});
  auto swap2 = brauer::compose(swap, swap);
  CHECK(swap2.diagram == brauer::identity_pairing(2));
  CHECK(swap2.loop_power == 0);

  Pairing cupcap = brauer::make_pairing(2, {{1, 2}, {3, 4}});
  auto cc2 = brauer::compose(cupcap, cupcap);
  CHECK(cc2.diagram == cupcap);
  CHECK(cc2.loop_power == 1);

  CHECK_THROWS_AS(brauer::compose(swap, brauer::identity_pairing(3)), validation_error);
}

TEST_CASE("composition is associative") {
  for (int t : {2, 3}) {
    auto all = brauer::enumerate_pairings(t);
    for (const auto& a : all) {
      for (const auto& b : all) {
        auto ab = brauer::compose(a, b);
        for (const auto& c : all) {
          auto bc = brauer::compose(b, c);
          auto left = brauer::compose(ab.diagram, c);
          auto right = brauer::compose(a, bc.diagram);
          CHECK(left.diagram == right.diagram);
          CHECK(left.loop_power + ab.loop_power == right.loop_power + bc.loop_power);
        }
      }
    }
  }
  // Random triples at t = 4.
  auto all4 = brauer::enumerate_pairings(4);
  CounterRng rng(9, 0);
  for (int k = 0; k < 300; ++k) {
    const auto& a = all4[rng.next_u64() % all4.size()];
    const auto& b = all4[rng.next_u64() % all4.size()];
    const auto& c = all4[rng.next_u64() % all4.size()];
    auto ab = brauer::compose(a, b);
    auto bc = brauer::compose(b, c);
    auto left = brauer::compose(ab.diagram, c);
    auto right = brauer::compose(a, bc.diagram);
    CHECK(left.diagram == right.diagram);
    CHECK(left.loop_power + ab.loop_power == right.loop_power + bc.loop_power);
  }
}

TEST_CASE("propagating number and the permutation split") {
  CHECK(brauer::propagating_number(brauer::identity_pairing(3)) == 3);
  CHECK(brauer::propagating_number(brauer::make_pairing(2, {{1, 2}, {3, 4}})) == 0);
  CHECK(brauer::propagating_number(brauer::make_pairing(3, {{1, 2}, {3, 6}, {4, 5}})) == 1);

  for (int t : {1, 2, 3, 4}) {
    for (const auto& sigma : brauer::enumerate_pairings(t)) {
      int pr = brauer::propagating_number(sigma);
      CHECK((t - pr) % 2 == 0);
      CHECK(brauer::is_permutation(sigma) == (pr == t));
      if (brauer::is_permutation(sigma)) {
        auto inv = brauer::compose(sigma, brauer::transpose(sigma));
        CHECK(inv.diagram == brauer::identity_pairing(t));
        CHECK(inv.loop_power == 0);
      }
    }
  }

  // pr(a*b) <= min(pr(a), pr(b)), exhaustive at t = 3.
  auto all = brauer::enumerate_pairings(3);
  for (const auto& a : all) {
    for (const auto& b : all) {
      int bound = std::min(brauer::propagating_number(a), brauer::propagating_number(b));
      CHECK(brauer::propagating_number(brauer::compose(a, b).diagram) <= bound);
    }
  }
}

TEST_CASE("composition table closes and r1 is multiplicative") {
  for (int t : {1, 2, 3, 4}) {
    brauer::TableViolation v;
    CHECK(brauer::composition_table_check(t, &v));
  }
}

TEST_CASE("diagram text format round-trips bit-exactly") {
  for (int t : {1, 2, 3, 4}) {
    for (const auto& p : brauer::enumerate_pairings(t)) {
      std::string s = brauer::to_string(p);
      Pairing q = brauer::parse_pairing(s);
      CHECK(q == p);
      CHECK(brauer::to_string(q) == s);
    }
  }
  CHECK(brauer::parse_pairing("2; (1,2) (3,4)") == brauer::make_pairing(2, {{1, 2}, {3, 4}}));
  CHECK_THROWS_AS(brauer::parse_pairing("2; (1,2)(3"), validation_error);
  CHECK_THROWS_AS(brauer::parse_pairing("2; (1,2)(3,3)"), validation_error);
  CHECK_THROWS_AS(brauer::parse_pairing("junk"), validation_error);
}

TEST_CASE("json writer emits 17-digit round-trippable doubles") {
  JsonWriter w;
  w.begin_object();
  w.key("x").value(0.1);
  w.key("arr").begin_array().value(1).value(true).value("a\"b").end_array();
  w.end_object();
  CHECK(w.str() == "{\"x\":0.10000000000000001,\"arr\":[1,true,\"a\\\"b\"]}");

  CounterRng rng(3, 0);
  for (int i = 0; i < 200; ++i) {
    double x = (rng.next_double() - 0.5) * std::pow(10.0, static_cast<double>(i % 40) - 20.0);
    std::string s = format_double17(x);
    CHECK(std::strtod(s.c_str(), nullptr) == x);
  }
  CHECK(fnv1a64("") == 0xCBF29CE484222325ull);
}
