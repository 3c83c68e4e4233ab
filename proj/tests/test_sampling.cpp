#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "designlab/sampling.hpp"
#include "designlab/weingarten.hpp"
#include "test_util.hpp"

using namespace designlab;
using sampling::EnsembleSpec;
using sampling::HaarSampler;

TEST_CASE("samplers are deterministic per (seed, stream)") {
  EnsembleSpec spec{GroupFamily::Unitary, 4, 2024, 3};
  HaarSampler a(spec), b(spec);
  for (int i = 0; i < 3; ++i) {
    auto ua = a.next();
    auto ub = b.next();
    CHECK(ua == ub);  // bit-identical
  }
  EnsembleSpec other = spec;
  other.stream_id = 4;
  HaarSampler c(other);
  CHECK(a.next() != c.next());
}

TEST_CASE("unitary samples are unitary") {
  EnsembleSpec spec{GroupFamily::Unitary, 6, 5, 0};
  HaarSampler s(spec);
  for (int i = 0; i < 20; ++i) {
    CHECK(sampling::unitarity_residual(s.next(), 6) < 1e-12);
  }
  CHECK_THROWS_AS(sampling::haar_unitary(EnsembleSpec{GroupFamily::Symplectic, 4, 1, 0}),
                  validation_error);
}

TEST_CASE("symplectic samples satisfy the form constraint") {
  for (int d : {2, 4, 6, 8}) {
    EnsembleSpec spec{GroupFamily::Symplectic, d, 7, 0};
    HaarSampler s(spec);
    for (int i = 0; i < 10; ++i) {
      auto u = s.next();
      CHECK(sampling::unitarity_residual(u, d) < 1e-12);
      CHECK(sampling::symplectic_residual(u, d) < 1e-12);
      CHECK(sampling::quaternionic_residual(u, d) < 1e-12);
    }
  }
  CHECK_THROWS_AS(sampling::haar_symplectic(EnsembleSpec{GroupFamily::Symplectic, 3, 1, 0}),
                  validation_error);
}

TEST_CASE("orthogonal samples are special orthogonal") {
  EnsembleSpec spec{GroupFamily::Orthogonal, 4, 11, 0};
  HaarSampler s(spec);
  for (int i = 0; i < 20; ++i) {
    auto u = s.next();
    double max_imag = 0.0;
    for (const cplx& v : u) max_imag = std::max(max_imag, std::abs(v.imag()));
    CHECK(max_imag == 0.0);
    CHECK(sampling::unitarity_residual(u, 4) < 1e-12);

    RMatrix r(4, 4);
    for (int i2 = 0; i2 < 4; ++i2) {
      for (int j = 0; j < 4; ++j) r(i2, j) = u[static_cast<std::size_t>(i2) * 4 + j].real();
    }
    CHECK(det_sign(r) == 1);
  }
}

TEST_CASE("first-moment twirl matches tr(X) I / d") {
  // t = 1 Weingarten limit as the statistical oracle for all three samplers.
  const int d = 4;
  const std::int64_t n = 20000;
  CounterRng xr(31, 0);
  Operator x = testutil::random_hermitian(d, 1, xr);
  Operator target = Operator::identity(d, 1).to_dense();
  scale(target, trace(x) / static_cast<double>(d));

  for (GroupFamily fam :
       {GroupFamily::Unitary, GroupFamily::Symplectic, GroupFamily::Orthogonal}) {
    Operator x_in = x;
    if (fam == GroupFamily::Orthogonal) {
      // real symmetric input for the real ensemble
      for (auto& v : x_in.a) v = cplx{v.real(), 0.0};
      Operator xt = dagger(x_in).to_dense();
      add_scaled(x_in, cplx{1.0, 0.0}, xt);
      scale(x_in, cplx{0.5, 0.0});
    }
    Operator tgt = Operator::identity(d, 1).to_dense();
    scale(tgt, trace(x_in) / static_cast<double>(d));
    EnsembleSpec spec{fam, d, 202, 0};
    Operator emp = wg::mc_twirl(x_in, spec, 1, n);
    double err = frobenius_distance(emp, tgt);
    CHECK(err < 5.0 * frobenius_norm(x_in) / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("left invariance of the symplectic sampler") {
  const int d = 4;
  const std::int64_t n = 8000;
  EnsembleSpec vspec{GroupFamily::Symplectic, d, 555, 9};
  Operator v = sampling::haar_symplectic(vspec);

  CounterRng xr(32, 0);
  Operator x = testutil::random_hermitian(d, 1, xr);

  EnsembleSpec spec{GroupFamily::Symplectic, d, 77, 0};
  Operator plain = wg::mc_twirl(x, spec, 1, n);

  // Same samples, left-multiplied by the fixed V.
  sampling::HaarSampler sampler(spec);
  Operator acc = Operator::dense_zero(d, 1);
  std::vector<sampling::HaarSampler> streams;
  const std::int64_t chunk = 4096;
  for (std::int64_t s = 0; s * chunk < n; ++s) {
    EnsembleSpec ss = spec;
    ss.stream_id = spec.stream_id + static_cast<std::uint64_t>(s);
    streams.emplace_back(ss);
  }
  std::int64_t taken = 0;
  for (std::size_t s = 0; s < streams.size(); ++s) {
    std::int64_t hi = std::min<std::int64_t>(chunk, n - taken);
    for (std::int64_t i = 0; i < hi; ++i) {
      Operator u = matmul(v.to_dense(), Operator::from_dense(d, 1, streams[s].next()));
      add_scaled(acc, cplx{1.0, 0.0}, matmul_dagger(matmul(u, x.to_dense()), u));
    }
    taken += hi;
  }
  scale(acc, cplx{1.0 / static_cast<double>(n), 0.0});

  double stat = 6.0 * frobenius_norm(x) / std::sqrt(static_cast<double>(n));
  CHECK(frobenius_distance(plain, acc) < 2.0 * stat);
}
