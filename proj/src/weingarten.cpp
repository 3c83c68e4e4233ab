#include "designlab/weingarten.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "designlab/kernels.hpp"
#include "designlab/reps.hpp"

namespace designlab::wg {

namespace {

constexpr std::int64_t kStreamChunk = 4096;

Operator phi_unsigned(int d) {
  // P_Phi = sum_{ij} |ii><jj|
  std::vector<CooEntry> nz;
  nz.reserve(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      nz.push_back({static_cast<std::uint64_t>(i) * d + i,
                    static_cast<std::uint64_t>(j) * d + j, cplx{1.0, 0.0}});
    }
  }
  return Operator::from_coo(d, 2, std::move(nz));
}

Operator levi_civita_op() {
  // E_{(ij),(kl)} = epsilon_{i j k l} on (C^4)^{x2}; commutes with U x U
  // for U in SO(4) because epsilon transforms with det(U).
  const int d = 4;
  std::vector<CooEntry> nz;
  int perm[4];
  std::iota(perm, perm + 4, 0);
  do {
    std::vector<int> v(perm, perm + 4);
    double sign = brauer::permutation_sign(v);
    // row index from (k,l) = (v[2], v[3]); column from (i,j) = (v[0], v[1]).
    nz.push_back({static_cast<std::uint64_t>(v[2]) * d + v[3],
                  static_cast<std::uint64_t>(v[0]) * d + v[1], cplx{sign, 0.0}});
  } while (std::next_permutation(perm, perm + 4));
  return Operator::from_coo(d, 2, std::move(nz));
}

std::string perm_label(const std::vector<int>& pi) {
  std::string s = "P(";
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(pi[i] + 1);
  }
  return s + ")";
}

void finish_gram(CommutantBasis& basis) {
  const int n = static_cast<int>(basis.ops.size());
  basis.gram = RMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      cplx tij = trace_product(basis.ops[i], basis.ops[j]);
      if (std::abs(tij.imag()) > 1e-9) {
        throw validation_error("commutant Gram matrix has a complex entry");
      }
      basis.gram(i, j) = tij.real();
      basis.gram(j, i) = tij.real();
    }
  }
  basis.gram_pinv = sym_pinv(basis.gram, 1e-10, &basis.rank);
}

}  // namespace

CommutantBasis build_basis(GroupFamily family, int t, int d) {
  if (t < 1) throw validation_error("basis requires t >= 1");
  CommutantBasis basis;
  basis.family = family;
  basis.t = t;
  basis.d = d;

  switch (family) {
    case GroupFamily::Unitary: {
      checked_pow_dim(d, t);
      std::vector<int> pi(t);
      std::iota(pi.begin(), pi.end(), 0);
      do {
        basis.diagrams.push_back(brauer::from_permutation(pi));
        basis.labels.push_back(perm_label(pi));
        basis.ops.push_back(reps::perm_rep(pi, d));
      } while (std::next_permutation(pi.begin(), pi.end()));
      basis.perm_count = static_cast<int>(basis.ops.size());
      break;
    }
    case GroupFamily::Symplectic: {
      if (d % 2 != 0) throw validation_error("symplectic basis requires even d");
      auto diagrams = brauer::enumerate_pairings(t);
      for (const auto& sigma : diagrams) {
        basis.diagrams.push_back(sigma);
        basis.labels.push_back(brauer::to_string(sigma));
        basis.ops.push_back(reps::brauer_rep(sigma, d, reps::BrauerSign::plain));
        if (brauer::is_permutation(sigma)) ++basis.perm_count;
      }
      break;
    }
    case GroupFamily::Orthogonal: {
      if (t > 2) throw validation_error("orthogonal basis supported for t <= 2 only");
      if (d < 3) throw validation_error("orthogonal basis requires d >= 3");
      checked_pow_dim(d, t);
      if (t == 1) {
        basis.labels.push_back("I");
        basis.ops.push_back(Operator::identity(d, 1));
        basis.perm_count = 1;
      } else {
        basis.labels = {"I", "SWAP", "PHI"};
        basis.ops.push_back(Operator::identity(d, 2));
        basis.ops.push_back(reps::perm_rep({1, 0}, d));
        basis.ops.push_back(phi_unsigned(d));
        basis.perm_count = 2;
        if (d == 4) {
          basis.labels.push_back("EPS");
          basis.ops.push_back(levi_civita_op());
        }
      }
      break;
    }
  }
  finish_gram(basis);
  return basis;
}

std::vector<cplx> overlap_vector(const Operator& x, const CommutantBasis& basis) {
  std::vector<cplx> b;
  b.reserve(basis.ops.size());
  for (const auto& p : basis.ops) b.push_back(trace_product(p, x));
  return b;
}

TwirlResult twirl(const Operator& x, const CommutantBasis& basis, bool materialize) {
  std::size_t dim = checked_pow_dim(basis.d, basis.t);
  if (x.dim != dim) throw validation_error("twirl input dimension mismatch");

  std::vector<cplx> b = overlap_vector(x, basis);
  const int n = static_cast<int>(basis.ops.size());
  TwirlResult result;
  result.coeffs.assign(n, 0.0);
  std::vector<double> imag_part(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double re = 0.0, im = 0.0;
    for (int j = 0; j < n; ++j) {
      re += basis.gram_pinv(i, j) * b[j].real();
      im += basis.gram_pinv(i, j) * b[j].imag();
    }
    result.coeffs[i] = re;
    imag_part[i] = im;
    result.max_imag_coeff = std::max(result.max_imag_coeff, std::abs(im));
  }
  result.trace_in = trace(x);

  cplx tr_out{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    tr_out += cplx{result.coeffs[i], imag_part[i]} * trace(basis.ops[i]);
  }
  result.trace_out = tr_out;

  if (materialize) {
    Operator acc = Operator::dense_zero(basis.d, basis.t);
    for (int i = 0; i < n; ++i) {
      add_scaled(acc, cplx{result.coeffs[i], imag_part[i]}, basis.ops[i]);
    }
    result.op = std::move(acc);
    result.materialized = true;
  }
  return result;
}

Operator mc_twirl_with(const Operator& x, int d, int t, std::int64_t n_samples,
                       const std::function<std::vector<cplx>(std::int64_t)>& sample) {
  if (n_samples < 1) throw validation_error("mc_twirl requires at least one sample");
  Operator xd = x.to_dense();
  if (xd.dim != checked_pow_dim(d, t)) throw validation_error("mc_twirl dimension mismatch");
  Operator acc = Operator::dense_zero(d, t);
  for (std::int64_t i = 0; i < n_samples; ++i) {
    Operator u = Operator::from_dense(d, 1, sample(i));
    Operator ut = kron_power(u, t);
    Operator sandwich = matmul_dagger(matmul(ut, xd), ut);
    add_scaled(acc, cplx{1.0, 0.0}, sandwich);
  }
  scale(acc, cplx{1.0 / static_cast<double>(n_samples), 0.0});
  return acc;
}

Operator mc_twirl(const Operator& x, const sampling::EnsembleSpec& spec, int t,
                  std::int64_t n_samples, int workers) {
  if (n_samples < 1) throw validation_error("mc_twirl requires at least one sample");
  Operator xd = x.to_dense();
  std::size_t dim = checked_pow_dim(spec.d, t);
  if (xd.dim != dim) throw validation_error("mc_twirl dimension mismatch");

  const std::int64_t n_streams = (n_samples + kStreamChunk - 1) / kStreamChunk;
  std::vector<Operator> partial(static_cast<std::size_t>(n_streams));

  auto run_stream = [&](std::int64_t s) {
    sampling::EnsembleSpec stream_spec = spec;
    stream_spec.stream_id = spec.stream_id + static_cast<std::uint64_t>(s);
    sampling::HaarSampler sampler(stream_spec);
    std::int64_t lo = s * kStreamChunk;
    std::int64_t hi = std::min(n_samples, lo + kStreamChunk);
    Operator acc = Operator::dense_zero(spec.d, t);
    for (std::int64_t i = lo; i < hi; ++i) {
      Operator u = Operator::from_dense(spec.d, 1, sampler.next());
      Operator ut = kron_power(u, t);
      Operator sandwich = matmul_dagger(matmul(ut, xd), ut);
      add_scaled(acc, cplx{1.0, 0.0}, sandwich);
    }
    partial[static_cast<std::size_t>(s)] = std::move(acc);
  };

  if (workers <= 1 || n_streams == 1) {
    for (std::int64_t s = 0; s < n_streams; ++s) run_stream(s);
  } else {
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
      while (true) {
        std::int64_t s = next.fetch_add(1);
        if (s >= n_streams) break;
        run_stream(s);
      }
    };
    std::vector<std::thread> pool;
    int n_workers = std::min<std::int64_t>(workers, n_streams);
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  Operator acc = Operator::dense_zero(spec.d, t);
  for (std::int64_t s = 0; s < n_streams; ++s) {
    add_scaled(acc, cplx{1.0, 0.0}, partial[static_cast<std::size_t>(s)]);
  }
  scale(acc, cplx{1.0 / static_cast<double>(n_samples), 0.0});
  return acc;
}

Operator twirl2_unitary_closed(const Operator& x2, int d) {
  std::size_t dim = checked_pow_dim(d, 2);
  if (x2.dim != dim) throw validation_error("closed-form twirl expects a two-copy operator");
  Operator swap_op = reps::perm_rep({1, 0}, d);
  cplx b_i = trace(x2);
  cplx b_s = trace_product(swap_op, x2);
  double den = static_cast<double>(d) * d - 1.0;
  cplx c_i = (b_i - b_s / static_cast<double>(d)) / den;
  cplx c_s = (b_s - b_i / static_cast<double>(d)) / den;
  Operator out = Operator::dense_zero(d, 2);
  add_scaled(out, c_i, Operator::identity(d, 2));
  add_scaled(out, c_s, swap_op);
  return out;
}

Operator twirl2_symplectic_closed(const Operator& x2, int d) {
  if (d < 4 || d % 2 != 0) {
    throw validation_error("symplectic closed form requires even d >= 4 (divides by d-2)");
  }
  std::size_t dim = checked_pow_dim(d, 2);
  if (x2.dim != dim) throw validation_error("closed-form twirl expects a two-copy operator");
  Operator swap_op = reps::perm_rep({1, 0}, d);
  Operator phi = reps::brauer_rep(brauer::make_pairing(2, {{1, 2}, {3, 4}}), d);
  cplx b_i = trace(x2);
  cplx b_s = trace_product(swap_op, x2);
  cplx b_p = trace_product(phi, x2);
  double den = static_cast<double>(d) * (d + 1.0) * (d - 2.0);
  double dm1 = static_cast<double>(d) - 1.0;
  cplx c_i = (dm1 * b_i - b_s + b_p) / den;
  cplx c_s = (-b_i + dm1 * b_s - b_p) / den;
  cplx c_p = (b_i - b_s + dm1 * b_p) / den;
  Operator out = Operator::dense_zero(d, 2);
  add_scaled(out, c_i, Operator::identity(d, 2));
  add_scaled(out, c_s, swap_op);
  add_scaled(out, c_p, phi);
  return out;
}

}  // namespace designlab::wg
