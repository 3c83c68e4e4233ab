#include "designlab/circuits.hpp"

#include <algorithm>
#include <cmath>

#include "designlab/kernels.hpp"
#include "designlab/rng.hpp"
#include "designlab/weingarten.hpp"

namespace designlab::circuits {

namespace {

// Bit position of (copy, qubit) in the 4n-bit doubled-space index.
// Copies: 0, 1 = ket copies, 2, 3 = conjugated copies; copy 0 is most
// significant, qubit 1 is the most significant bit within a copy.
inline int bitpos(int n, int copy, int qubit) { return (3 - copy) * n + (n - qubit); }

constexpr int kLocalDim = 256;

GroupFamily local_family(ArchStyle style, int a) {
  if (style == ArchStyle::unitary) return GroupFamily::Unitary;
  return a == 1 ? GroupFamily::Symplectic : GroupFamily::Orthogonal;
}

std::vector<cplx> random_real_vector(std::size_t dim, CounterRng& rng) {
  std::vector<cplx> v(dim);
  for (auto& x : v) x = cplx{rng.next_gaussian(), 0.0};
  vec_normalize(v);
  return v;
}

void deflate(std::vector<cplx>& v, const std::vector<std::vector<cplx>>& basis) {
  for (const auto& f : basis) {
    cplx c = kern::dotc(v.size(), f.data(), v.data());
    kern::axpy(v.size(), -c, f.data(), v.data());
  }
}

void orthonormalize_block(std::vector<std::vector<cplx>>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < i; ++j) {
        cplx c = kern::dotc(xs[j].size(), xs[j].data(), xs[i].data());
        kern::axpy(xs[i].size(), -c, xs[j].data(), xs[i].data());
      }
    }
    vec_normalize(xs[i]);
  }
}

}  // namespace

int params_per_gate(GroupFamily fam) {
  switch (fam) {
    case GroupFamily::Unitary: return 15;
    case GroupFamily::Orthogonal: return 6;
    case GroupFamily::Symplectic: return 10;
  }
  return 0;
}

BrickArchitecture BrickArchitecture::make(int n_qubits, ArchStyle style) {
  if (n_qubits < 2) throw validation_error("brick architecture requires n >= 2");
  if (n_qubits > 6) throw budget_error("brick architecture supported for n <= 6");
  BrickArchitecture arch;
  arch.n_qubits = n_qubits;
  arch.style = style;
  for (int a = 1; a + 1 <= n_qubits; a += 2) {
    arch.odd_gates.push_back({a, local_family(style, a)});
  }
  for (int a = 2; a + 1 <= n_qubits; a += 2) {
    arch.even_gates.push_back({a, local_family(style, a)});
  }
  return arch;
}

MomentOperator::MomentOperator(const BrickArchitecture& arch) : arch_(arch) {
  const int n = arch.n_qubits;
  dim_ = std::size_t{1} << (4 * n);

  auto build_gate = [&](const BrickGate& g) {
    GateCtx ctx;
    ctx.a = g.a;
    ctx.fam = g.fam;
    wg::CommutantBasis basis = wg::build_basis(g.fam, 2, 4);
    ctx.rank = basis.rank;
    ctx.pinv = basis.gram_pinv;
    for (const auto& op : basis.ops) {
      std::vector<cplx> vec(kLocalDim, cplx{0.0, 0.0});
      for (const auto& e : op.nz) vec[e.row * 16 + e.col] = e.val;
      ctx.basis.push_back(std::move(vec));
    }

    // Inner offsets: 8 bits, msb-first
    // [A_a, A_b, B_a, B_b, C_a, C_b, D_a, D_b].
    int pos[8];
    for (int copy = 0; copy < 4; ++copy) {
      pos[2 * copy] = bitpos(n, copy, g.a);
      pos[2 * copy + 1] = bitpos(n, copy, g.a + 1);
    }
    ctx.inner_off.resize(kLocalDim);
    for (int k = 0; k < kLocalDim; ++k) {
      std::uint64_t off = 0;
      for (int bit = 0; bit < 8; ++bit) {
        if (k & (1 << (7 - bit))) off |= std::uint64_t{1} << pos[bit];
      }
      ctx.inner_off[k] = off;
    }

    std::vector<int> rest;
    for (int p = 0; p < 4 * n; ++p) {
      if (std::none_of(pos, pos + 8, [&](int q) { return q == p; })) rest.push_back(p);
    }
    ctx.outer_off.resize(std::size_t{1} << rest.size());
    for (std::size_t o = 0; o < ctx.outer_off.size(); ++o) {
      std::uint64_t off = 0;
      for (std::size_t bit = 0; bit < rest.size(); ++bit) {
        if (o & (std::size_t{1} << bit)) off |= std::uint64_t{1} << rest[bit];
      }
      ctx.outer_off[o] = off;
    }
    return ctx;
  };

  for (const auto& g : arch.odd_gates) odd_.push_back(build_gate(g));
  for (const auto& g : arch.even_gates) even_.push_back(build_gate(g));

  // Fixed subspace: vectorized global commutant operators.
  const std::size_t d = std::size_t{1} << n;
  const std::size_t d2 = d * d;
  std::vector<std::vector<cplx>> fixed;
  {
    std::vector<cplx> vec_id(dim_, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < d2; ++i) vec_id[i * d2 + i] = cplx{1.0, 0.0};
    fixed.push_back(std::move(vec_id));

    std::vector<cplx> vec_swap(dim_, cplx{0.0, 0.0});
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        vec_swap[(a * d + b) * d2 + (b * d + a)] = cplx{1.0, 0.0};
      }
    }
    fixed.push_back(std::move(vec_swap));

    if (arch.style == ArchStyle::symplectic) {
      // |s><s| with s = (1 x Omega) sum |jj>, Omega = omega on qubit 1.
      std::vector<std::size_t> s_idx(d);
      std::vector<double> s_val(d);
      const std::size_t half = d / 2;
      for (std::size_t j = 0; j < d; ++j) {
        bool top = j < half;
        std::size_t partner = top ? j + half : j - half;
        s_idx[j] = j * d + partner;
        s_val[j] = top ? -1.0 : 1.0;
      }
      std::vector<cplx> vec_phi(dim_, cplx{0.0, 0.0});
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
          vec_phi[s_idx[j] * d2 + s_idx[k]] = cplx{s_val[j] * s_val[k], 0.0};
        }
      }
      fixed.push_back(std::move(vec_phi));
    }
  }
  orthonormalize_block(fixed);
  fixed_ = std::move(fixed);
}

void MomentOperator::apply_gate(const GateCtx& g, std::vector<cplx>& psi) const {
  const int nb = static_cast<int>(g.basis.size());
  cplx buf[kLocalDim];
  cplx out[kLocalDim];
  cplx c[8], cp[8];
  for (std::uint64_t base : g.outer_off) {
    for (int k = 0; k < kLocalDim; ++k) buf[k] = psi[base + g.inner_off[k]];
    for (int m = 0; m < nb; ++m) c[m] = kern::dotc(kLocalDim, g.basis[m].data(), buf);
    for (int m = 0; m < nb; ++m) {
      cplx s{0.0, 0.0};
      for (int l = 0; l < nb; ++l) s += g.pinv(m, l) * c[l];
      cp[m] = s;
    }
    std::fill(out, out + kLocalDim, cplx{0.0, 0.0});
    for (int m = 0; m < nb; ++m) kern::axpy(kLocalDim, cp[m], g.basis[m].data(), out);
    for (int k = 0; k < kLocalDim; ++k) psi[base + g.inner_off[k]] = out[k];
  }
}

void MomentOperator::apply_half(bool odd, std::vector<cplx>& psi) const {
  if (psi.size() != dim_) throw validation_error("state dimension mismatch");
  for (const auto& g : (odd ? odd_ : even_)) apply_gate(g, psi);
}

void MomentOperator::apply_layer(std::vector<cplx>& psi) const {
  apply_half(false, psi);
  apply_half(true, psi);
}

void MomentOperator::apply_bab(std::vector<cplx>& psi) const {
  apply_half(false, psi);
  apply_half(true, psi);
  apply_half(false, psi);
}

std::vector<int> MomentOperator::gate_ranks() const {
  std::vector<int> ranks;
  for (const auto& g : odd_) ranks.push_back(g.rank);
  for (const auto& g : even_) ranks.push_back(g.rank);
  return ranks;
}

std::vector<cplx> MomentOperator::materialize_dense() const {
  if (dim_ > 4096) throw budget_error("dense layer materialization supported for dim <= 4096");
  std::vector<cplx> mat(dim_ * dim_, cplx{0.0, 0.0});
  std::vector<cplx> col(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    std::fill(col.begin(), col.end(), cplx{0.0, 0.0});
    col[k] = cplx{1.0, 0.0};
    apply_layer(col);
    for (std::size_t r = 0; r < dim_; ++r) mat[r * dim_ + k] = col[r];
  }
  return mat;
}

MomentOperator layer_moment_operator(const BrickArchitecture& arch) {
  return MomentOperator(arch);
}

GapReport spectral_gap(const MomentOperator& mo, double tol, int max_iter,
                       std::uint64_t seed, int block) {
  if (block < 1 || block > 8) throw validation_error("block size must be in [1, 8]");
  const std::size_t dim = mo.dim();
  CounterRng rng(seed, 0);

  std::vector<std::vector<cplx>> xs;
  for (int i = 0; i < block; ++i) {
    std::vector<cplx> v = random_real_vector(dim, rng);
    deflate(v, mo.fixed_subspace());
    xs.push_back(std::move(v));
  }
  orthonormalize_block(xs);

  GapReport report;
  for (int iter = 1; iter <= max_iter; ++iter) {
    std::vector<std::vector<cplx>> zs;
    zs.reserve(xs.size());
    for (const auto& x : xs) {
      std::vector<cplx> z = x;
      mo.apply_bab(z);
      deflate(z, mo.fixed_subspace());
      zs.push_back(std::move(z));
    }

    // Rayleigh-Ritz on the block; everything is real here.
    RMatrix s(block, block);
    for (int i = 0; i < block; ++i) {
      for (int j = 0; j < block; ++j) {
        s(i, j) = kern::dotc(dim, xs[i].data(), zs[j].data()).real();
      }
    }
    for (int i = 0; i < block; ++i) {
      for (int j = i + 1; j < block; ++j) {
        double avg = 0.5 * (s(i, j) + s(j, i));
        s(i, j) = avg;
        s(j, i) = avg;
      }
    }
    SymEig eig = sym_eig(s);
    double theta = eig.values[block - 1];

    // Residual of the top Ritz pair: ||Z u - theta X u||.
    std::vector<cplx> zu(dim, cplx{0.0, 0.0});
    std::vector<cplx> xu(dim, cplx{0.0, 0.0});
    for (int i = 0; i < block; ++i) {
      cplx w{eig.vectors(i, block - 1), 0.0};
      kern::axpy(dim, w, zs[i].data(), zu.data());
      kern::axpy(dim, w, xs[i].data(), xu.data());
    }
    kern::axpy(dim, cplx{-theta, 0.0}, xu.data(), zu.data());
    double residual = vec_norm(zu);

    report.lambda = theta;
    report.iterations = iter;
    report.residual = residual;
    if (residual <= tol) {
      report.converged = true;
      return report;
    }

    // Rotate the block onto the Ritz vectors (descending) and iterate.
    std::vector<std::vector<cplx>> next;
    next.reserve(block);
    for (int k = block - 1; k >= 0; --k) {
      std::vector<cplx> v(dim, cplx{0.0, 0.0});
      for (int i = 0; i < block; ++i) {
        kern::axpy(dim, cplx{eig.vectors(i, k), 0.0}, zs[i].data(), v.data());
      }
      double nv = vec_norm(v);
      if (nv < 1e-14) {
        v = random_real_vector(dim, rng);
        deflate(v, mo.fixed_subspace());
      }
      next.push_back(std::move(v));
    }
    orthonormalize_block(next);
    xs = std::move(next);
  }
  throw convergence_error("spectral gap iteration did not converge; residual " +
                          std::to_string(report.residual));
}

double top_eigenvalue(const MomentOperator& mo, double tol, int max_iter,
                      std::uint64_t seed) {
  CounterRng rng(seed, 0);
  std::vector<cplx> v = random_real_vector(mo.dim(), rng);
  double theta = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<cplx> w = v;
    mo.apply_bab(w);
    theta = kern::dotc(v.size(), v.data(), w.data()).real();
    std::vector<cplx> r = w;
    kern::axpy(r.size(), cplx{-theta, 0.0}, v.data(), r.data());
    double res = vec_norm(r);
    double nw = vec_norm(w);
    if (nw < 1e-14) return 0.0;
    kern::scal(w.size(), cplx{1.0 / nw, 0.0}, w.data());
    v = std::move(w);
    if (res <= tol) break;
  }
  return theta;
}

double min_quadratic_form(const MomentOperator& mo, int n_vectors, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  double lo = 1.0;
  for (int k = 0; k < n_vectors; ++k) {
    std::vector<cplx> v = random_real_vector(mo.dim(), rng);
    std::vector<cplx> w = v;
    mo.apply_bab(w);
    lo = std::min(lo, kern::dotc(v.size(), v.data(), w.data()).real());
  }
  return lo;
}

std::vector<sampling::HaarSampler> make_gate_samplers(const BrickArchitecture& arch,
                                                      std::uint64_t seed,
                                                      std::uint64_t stream) {
  std::vector<sampling::HaarSampler> samplers;
  std::uint64_t gate_index = 0;
  auto add = [&](const BrickGate& g) {
    sampling::EnsembleSpec spec{g.fam, 4, seed ^ (0xC1C0ull + gate_index * 0x10001ull), stream};
    samplers.emplace_back(spec);
    ++gate_index;
  };
  for (const auto& g : arch.even_gates) add(g);
  for (const auto& g : arch.odd_gates) add(g);
  return samplers;
}

namespace {

// Apply a 4x4 matrix (or its conjugate) on the two qubit slots of one copy.
void apply_local_2q(std::vector<cplx>& psi, int n, int copy, int a,
                    const std::vector<cplx>& u, bool conjugate) {
  const int p_hi = bitpos(n, copy, a);      // qubit a: high local bit
  const int p_lo = bitpos(n, copy, a + 1);  // qubit a+1: low local bit
  const int q0 = std::min(p_hi, p_lo);
  const int q1 = std::max(p_hi, p_lo);
  const std::size_t dim = psi.size();
  const std::size_t count = dim / 4;
  for (std::size_t m = 0; m < count; ++m) {
    std::size_t m2 = ((m >> q0) << (q0 + 1)) | (m & ((std::size_t{1} << q0) - 1));
    std::size_t base = ((m2 >> q1) << (q1 + 1)) | (m2 & ((std::size_t{1} << q1) - 1));
    std::size_t idx[4];
    for (int v = 0; v < 4; ++v) {
      std::size_t x = base;
      if (v & 2) x |= std::size_t{1} << p_hi;
      if (v & 1) x |= std::size_t{1} << p_lo;
      idx[v] = x;
    }
    cplx in[4];
    for (int v = 0; v < 4; ++v) in[v] = psi[idx[v]];
    for (int r = 0; r < 4; ++r) {
      cplx s{0.0, 0.0};
      for (int cidx = 0; cidx < 4; ++cidx) {
        cplx m_rc = u[static_cast<std::size_t>(r) * 4 + cidx];
        if (conjugate) m_rc = std::conj(m_rc);
        s += m_rc * in[cidx];
      }
      psi[idx[r]] = s;
    }
  }
}

}  // namespace

void apply_sampled_layer(const BrickArchitecture& arch, std::vector<cplx>& psi,
                         std::vector<sampling::HaarSampler>& gate_samplers) {
  const int n = arch.n_qubits;
  std::size_t gate_index = 0;
  auto apply_gate_sample = [&](const BrickGate& g) {
    std::vector<cplx> u = gate_samplers[gate_index++].next();
    apply_local_2q(psi, n, 0, g.a, u, false);
    apply_local_2q(psi, n, 1, g.a, u, false);
    apply_local_2q(psi, n, 2, g.a, u, true);
    apply_local_2q(psi, n, 3, g.a, u, true);
  };
  for (const auto& g : arch.even_gates) apply_gate_sample(g);
  for (const auto& g : arch.odd_gates) apply_gate_sample(g);
}

double parameter_ratio(double lambda_u, double lambda_sp, double n_u_per_gate,
                       double n_sp_per_gate) {
  if (!(lambda_u > 0.0 && lambda_u < 1.0 && lambda_sp > 0.0 && lambda_sp < 1.0)) {
    throw validation_error("spectral gaps must lie in (0, 1)");
  }
  if (!(n_u_per_gate > 0.0 && n_sp_per_gate > 0.0)) {
    throw validation_error("per-gate parameter counts must be positive");
  }
  return (n_sp_per_gate / n_u_per_gate) * (std::log(1.0 / lambda_u) / std::log(1.0 / lambda_sp));
}

long design_depth(double lambda, double eps, int n) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw validation_error("lambda must lie in (0, 1)");
  if (!(eps > 0.0 && eps <= 1.0)) throw validation_error("eps must lie in (0, 1]");
  if (n < 0) throw validation_error("n must be nonnegative");
  double target = eps / std::pow(2.0, n);
  if (target >= 1.0) return 0;
  long depth = static_cast<long>(std::ceil(std::log(target) / std::log(lambda)));
  while (std::pow(lambda, static_cast<double>(depth)) > target) ++depth;
  while (depth > 0 && std::pow(lambda, static_cast<double>(depth - 1)) <= target) --depth;
  return depth;
}

}  // namespace designlab::circuits
