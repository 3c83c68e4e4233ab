#include "designlab/reps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace designlab::reps {

namespace {

std::vector<int> inverse_perm(const std::vector<int>& pi) {
  std::vector<int> inv(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) inv[pi[i]] = static_cast<int>(i);
  return inv;
}

std::uint64_t pack(const std::vector<int>& digits, int d) {
  std::uint64_t idx = 0;
  for (int v : digits) idx = idx * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(v);
  return idx;
}

struct PairRole {
  enum Kind { bottom_arc, top_arc, through } kind;
  int a, b;  // 0-based; through: input a, output b; arcs: positions within a row
};

std::vector<PairRole> classify(const brauer::Pairing& sigma) {
  std::vector<PairRole> roles;
  roles.reserve(sigma.pairs.size());
  const int t = sigma.t;
  for (auto [x, y] : sigma.pairs) {
    if (y <= t) {
      roles.push_back({PairRole::bottom_arc, x - 1, y - 1});
    } else if (x > t) {
      roles.push_back({PairRole::top_arc, x - t - 1, y - t - 1});
    } else {
      roles.push_back({PairRole::through, x - 1, y - t - 1});
    }
  }
  return roles;
}

}  // namespace

SymplecticForm omega(int d) {
  if (d < 2 || d % 2 != 0) throw validation_error("symplectic form requires even d >= 2");
  return SymplecticForm{d};
}

Operator omega_matrix(int d) {
  SymplecticForm w = omega(d);
  std::vector<CooEntry> nz;
  nz.reserve(d);
  for (int x = 0; x < d; ++x) {
    nz.push_back({static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(w.partner(x)),
                  cplx{w.row_sign(x), 0.0}});
  }
  return Operator::from_coo(d, 1, std::move(nz));
}

std::uint64_t permute_index(const std::vector<int>& pi, std::uint64_t idx, int d, int t) {
  std::vector<int> in(t), out(t);
  for (int k = t - 1; k >= 0; --k) {
    in[k] = static_cast<int>(idx % d);
    idx /= d;
  }
  for (int k = 0; k < t; ++k) out[pi[k]] = in[k];
  return pack(out, d);
}

Operator perm_rep(const std::vector<int>& pi, int d) {
  const int t = static_cast<int>(pi.size());
  if (d < 2) throw validation_error("perm_rep requires d >= 2");
  std::size_t dim = checked_pow_dim(d, t);
  std::vector<CooEntry> nz;
  nz.reserve(dim);
  std::vector<int> in(t, 0), out(t, 0);
  for (std::uint64_t col = 0; col < dim; ++col) {
    std::uint64_t rest = col;
    for (int k = t - 1; k >= 0; --k) {
      in[k] = static_cast<int>(rest % d);
      rest /= d;
    }
    for (int k = 0; k < t; ++k) out[pi[k]] = in[k];
    nz.push_back({pack(out, d), col, cplx{1.0, 0.0}});
  }
  return Operator::from_coo(d, t, std::move(nz));
}

Operator brauer_rep(const brauer::Pairing& sigma, int d, BrauerSign convention) {
  SymplecticForm w = omega(d);
  const int t = sigma.t;
  std::size_t dim = checked_pow_dim(d, t);
  auto roles = classify(sigma);

  // One free base-d digit per pair; inputs/outputs and the +-1 coefficient
  // follow from the contraction pattern (caps use Omega, cups its transpose).
  std::size_t terms = dim;
  std::vector<CooEntry> nz;
  nz.reserve(terms);
  std::vector<int> in(t, 0), out(t, 0), digit(t, 0);
  for (std::uint64_t combo = 0; combo < terms; ++combo) {
    std::uint64_t rest = combo;
    for (int k = t - 1; k >= 0; --k) {
      digit[k] = static_cast<int>(rest % d);
      rest /= d;
    }
    double coeff = 1.0;
    for (int k = 0; k < t; ++k) {
      const PairRole& role = roles[k];
      int x = digit[k];
      switch (role.kind) {
        case PairRole::bottom_arc:
          in[role.a] = x;
          in[role.b] = w.partner(x);
          coeff *= w.row_sign(x);
          break;
        case PairRole::top_arc:
          out[role.b] = x;
          out[role.a] = w.partner(x);
          coeff *= w.row_sign(x);
          break;
        case PairRole::through:
          in[role.a] = x;
          out[role.b] = x;
          break;
      }
    }
    nz.push_back({pack(out, d), pack(in, d), cplx{coeff, 0.0}});
  }
  Operator op = Operator::from_coo(d, t, std::move(nz));
  if (convention == BrauerSign::homomorphic) {
    int s = brauer_rep_sign(sigma);
    if (s != 1) scale(op, cplx{static_cast<double>(s), 0.0});
  }
  return op;
}

int brauer_rep_sign(const brauer::Pairing& sigma) {
  using brauer::Pairing;
  const int t = sigma.t;
  auto roles = classify(sigma);

  std::vector<std::pair<int, int>> bottoms, tops, throughs;
  for (const auto& r : roles) {
    if (r.kind == PairRole::bottom_arc) bottoms.emplace_back(r.a, r.b);
    if (r.kind == PairRole::top_arc) tops.emplace_back(r.a, r.b);
    if (r.kind == PairRole::through) throughs.emplace_back(r.a, r.b);
  }
  const int k = static_cast<int>(bottoms.size());
  if (k == 0) {
    // Plain permutation: sign is its parity.
    auto one_line = brauer::to_permutation(sigma);
    return brauer::permutation_sign(*one_line);
  }

  // Factor sigma = pi1 * E_k * pi2 where E_k has nested arcs on the first
  // 2k strands of both rows. The sign of the factorization is well defined:
  // swapping the legs of one arc flips both the permutation parity and the
  // realized operator's sign.
  std::vector<int> pi2(t), pi1(t);
  for (int i = 0; i < k; ++i) {
    pi2[bottoms[i].first] = 2 * i;
    pi2[bottoms[i].second] = 2 * i + 1;
    pi1[2 * i] = tops[i].first;
    pi1[2 * i + 1] = tops[i].second;
  }
  for (std::size_t l = 0; l < throughs.size(); ++l) {
    pi2[throughs[l].first] = 2 * k + static_cast<int>(l);
    pi1[2 * k + l] = throughs[l].second;
  }

  // E_k as a diagram.
  std::vector<std::pair<int, int>> epairs;
  for (int i = 0; i < k; ++i) {
    epairs.emplace_back(2 * i + 1, 2 * i + 2);
    epairs.emplace_back(t + 2 * i + 1, t + 2 * i + 2);
  }
  for (int j = 2 * k; j < t; ++j) epairs.emplace_back(j + 1, t + j + 1);
  Pairing ek = brauer::make_pairing(t, std::move(epairs));

  auto inner = brauer::compose(ek, brauer::from_permutation(pi2));
  auto full = brauer::compose(brauer::from_permutation(pi1), inner.diagram);
  if (inner.loop_power != 0 || full.loop_power != 0 || !(full.diagram == sigma)) {
    throw std::logic_error("brauer factorization failed");
  }

  // Relate P(pi1) F(E_k) P(pi2) to the directly realized F(sigma). Entry
  // values are +-1, so comparing one matching entry fixes the global sign;
  // d = 2 keeps this cheap and the sign is d-independent.
  const int d = 2;
  Operator fe = brauer_rep(ek, d, BrauerSign::plain);
  std::vector<int> pi2inv = inverse_perm(pi2);
  std::vector<CooEntry> remapped;
  remapped.reserve(fe.nz.size());
  for (const auto& e : fe.nz) {
    remapped.push_back({permute_index(pi1, e.row, d, t), permute_index(pi2inv, e.col, d, t),
                        e.val});
  }
  Operator lhs = Operator::from_coo(d, t, std::move(remapped));
  Operator rhs = brauer_rep(sigma, d, BrauerSign::plain);
  if (lhs.nz.size() != rhs.nz.size()) throw std::logic_error("brauer sign support mismatch");
  int ratio = 0;
  for (std::size_t i = 0; i < lhs.nz.size(); ++i) {
    const auto& x = lhs.nz[i];
    const auto& y = rhs.nz[i];
    if (x.row != y.row || x.col != y.col) throw std::logic_error("brauer sign support mismatch");
    int r = static_cast<int>(std::lround(x.val.real() / y.val.real()));
    if (ratio == 0) {
      ratio = r;
    } else if (ratio != r) {
      throw std::logic_error("brauer sign ratio is not constant");
    }
  }

  int parity = brauer::permutation_sign(pi1) * brauer::permutation_sign(pi2);
  return parity * ratio;
}

double sym_dimension(int t, int d) {
  double v = 1.0;
  for (int i = 0; i < t; ++i) v *= static_cast<double>(d + i);
  return v;
}

Operator sym_projector(int t, int d) {
  if (t < 1 || d < 2) throw validation_error("sym_projector requires t >= 1, d >= 2");
  Operator acc = Operator::dense_zero(d, t);
  std::vector<int> pi(t);
  std::iota(pi.begin(), pi.end(), 0);
  do {
    add_scaled(acc, cplx{1.0, 0.0}, perm_rep(pi, d));
  } while (std::next_permutation(pi.begin(), pi.end()));
  scale(acc, cplx{1.0 / sym_dimension(t, d), 0.0});
  return acc;
}

}  // namespace designlab::reps
