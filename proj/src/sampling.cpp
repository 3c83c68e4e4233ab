#include "designlab/sampling.hpp"

#include <cmath>

#include "designlab/kernels.hpp"
#include "designlab/linalg.hpp"
#include "designlab/reps.hpp"

namespace designlab::sampling {

namespace {

using Col = std::vector<cplx>;

cplx col_dot(const Col& x, const Col& y) { return kern::dotc(x.size(), x.data(), y.data()); }

void col_axpy(cplx a, const Col& x, Col& y) { kern::axpy(x.size(), a, x.data(), y.data()); }

double col_norm(const Col& x) { return std::sqrt(kern::nrm2sq(x.size(), x.data())); }

// Two projection passes keep orthogonality at the 1e-14 level.
void orthonormalize(Col& v, const std::vector<Col>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Col& q : basis) col_axpy(-col_dot(q, v), q, v);
  }
  double n = col_norm(v);
  if (n < 1e-12) throw convergence_error("degenerate Ginibre draw");
  kern::scal(v.size(), cplx{1.0 / n, 0.0}, v.data());
}

Col omega_conj(const Col& v, int d) {
  // -Omega conj(v) for the canonical form.
  const int m = d / 2;
  Col out(d);
  for (int i = 0; i < m; ++i) {
    out[i] = -std::conj(v[i + m]);
    out[i + m] = std::conj(v[i]);
  }
  return out;
}

std::vector<cplx> columns_to_matrix(const std::vector<Col>& cols, int d) {
  std::vector<cplx> u(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) u[static_cast<std::size_t>(i) * d + j] = cols[j][i];
  }
  return u;
}

std::vector<cplx> sample_unitary(int d, CounterRng& rng) {
  std::vector<Col> cols;
  cols.reserve(d);
  for (int j = 0; j < d; ++j) {
    Col v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.next_cgaussian();
    orthonormalize(v, cols);
    cols.push_back(std::move(v));
  }
  return columns_to_matrix(cols, d);
}

std::vector<cplx> sample_symplectic(int d, CounterRng& rng) {
  const int m = d / 2;
  // Quaternionic Ginibre: columns j and j+m are partner pairs already,
  // so only the first m columns are drawn.
  std::vector<Col> accepted;  // holds q_0, p_0, q_1, p_1, ...
  std::vector<Col> q(m), p(m);
  for (int j = 0; j < m; ++j) {
    Col a(d);
    for (int i = 0; i < d; ++i) a[i] = rng.next_cgaussian();
    orthonormalize(a, accepted);
    Col b = omega_conj(a, d);
    q[j] = a;
    p[j] = std::move(b);
    accepted.push_back(q[j]);
    accepted.push_back(p[j]);
  }
  std::vector<Col> cols(d);
  for (int j = 0; j < m; ++j) {
    cols[j] = std::move(q[j]);
    cols[j + m] = std::move(p[j]);
  }
  return columns_to_matrix(cols, d);
}

std::vector<cplx> sample_orthogonal(int d, CounterRng& rng) {
  std::vector<Col> cols;
  cols.reserve(d);
  for (int j = 0; j < d; ++j) {
    Col v(d);
    for (int i = 0; i < d; ++i) v[i] = cplx{rng.next_gaussian(), 0.0};
    orthonormalize(v, cols);
    cols.push_back(std::move(v));
  }
  RMatrix r(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) r(i, j) = cols[j][i].real();
  }
  if (det_sign(r) < 0) {
    for (int i = 0; i < d; ++i) cols[d - 1][i] = -cols[d - 1][i];
  }
  return columns_to_matrix(cols, d);
}

}  // namespace

HaarSampler::HaarSampler(const EnsembleSpec& spec)
    : spec_(spec), rng_(spec.seed, spec.stream_id) {
  if (spec.d < 2) throw validation_error("sampler requires d >= 2");
  if (spec.family == GroupFamily::Symplectic && spec.d % 2 != 0) {
    throw validation_error("symplectic sampling requires even d");
  }
}

std::vector<cplx> HaarSampler::next() {
  switch (spec_.family) {
    case GroupFamily::Unitary: return sample_unitary(spec_.d, rng_);
    case GroupFamily::Symplectic: return sample_symplectic(spec_.d, rng_);
    case GroupFamily::Orthogonal: return sample_orthogonal(spec_.d, rng_);
  }
  throw validation_error("unknown ensemble family");
}

Operator HaarSampler::next_operator() {
  return Operator::from_dense(spec_.d, 1, next());
}

Operator haar_unitary(const EnsembleSpec& spec) {
  if (spec.family != GroupFamily::Unitary) {
    throw validation_error("haar_unitary requires a unitary ensemble spec");
  }
  return HaarSampler(spec).next_operator();
}

Operator haar_symplectic(const EnsembleSpec& spec) {
  if (spec.family != GroupFamily::Symplectic) {
    throw validation_error("haar_symplectic requires a symplectic ensemble spec");
  }
  return HaarSampler(spec).next_operator();
}

Operator haar_orthogonal(const EnsembleSpec& spec) {
  if (spec.family != GroupFamily::Orthogonal) {
    throw validation_error("haar_orthogonal requires an orthogonal ensemble spec");
  }
  return HaarSampler(spec).next_operator();
}

double unitarity_residual(const std::vector<cplx>& u, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      cplx acc{0.0, 0.0};
      for (int k = 0; k < d; ++k) {
        acc += std::conj(u[static_cast<std::size_t>(k) * d + i]) *
               u[static_cast<std::size_t>(k) * d + j];
      }
      if (i == j) acc -= 1.0;
      s += std::norm(acc);
    }
  }
  return std::sqrt(s);
}

double symplectic_residual(const std::vector<cplx>& u, int d) {
  reps::SymplecticForm w = reps::omega(d);
  // (U^T Omega U)_{ij} = sum_k sign(k) U_{k,i} U_{partner(k),j}
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      cplx acc{0.0, 0.0};
      for (int k = 0; k < d; ++k) {
        acc += w.row_sign(k) * u[static_cast<std::size_t>(k) * d + i] *
               u[static_cast<std::size_t>(w.partner(k)) * d + j];
      }
      if (w.partner(i) == j) acc -= w.row_sign(i);
      s += std::norm(acc);
    }
  }
  return std::sqrt(s);
}

double quaternionic_residual(const std::vector<cplx>& u, int d) {
  reps::SymplecticForm w = reps::omega(d);
  // (Omega U* Omega^T)_{ij} = sign(i) sign(j) conj(U_{partner(i), partner(j)})
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      cplx rhs = w.row_sign(i) * w.row_sign(j) *
                 std::conj(u[static_cast<std::size_t>(w.partner(i)) * d + w.partner(j)]);
      s += std::norm(u[static_cast<std::size_t>(i) * d + j] - rhs);
    }
  }
  return std::sqrt(s);
}

}  // namespace designlab::sampling
