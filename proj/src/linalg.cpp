#include "designlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace designlab {

RMatrix matmul(const RMatrix& x, const RMatrix& y) {
  if (x.cols != y.rows) throw validation_error("matrix shape mismatch");
  RMatrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      double v = x(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
    }
  }
  return z;
}

std::vector<double> matvec(const RMatrix& m, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != m.cols) throw validation_error("matvec shape mismatch");
  std::vector<double> out(m.rows, 0.0);
  for (int i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

SymEig sym_eig(const RMatrix& m) {
  if (m.rows != m.cols) throw validation_error("sym_eig requires a square matrix");
  const int n = m.rows;
  RMatrix a = m;
  RMatrix v(n, n);
  for (int i = 0; i < n; ++i) v(i, i) = 1.0;

  double scale = 0.0;
  for (double x : a.a) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) scale = 1.0;

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= 1e-15 * scale * n) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  SymEig out;
  out.values.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = a(i, i);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });
  out.vectors = RMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.values[k] = diag[order[k]];
    for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

RMatrix sym_pinv(const RMatrix& m, double rel_cutoff, int* rank_out) {
  SymEig eig = sym_eig(m);
  const int n = m.rows;
  double emax = 0.0;
  for (double x : eig.values) emax = std::max(emax, std::abs(x));
  double cutoff = rel_cutoff * emax;
  RMatrix pinv(n, n);
  int rank = 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(eig.values[k]) <= cutoff) continue;
    ++rank;
    double inv = 1.0 / eig.values[k];
    for (int i = 0; i < n; ++i) {
      double vik = eig.vectors(i, k) * inv;
      if (vik == 0.0) continue;
      for (int j = 0; j < n; ++j) pinv(i, j) += vik * eig.vectors(j, k);
    }
  }
  if (rank_out) *rank_out = rank;
  return pinv;
}

std::vector<double> herm_eigenvalues(int n, const std::vector<cplx>& h) {
  RMatrix m(2 * n, 2 * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      double x = h[static_cast<std::size_t>(r) * n + c].real();
      double y = h[static_cast<std::size_t>(r) * n + c].imag();
      m(r, c) = x;
      m(n + r, n + c) = x;
      m(r, n + c) = -y;
      m(n + r, c) = y;
    }
  }
  SymEig eig = sym_eig(m);
  // The embedding doubles every eigenvalue.
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = 0.5 * (eig.values[2 * k] + eig.values[2 * k + 1]);
  return out;
}

int det_sign(const RMatrix& m) {
  if (m.rows != m.cols) throw validation_error("det_sign requires a square matrix");
  const int n = m.rows;
  RMatrix a = m;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    }
    if (a(piv, k) == 0.0) return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(k, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      double f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  for (int k = 0; k < n; ++k) {
    if (a(k, k) < 0.0) sign = -sign;
  }
  return sign;
}

}  // namespace designlab
