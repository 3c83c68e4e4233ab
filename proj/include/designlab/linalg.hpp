#pragma once

#include <vector>

#include "designlab/common.hpp"

namespace designlab {

// Small dense real matrix, row-major.
struct RMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  RMatrix() = default;
  RMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}
  double& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

RMatrix matmul(const RMatrix& x, const RMatrix& y);
std::vector<double> matvec(const RMatrix& m, const std::vector<double>& v);

struct SymEig {
  std::vector<double> values;   // ascending
  RMatrix vectors;              // column k = eigenvector of values[k]
};

// Cyclic Jacobi for real symmetric matrices.
SymEig sym_eig(const RMatrix& m);

// Moore-Penrose pseudo-inverse of a symmetric matrix via its
// eigendecomposition; eigenvalues below rel_cutoff * max|eig| are dropped.
RMatrix sym_pinv(const RMatrix& m, double rel_cutoff, int* rank_out = nullptr);

// Eigenvalues of a complex Hermitian matrix (ascending), via the
// [[X, -Y], [Y, X]] real symmetric embedding.
std::vector<double> herm_eigenvalues(int n, const std::vector<cplx>& h);

// Sign of det for a small real matrix (LU with partial pivoting).
int det_sign(const RMatrix& m);

}  // namespace designlab
