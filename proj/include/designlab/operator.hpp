#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "designlab/common.hpp"

// Operators on the t-fold tensor space (dim = d^t), stored dense row-major
// or as sorted coordinate triples. Basis realizations stay sparse; twirl
// outputs and Monte-Carlo accumulators are dense.

namespace designlab {

struct CooEntry {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  cplx val;
};

struct Operator {
  int d = 0;
  int t = 0;
  std::size_t dim = 0;
  bool dense = false;
  std::vector<cplx> a;         // dense: dim*dim row-major
  std::vector<CooEntry> nz;    // sparse: sorted by (row, col)

  static Operator dense_zero(int d, int t);
  static Operator identity(int d, int t);  // sparse
  static Operator from_dense(int d, int t, std::vector<cplx> data);
  static Operator from_coo(int d, int t, std::vector<CooEntry> entries);

  cplx at(std::uint64_t r, std::uint64_t c) const;
  Operator to_dense() const;
  Operator to_coo(double drop_tol = 0.0) const;
  std::size_t nnz() const { return dense ? a.size() : nz.size(); }
};

// Arithmetic (dense operands unless stated otherwise).
Operator add(const Operator& x, const Operator& y);
Operator sub(const Operator& x, const Operator& y);
void add_scaled(Operator& x, cplx alpha, const Operator& y);  // x += alpha*y, y dense or coo
void scale(Operator& x, cplx alpha);
Operator matmul(const Operator& x, const Operator& y);            // dense * dense
Operator matmul_dagger(const Operator& x, const Operator& y);     // x * y^dagger
Operator dagger(const Operator& x);
Operator kron(const Operator& x, const Operator& y);              // dense
Operator kron_power(const Operator& x, int k);

cplx trace(const Operator& x);
// tr(a * b) for sparse a against sparse or dense b.
cplx trace_product(const Operator& a, const Operator& b);
double frobenius_norm(const Operator& x);
double frobenius_distance(const Operator& x, const Operator& y);
double max_abs_entry_diff(const Operator& x, const Operator& y);

// y = a * x for sparse or dense a.
std::vector<cplx> apply_op(const Operator& a, const std::vector<cplx>& x);
std::vector<cplx> apply_op_dagger(const Operator& a, const std::vector<cplx>& x);

// s * m and m * s with s sparse, m dense.
Operator sparse_times_dense(const Operator& s, const Operator& m);
Operator dense_times_sparse(const Operator& m, const Operator& s);

bool is_hermitian(const Operator& x, double tol = 1e-12);

// Tensor power of a vector: v^{otimes k}.
std::vector<cplx> tensor_power(const std::vector<cplx>& v, int k);

double vec_norm(const std::vector<cplx>& v);
void vec_normalize(std::vector<cplx>& v);

// Serialization in the operator-dump layout:
//   {d, t, dim, format: "dense"|"coo", data: [[re,im],...] | [[row,col,re,im],...]}
std::string operator_to_json(const Operator& x);
Operator operator_from_json(const std::string& text);

}  // namespace designlab
