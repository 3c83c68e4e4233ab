#include "designlab/operator.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "designlab/json_writer.hpp"
#include "designlab/kernels.hpp"

namespace designlab {

namespace {

void check_dense_alloc(std::size_t dim) {
  if (dim > budget().max_dense_dim) {
    throw budget_error("dense materialization of dim " + std::to_string(dim) +
                       " exceeds the dense budget (" +
                       std::to_string(budget().max_dense_dim) + ")");
  }
}

void require_dense(const Operator& x, const char* what) {
  if (!x.dense) throw validation_error(std::string(what) + " requires a dense operator");
}

void require_same_shape(const Operator& x, const Operator& y) {
  if (x.dim != y.dim) throw validation_error("operator dimensions do not match");
}

void sort_coo(std::vector<CooEntry>& nz) {
  std::sort(nz.begin(), nz.end(), [](const CooEntry& a, const CooEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
}

}  // namespace

Operator Operator::dense_zero(int d, int t) {
  Operator x;
  x.d = d;
  x.t = t;
  x.dim = checked_pow_dim(d, t);
  check_dense_alloc(x.dim);
  x.dense = true;
  x.a.assign(x.dim * x.dim, cplx{0.0, 0.0});
  return x;
}

Operator Operator::identity(int d, int t) {
  Operator x;
  x.d = d;
  x.t = t;
  x.dim = checked_pow_dim(d, t);
  x.dense = false;
  x.nz.reserve(x.dim);
  for (std::uint64_t i = 0; i < x.dim; ++i) x.nz.push_back({i, i, cplx{1.0, 0.0}});
  return x;
}

Operator Operator::from_dense(int d, int t, std::vector<cplx> data) {
  Operator x;
  x.d = d;
  x.t = t;
  x.dim = checked_pow_dim(d, t);
  if (data.size() != x.dim * x.dim) throw validation_error("dense data size mismatch");
  x.dense = true;
  x.a = std::move(data);
  return x;
}

Operator Operator::from_coo(int d, int t, std::vector<CooEntry> entries) {
  Operator x;
  x.d = d;
  x.t = t;
  x.dim = checked_pow_dim(d, t);
  for (const auto& e : entries) {
    if (e.row >= x.dim || e.col >= x.dim) throw validation_error("coo index out of range");
  }
  sort_coo(entries);
  x.dense = false;
  x.nz = std::move(entries);
  return x;
}

cplx Operator::at(std::uint64_t r, std::uint64_t c) const {
  if (dense) return a[r * dim + c];
  CooEntry key{r, c, {}};
  auto it = std::lower_bound(nz.begin(), nz.end(), key,
                             [](const CooEntry& x, const CooEntry& y) {
                               return x.row != y.row ? x.row < y.row : x.col < y.col;
                             });
  if (it != nz.end() && it->row == r && it->col == c) return it->val;
  return {0.0, 0.0};
}

Operator Operator::to_dense() const {
  if (dense) return *this;
  Operator x = dense_zero(d, t);
  for (const auto& e : nz) x.a[e.row * dim + e.col] += e.val;
  return x;
}

Operator Operator::to_coo(double drop_tol) const {
  if (!dense) return *this;
  std::vector<CooEntry> entries;
  for (std::uint64_t r = 0; r < dim; ++r) {
    for (std::uint64_t c = 0; c < dim; ++c) {
      cplx v = a[r * dim + c];
      if (std::abs(v) > drop_tol) entries.push_back({r, c, v});
    }
  }
  return from_coo(d, t, std::move(entries));
}

Operator add(const Operator& x, const Operator& y) {
  Operator z = x.to_dense();
  add_scaled(z, cplx{1.0, 0.0}, y);
  return z;
}

Operator sub(const Operator& x, const Operator& y) {
  Operator z = x.to_dense();
  add_scaled(z, cplx{-1.0, 0.0}, y);
  return z;
}

void add_scaled(Operator& x, cplx alpha, const Operator& y) {
  require_dense(x, "add_scaled");
  require_same_shape(x, y);
  if (y.dense) {
    kern::axpy(y.a.size(), alpha, y.a.data(), x.a.data());
  } else {
    for (const auto& e : y.nz) x.a[e.row * x.dim + e.col] += alpha * e.val;
  }
}

void scale(Operator& x, cplx alpha) {
  if (x.dense) {
    kern::scal(x.a.size(), alpha, x.a.data());
  } else {
    for (auto& e : x.nz) e.val *= alpha;
  }
}

Operator matmul(const Operator& x, const Operator& y) {
  require_dense(x, "matmul");
  require_dense(y, "matmul");
  require_same_shape(x, y);
  const std::size_t n = x.dim;
  Operator z = Operator::dense_zero(x.d, x.t);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* xi = x.a.data() + i * n;
    cplx* zi = z.a.data() + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      if (xi[k] != cplx{0.0, 0.0}) kern::axpy(n, xi[k], y.a.data() + k * n, zi);
    }
  }
  return z;
}

Operator matmul_dagger(const Operator& x, const Operator& y) {
  require_dense(x, "matmul_dagger");
  require_dense(y, "matmul_dagger");
  require_same_shape(x, y);
  const std::size_t n = x.dim;
  Operator z = Operator::dense_zero(x.d, x.t);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* xi = x.a.data() + i * n;
    cplx* zi = z.a.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      // z[i][j] = sum_k x[i][k] * conj(y[j][k]) = conj(dotc(x_i, y_j))
      zi[j] = std::conj(kern::dotc(n, xi, y.a.data() + j * n));
    }
  }
  return z;
}

Operator dagger(const Operator& x) {
  if (x.dense) {
    Operator z = Operator::dense_zero(x.d, x.t);
    for (std::uint64_t r = 0; r < x.dim; ++r) {
      for (std::uint64_t c = 0; c < x.dim; ++c) {
        z.a[c * x.dim + r] = std::conj(x.a[r * x.dim + c]);
      }
    }
    return z;
  }
  std::vector<CooEntry> entries;
  entries.reserve(x.nz.size());
  for (const auto& e : x.nz) entries.push_back({e.col, e.row, std::conj(e.val)});
  return Operator::from_coo(x.d, x.t, std::move(entries));
}

Operator kron(const Operator& x, const Operator& y) {
  require_dense(x, "kron");
  require_dense(y, "kron");
  std::size_t n1 = x.dim, n2 = y.dim;
  std::size_t n = n1 * n2;
  check_dense_alloc(n);
  Operator z;
  z.d = x.d;
  z.t = x.t + y.t;
  z.dim = n;
  z.dense = true;
  z.a.assign(n * n, cplx{0.0, 0.0});
  for (std::size_t r1 = 0; r1 < n1; ++r1) {
    for (std::size_t c1 = 0; c1 < n1; ++c1) {
      cplx v = x.a[r1 * n1 + c1];
      if (v == cplx{0.0, 0.0}) continue;
      for (std::size_t r2 = 0; r2 < n2; ++r2) {
        kern::axpy(n2, v, y.a.data() + r2 * n2, z.a.data() + (r1 * n2 + r2) * n + c1 * n2);
      }
    }
  }
  return z;
}

Operator kron_power(const Operator& x, int k) {
  if (k < 1) throw validation_error("kron power requires k >= 1");
  Operator z = x.to_dense();
  for (int i = 1; i < k; ++i) z = kron(z, x.to_dense());
  return z;
}

cplx trace(const Operator& x) {
  cplx s{0.0, 0.0};
  if (x.dense) {
    for (std::uint64_t i = 0; i < x.dim; ++i) s += x.a[i * x.dim + i];
  } else {
    for (const auto& e : x.nz) {
      if (e.row == e.col) s += e.val;
    }
  }
  return s;
}

cplx trace_product(const Operator& a, const Operator& b) {
  require_same_shape(a, b);
  if (a.dense && b.dense) {
    cplx s{0.0, 0.0};
    for (std::uint64_t r = 0; r < a.dim; ++r) {
      for (std::uint64_t c = 0; c < a.dim; ++c) s += a.a[r * a.dim + c] * b.a[c * b.dim + r];
    }
    return s;
  }
  // tr(a b) = sum_{r,c} a[r][c] b[c][r]; iterate whichever side is sparse.
  const Operator& sp = a.dense ? b : a;
  const Operator& other = a.dense ? a : b;
  cplx s{0.0, 0.0};
  for (const auto& e : sp.nz) s += e.val * other.at(e.col, e.row);
  return s;
}

double frobenius_norm(const Operator& x) {
  if (x.dense) return std::sqrt(kern::nrm2sq(x.a.size(), x.a.data()));
  double s = 0.0;
  for (const auto& e : x.nz) s += std::norm(e.val);
  return std::sqrt(s);
}

double frobenius_distance(const Operator& x, const Operator& y) {
  Operator z = sub(x.to_dense(), y);
  return frobenius_norm(z);
}

double max_abs_entry_diff(const Operator& x, const Operator& y) {
  require_same_shape(x, y);
  double m = 0.0;
  for (std::uint64_t r = 0; r < x.dim; ++r) {
    for (std::uint64_t c = 0; c < x.dim; ++c) m = std::max(m, std::abs(x.at(r, c) - y.at(r, c)));
  }
  return m;
}

std::vector<cplx> apply_op(const Operator& a, const std::vector<cplx>& x) {
  if (x.size() != a.dim) throw validation_error("vector length does not match operator");
  std::vector<cplx> y(a.dim, cplx{0.0, 0.0});
  if (a.dense) {
    for (std::uint64_t r = 0; r < a.dim; ++r) {
      cplx s{0.0, 0.0};
      const cplx* row = a.a.data() + r * a.dim;
      for (std::uint64_t c = 0; c < a.dim; ++c) s += row[c] * x[c];
      y[r] = s;
    }
  } else {
    for (const auto& e : a.nz) y[e.row] += e.val * x[e.col];
  }
  return y;
}

std::vector<cplx> apply_op_dagger(const Operator& a, const std::vector<cplx>& x) {
  if (x.size() != a.dim) throw validation_error("vector length does not match operator");
  std::vector<cplx> y(a.dim, cplx{0.0, 0.0});
  if (a.dense) {
    for (std::uint64_t r = 0; r < a.dim; ++r) {
      for (std::uint64_t c = 0; c < a.dim; ++c) y[c] += std::conj(a.a[r * a.dim + c]) * x[r];
    }
  } else {
    for (const auto& e : a.nz) y[e.col] += std::conj(e.val) * x[e.row];
  }
  return y;
}

Operator sparse_times_dense(const Operator& s, const Operator& m) {
  require_dense(m, "sparse_times_dense");
  require_same_shape(s, m);
  Operator z = Operator::dense_zero(m.d, m.t);
  for (const auto& e : s.nz) {
    kern::axpy(m.dim, e.val, m.a.data() + e.col * m.dim, z.a.data() + e.row * m.dim);
  }
  return z;
}

Operator dense_times_sparse(const Operator& m, const Operator& s) {
  require_dense(m, "dense_times_sparse");
  require_same_shape(s, m);
  Operator z = Operator::dense_zero(m.d, m.t);
  // z[:, e.col] += m[:, e.row] * e.val
  for (const auto& e : s.nz) {
    for (std::uint64_t r = 0; r < m.dim; ++r) {
      z.a[r * m.dim + e.col] += m.a[r * m.dim + e.row] * e.val;
    }
  }
  return z;
}

bool is_hermitian(const Operator& x, double tol) {
  Operator d = x.to_dense();
  for (std::uint64_t r = 0; r < d.dim; ++r) {
    for (std::uint64_t c = r; c < d.dim; ++c) {
      if (std::abs(d.a[r * d.dim + c] - std::conj(d.a[c * d.dim + r])) > tol) return false;
    }
  }
  return true;
}

std::vector<cplx> tensor_power(const std::vector<cplx>& v, int k) {
  if (k < 1) throw validation_error("tensor power requires k >= 1");
  std::vector<cplx> out = v;
  for (int i = 1; i < k; ++i) {
    std::vector<cplx> next(out.size() * v.size());
    std::size_t idx = 0;
    for (const cplx& a : out) {
      for (const cplx& b : v) next[idx++] = a * b;
    }
    out = std::move(next);
  }
  return out;
}

double vec_norm(const std::vector<cplx>& v) {
  return std::sqrt(kern::nrm2sq(v.size(), v.data()));
}

void vec_normalize(std::vector<cplx>& v) {
  double n = vec_norm(v);
  if (n == 0.0) throw validation_error("cannot normalize the zero vector");
  kern::scal(v.size(), cplx{1.0 / n, 0.0}, v.data());
}

std::string operator_to_json(const Operator& x) {
  JsonWriter w;
  w.begin_object();
  w.key("d").value(x.d);
  w.key("t").value(x.t);
  w.key("dim").value(static_cast<std::int64_t>(x.dim));
  w.key("format").value(x.dense ? "dense" : "coo");
  w.key("data");
  w.begin_array();
  if (x.dense) {
    for (const cplx& v : x.a) {
      w.begin_array();
      w.value(v.real());
      w.value(v.imag());
      w.end_array();
    }
  } else {
    for (const auto& e : x.nz) {
      w.begin_array();
      w.value(static_cast<std::int64_t>(e.row));
      w.value(static_cast<std::int64_t>(e.col));
      w.value(e.val.real());
      w.value(e.val.imag());
      w.end_array();
    }
  }
  w.end_array();
  w.end_object();
  return w.str();
}

Operator operator_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  int d = j.at("d").get<int>();
  int t = j.at("t").get<int>();
  std::string format = j.at("format").get<std::string>();
  const auto& data = j.at("data");
  if (format == "dense") {
    std::vector<cplx> a;
    a.reserve(data.size());
    for (const auto& e : data) a.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
    return Operator::from_dense(d, t, std::move(a));
  }
  if (format == "coo") {
    std::vector<CooEntry> nz;
    nz.reserve(data.size());
    for (const auto& e : data) {
      nz.push_back({e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>(),
                    cplx{e.at(2).get<double>(), e.at(3).get<double>()}});
    }
    return Operator::from_coo(d, t, std::move(nz));
  }
  throw validation_error("unknown operator format: " + format);
}

}  // namespace designlab
