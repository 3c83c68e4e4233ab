#pragma once

#include <cstddef>

#include "designlab/common.hpp"

// Data-parallel complex kernels with scalar reference implementations and
// SIMD variants selected at runtime. Every variant must agree with the
// scalar reference (see tests); higher layers call through this interface
// only, so a backend swap never changes results beyond rounding.

namespace designlab::kern {

enum class Backend { scalar, avx2, neon };

Backend active_backend();
bool backend_supported(Backend b);
void set_backend(Backend b);  // throws validation_error when unsupported
const char* backend_name();

// y[i] += a * x[i]
void axpy(std::size_t n, cplx a, const cplx* x, cplx* y);
// sum_i conj(x[i]) * y[i]
cplx dotc(std::size_t n, const cplx* x, const cplx* y);
// sum_i |x[i]|^2
double nrm2sq(std::size_t n, const cplx* x);
// x[i] *= a
void scal(std::size_t n, cplx a, cplx* x);

namespace detail {
struct Ops {
  void (*axpy)(std::size_t, cplx, const cplx*, cplx*);
  cplx (*dotc)(std::size_t, const cplx*, const cplx*);
  double (*nrm2sq)(std::size_t, const cplx*);
  void (*scal)(std::size_t, cplx, cplx*);
};
extern const Ops scalar_ops;
const Ops* avx2_ops();  // nullptr when unsupported at runtime
const Ops* neon_ops();
}  // namespace detail

}  // namespace designlab::kern
