#include "designlab/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

// Complex doubles are interleaved (re, im). One __m256d holds two complex
// numbers. Complex products use the fmaddsub split: even lanes collect
// re*re - im*im, odd lanes re*im + im*re.

namespace designlab::kern::detail {

namespace {

__attribute__((target("avx2,fma"))) inline __m256d cmul(__m256d a, __m256d b) {
  __m256d are = _mm256_movedup_pd(a);             // [a.re, a.re, ...]
  __m256d aim = _mm256_permute_pd(a, 0xF);        // [a.im, a.im, ...]
  __m256d bsw = _mm256_permute_pd(b, 0x5);        // [b.im, b.re, ...]
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bsw));
}

__attribute__((target("avx2,fma"))) void axpy_avx2(std::size_t n, cplx a,
                                                   const cplx* x, cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  __m256d are = _mm256_set1_pd(a.real());
  __m256d aim = _mm256_set1_pd(a.imag());
  std::size_t n2 = n / 2 * 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d v = _mm256_loadu_pd(xs + 2 * i);
    __m256d vsw = _mm256_permute_pd(v, 0x5);
    __m256d prod = _mm256_fmaddsub_pd(are, v, _mm256_mul_pd(aim, vsw));
    __m256d acc = _mm256_add_pd(_mm256_loadu_pd(ys + 2 * i), prod);
    _mm256_storeu_pd(ys + 2 * i, acc);
  }
  for (std::size_t i = n2; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2,fma"))) cplx dotc_avx2(std::size_t n, const cplx* x,
                                                   const cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  // acc1 lanes: xr*yr (even), xi*yi (odd)  -> re = sum of all lanes
  // acc2 lanes: xr*yi (even), xi*yr (odd)  -> im = even - odd
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t n2 = n / 2 * 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d vx = _mm256_loadu_pd(xs + 2 * i);
    __m256d vy = _mm256_loadu_pd(ys + 2 * i);
    __m256d vysw = _mm256_permute_pd(vy, 0x5);
    acc1 = _mm256_fmadd_pd(vx, vy, acc1);
    acc2 = _mm256_fmadd_pd(vx, vysw, acc2);
  }
  alignas(32) double t1[4], t2[4];
  _mm256_store_pd(t1, acc1);
  _mm256_store_pd(t2, acc2);
  double re = t1[0] + t1[1] + t1[2] + t1[3];
  double im = (t2[0] + t2[2]) - (t2[1] + t2[3]);
  for (std::size_t i = n2; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

__attribute__((target("avx2,fma"))) double nrm2sq_avx2(std::size_t n,
                                                       const cplx* x) {
  const double* xs = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t n2 = n / 2 * 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d v = _mm256_loadu_pd(xs + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double t[4];
  _mm256_store_pd(t, acc);
  double s = t[0] + t[1] + t[2] + t[3];
  for (std::size_t i = n2; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

__attribute__((target("avx2,fma"))) void scal_avx2(std::size_t n, cplx a,
                                                   cplx* x) {
  double* xs = reinterpret_cast<double*>(x);
  __m256d va = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t n2 = n / 2 * 2;
  for (std::size_t i = 0; i < n2; i += 2) {
    __m256d v = _mm256_loadu_pd(xs + 2 * i);
    _mm256_storeu_pd(xs + 2 * i, cmul(va, v));
  }
  for (std::size_t i = n2; i < n; ++i) x[i] *= a;
}

const Ops avx2_table = {axpy_avx2, dotc_avx2, nrm2sq_avx2, scal_avx2};

}  // namespace

const Ops* avx2_ops() {
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &avx2_table;
  }
  return nullptr;
}

}  // namespace designlab::kern::detail

#else

namespace designlab::kern::detail {
const Ops* avx2_ops() { return nullptr; }
}  // namespace designlab::kern::detail

#endif
