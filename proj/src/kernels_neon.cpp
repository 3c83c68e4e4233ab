#include "designlab/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

// One float64x2_t holds a single complex double (re, im).

namespace designlab::kern::detail {

namespace {

inline float64x2_t cmul_neon(float64x2_t a, float64x2_t b) {
  float64x2_t are = vdupq_laneq_f64(a, 0);
  float64x2_t aim = vdupq_laneq_f64(a, 1);
  float64x2_t bsw = vextq_f64(b, b, 1);
  float64x2_t t = vmulq_f64(aim, bsw);       // [ai*bi, ai*br]
  float64x2_t s = vmulq_f64(are, b);         // [ar*br, ar*bi]
  const float64x2_t sign = {-1.0, 1.0};
  return vfmaq_f64(s, t, sign);              // [ar*br - ai*bi, ar*bi + ai*br]
}

void axpy_neon(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  float64x2_t va = {a.real(), a.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t vx = vld1q_f64(xs + 2 * i);
    float64x2_t vy = vld1q_f64(ys + 2 * i);
    vst1q_f64(ys + 2 * i, vaddq_f64(vy, cmul_neon(va, vx)));
  }
}

cplx dotc_neon(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double nrm2sq_neon(std::size_t n, const cplx* x) {
  const double* xs = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t v = vld1q_f64(xs + 2 * i);
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

void scal_neon(std::size_t n, cplx a, cplx* x) {
  double* xs = reinterpret_cast<double*>(x);
  float64x2_t va = {a.real(), a.imag()};
  for (std::size_t i = 0; i < n; ++i) {
    float64x2_t v = vld1q_f64(xs + 2 * i);
    vst1q_f64(xs + 2 * i, cmul_neon(va, v));
  }
}

const Ops neon_table = {axpy_neon, dotc_neon, nrm2sq_neon, scal_neon};

}  // namespace

const Ops* neon_ops() { return &neon_table; }

}  // namespace designlab::kern::detail

#else

namespace designlab::kern::detail {
const Ops* neon_ops() { return nullptr; }
}  // namespace designlab::kern::detail

#endif
