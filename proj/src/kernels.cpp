#include "designlab/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace designlab::kern {

namespace {

struct Dispatch {
  const detail::Ops* ops;
  Backend which;
};

Dispatch pick_default() {
  if (const char* env = std::getenv("DESIGNLAB_BACKEND")) {
    if (std::strcmp(env, "scalar") == 0) return {&detail::scalar_ops, Backend::scalar};
    if (std::strcmp(env, "avx2") == 0 && detail::avx2_ops()) {
      return {detail::avx2_ops(), Backend::avx2};
    }
    if (std::strcmp(env, "neon") == 0 && detail::neon_ops()) {
      return {detail::neon_ops(), Backend::neon};
    }
  }
  if (const detail::Ops* o = detail::avx2_ops()) return {o, Backend::avx2};
  if (const detail::Ops* o = detail::neon_ops()) return {o, Backend::neon};
  return {&detail::scalar_ops, Backend::scalar};
}

Dispatch& dispatch() {
  static Dispatch d = pick_default();
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().which; }

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2: return detail::avx2_ops() != nullptr;
    case Backend::neon: return detail::neon_ops() != nullptr;
  }
  return false;
}

void set_backend(Backend b) {
  switch (b) {
    case Backend::scalar:
      dispatch() = {&detail::scalar_ops, Backend::scalar};
      return;
    case Backend::avx2:
      if (const detail::Ops* o = detail::avx2_ops()) {
        dispatch() = {o, Backend::avx2};
        return;
      }
      break;
    case Backend::neon:
      if (const detail::Ops* o = detail::neon_ops()) {
        dispatch() = {o, Backend::neon};
        return;
      }
      break;
  }
  throw validation_error("requested kernel backend not supported on this host");
}

const char* backend_name() {
  switch (dispatch().which) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "?";
}

void axpy(std::size_t n, cplx a, const cplx* x, cplx* y) {
  dispatch().ops->axpy(n, a, x, y);
}

cplx dotc(std::size_t n, const cplx* x, const cplx* y) {
  return dispatch().ops->dotc(n, x, y);
}

double nrm2sq(std::size_t n, const cplx* x) { return dispatch().ops->nrm2sq(n, x); }

void scal(std::size_t n, cplx a, cplx* x) { dispatch().ops->scal(n, a, x); }

}  // namespace designlab::kern
