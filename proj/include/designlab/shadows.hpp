#pragma once

#include <cstdint>
#include <vector>

#include "designlab/operator.hpp"
#include "designlab/sampling.hpp"

// Classical shadows over a global unitary or symplectic ensemble with
// computational-basis measurements: the exact measurement channel and its
// inverse, single-snapshot records, the observable estimator with its exact
// variance, and the second/third basis-moment operators that determine the
// whole protocol.

namespace designlab::shadows {

struct ShadowProtocol {
  sampling::EnsembleSpec ensemble;  // measurement basis is computational
};

struct ShadowRecord {
  std::int64_t sample_index = 0;
  int outcome = 0;
  Operator snapshot;  // M^{-1}(U^dag |w><w| U), trace 1
};

struct EstimateReport {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  double exact_mean = 0.0;
  double exact_variance = 0.0;
  double variance_std_error = 0.0;  // for the empirical-variance estimate
  std::int64_t samples = 0;
};

// Twirl of sum_w |w..w><w..w| over t copies; equals d * Pi_sym^(t) for both
// families. This operator (t = 2, 3) pins down the shadow protocol.
Operator basis_moment(GroupFamily family, int d, int t);

// Exact channel M(rho) = Tr_1[(rho x I) T2]; for these ensembles it
// evaluates to (rho + I) / (d + 1).
Operator measurement_channel(const ShadowProtocol& protocol, const Operator& rho);

// M^{-1}(A) = (d+1) A - tr(A) I.
Operator invert_channel(const Operator& a, int d);

// Frobenius distance between the unitary and symplectic T2 operators.
double channel_distance(int d);
// Frobenius distance between the two T3 operators (d^3 within budget).
double third_moment_equality(int d);

ShadowRecord sample_shadow(const ShadowProtocol& protocol, const Operator& rho,
                           sampling::HaarSampler& sampler, CounterRng& outcome_rng,
                           std::int64_t index);

// Empirical mean/variance of tr(snapshot O) over n_samples records, plus the
// exact mean tr(rho O) and the exact variance from the t = 2,3 moments.
EstimateReport estimate_observable(const ShadowProtocol& protocol, const Operator& rho,
                                   const Operator& obs, std::int64_t n_samples,
                                   int workers = 1);

}  // namespace designlab::shadows
