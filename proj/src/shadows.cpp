#include "designlab/shadows.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "designlab/weingarten.hpp"

namespace designlab::shadows {

namespace {

constexpr std::int64_t kStreamChunk = 4096;

Operator diag_power_sum(int d, int t) {
  // sum_w |w..w><w..w|; the index of |w..w| is w * (1 + d + ... + d^{t-1}).
  checked_pow_dim(d, t);
  std::vector<CooEntry> nz;
  nz.reserve(d);
  std::uint64_t unit = 0;
  std::uint64_t p = 1;
  for (int k = 0; k < t; ++k) {
    unit += p;
    p *= static_cast<std::uint64_t>(d);
  }
  for (int w = 0; w < d; ++w) {
    std::uint64_t idx = unit * static_cast<std::uint64_t>(w);
    nz.push_back({idx, idx, cplx{1.0, 0.0}});
  }
  return Operator::from_coo(d, t, std::move(nz));
}

void require_state(const Operator& rho, int d) {
  if (rho.dim != static_cast<std::size_t>(d)) {
    throw validation_error("state dimension does not match the protocol");
  }
  if (!is_hermitian(rho, 1e-10)) throw validation_error("state must be Hermitian");
  if (std::abs(trace(rho).real() - 1.0) > 1e-8) {
    throw validation_error("state must have unit trace");
  }
}

struct MomentAccum {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  void add(double x) {
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
    s4 += x * x * x * x;
  }
  void combine(const MomentAccum& o) {
    s1 += o.s1;
    s2 += o.s2;
    s3 += o.s3;
    s4 += o.s4;
  }
};

}  // namespace

Operator basis_moment(GroupFamily family, int d, int t) {
  wg::CommutantBasis basis = wg::build_basis(family, t, d);
  Operator x = diag_power_sum(d, t);
  return wg::twirl(x, basis).op;
}

Operator measurement_channel(const ShadowProtocol& protocol, const Operator& rho) {
  const int d = protocol.ensemble.d;
  require_state(rho, d);
  Operator t2 = basis_moment(protocol.ensemble.family, d, 2);
  Operator rho_d = rho.to_dense();

  // M(rho)_{b b'} = sum_{a c} rho_{a c} T_{(c b),(a b')}
  Operator out = Operator::dense_zero(d, 1);
  const std::size_t dim2 = t2.dim;
  for (int b = 0; b < d; ++b) {
    for (int bp = 0; bp < d; ++bp) {
      cplx s{0.0, 0.0};
      for (int a = 0; a < d; ++a) {
        for (int c = 0; c < d; ++c) {
          s += rho_d.a[static_cast<std::size_t>(a) * d + c] *
               t2.a[(static_cast<std::size_t>(c) * d + b) * dim2 +
                    static_cast<std::size_t>(a) * d + bp];
        }
      }
      out.a[static_cast<std::size_t>(b) * d + bp] = s;
    }
  }
  return out;
}

Operator invert_channel(const Operator& a, int d) {
  if (a.dim != static_cast<std::size_t>(d)) throw validation_error("dimension mismatch");
  if (!is_hermitian(a, 1e-10)) throw validation_error("invert_channel expects a Hermitian input");
  Operator out = a.to_dense();
  scale(out, cplx{static_cast<double>(d) + 1.0, 0.0});
  cplx tr = trace(a);
  for (int i = 0; i < d; ++i) out.a[static_cast<std::size_t>(i) * d + i] -= tr;
  return out;
}

double channel_distance(int d) {
  return frobenius_distance(basis_moment(GroupFamily::Unitary, d, 2),
                            basis_moment(GroupFamily::Symplectic, d, 2));
}

double third_moment_equality(int d) {
  if (d * d * d > 64) throw budget_error("third moment supported for d^3 <= 64");
  return frobenius_distance(basis_moment(GroupFamily::Unitary, d, 3),
                            basis_moment(GroupFamily::Symplectic, d, 3));
}

ShadowRecord sample_shadow(const ShadowProtocol& protocol, const Operator& rho,
                           sampling::HaarSampler& sampler, CounterRng& outcome_rng,
                           std::int64_t index) {
  const int d = protocol.ensemble.d;
  std::vector<cplx> u = sampler.next();
  Operator rho_d = rho.to_dense();

  // Born probabilities p_w = <w| U rho U^dag |w>.
  std::vector<double> p(d, 0.0);
  double total = 0.0;
  for (int w = 0; w < d; ++w) {
    cplx s{0.0, 0.0};
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        s += u[static_cast<std::size_t>(w) * d + i] * rho_d.a[static_cast<std::size_t>(i) * d + j] *
             std::conj(u[static_cast<std::size_t>(w) * d + j]);
      }
    }
    p[w] = std::max(0.0, s.real());
    total += p[w];
  }
  double r = outcome_rng.next_double() * total;
  int w = 0;
  double cum = 0.0;
  for (; w < d - 1; ++w) {
    cum += p[w];
    if (r < cum) break;
  }

  // snapshot = (d+1) U^dag |w><w| U - I
  Operator snap = Operator::dense_zero(d, 1);
  for (int i = 0; i < d; ++i) {
    cplx phi_i = std::conj(u[static_cast<std::size_t>(w) * d + i]);
    for (int j = 0; j < d; ++j) {
      cplx phi_j = std::conj(u[static_cast<std::size_t>(w) * d + j]);
      snap.a[static_cast<std::size_t>(i) * d + j] =
          (static_cast<double>(d) + 1.0) * phi_i * std::conj(phi_j);
    }
    snap.a[static_cast<std::size_t>(i) * d + i] -= 1.0;
  }
  return {index, w, std::move(snap)};
}

EstimateReport estimate_observable(const ShadowProtocol& protocol, const Operator& rho,
                                   const Operator& obs, std::int64_t n_samples,
                                   int workers) {
  const int d = protocol.ensemble.d;
  if (n_samples < 1) throw validation_error("estimator requires n_samples >= 1");
  require_state(rho, d);
  if (obs.dim != static_cast<std::size_t>(d)) throw validation_error("observable dimension mismatch");
  if (!is_hermitian(obs, 1e-10)) throw validation_error("observable must be Hermitian");

  // Startup self-test: the (rho + I)/(d+1) closed form against the exact
  // Weingarten channel.
  {
    Operator mc = measurement_channel(protocol, rho);
    Operator cf = rho.to_dense();
    cplx tr = trace(rho);
    for (int i = 0; i < d; ++i) cf.a[static_cast<std::size_t>(i) * d + i] += tr;
    scale(cf, cplx{1.0 / (static_cast<double>(d) + 1.0), 0.0});
    if (frobenius_distance(mc, cf) > 1e-10) {
      throw convergence_error("channel closed form disagrees with the exact twirl");
    }
  }

  Operator rho_d = rho.to_dense();
  Operator obs_d = obs.to_dense();
  Operator inv_o = invert_channel(obs_d, d);
  const double tr_o = trace(obs_d).real();

  // Exact protocol moments.
  Operator t2 = basis_moment(protocol.ensemble.family, d, 2);
  Operator t3 = basis_moment(protocol.ensemble.family, d, 3);
  Operator rb = kron(rho_d, inv_o);
  double exact_mean = trace_product(rb.to_coo(1e-300), t2).real();
  Operator rbb = kron(rb, inv_o);
  double e_sq = trace_product(rbb.to_coo(1e-300), t3).real();
  double exact_variance = e_sq - exact_mean * exact_mean;

  const std::int64_t n_streams = (n_samples + kStreamChunk - 1) / kStreamChunk;
  std::vector<MomentAccum> partial(static_cast<std::size_t>(n_streams));

  auto run_stream = [&](std::int64_t s) {
    sampling::EnsembleSpec stream_spec = protocol.ensemble;
    stream_spec.stream_id = protocol.ensemble.stream_id + static_cast<std::uint64_t>(s);
    sampling::HaarSampler sampler(stream_spec);
    CounterRng outcome_rng(stream_spec.seed ^ 0x53484144u, stream_spec.stream_id);
    std::int64_t lo = s * kStreamChunk;
    std::int64_t hi = std::min(n_samples, lo + kStreamChunk);
    MomentAccum acc;
    for (std::int64_t i = lo; i < hi; ++i) {
      std::vector<cplx> u = sampler.next();
      // probabilities and per-outcome estimates from U rho U^dag, U O U^dag
      std::vector<double> p(d, 0.0);
      double total = 0.0;
      for (int w = 0; w < d; ++w) {
        cplx pr{0.0, 0.0};
        for (int a = 0; a < d; ++a) {
          cplx row{0.0, 0.0};
          for (int b = 0; b < d; ++b) {
            row += rho_d.a[static_cast<std::size_t>(a) * d + b] *
                   std::conj(u[static_cast<std::size_t>(w) * d + b]);
          }
          pr += u[static_cast<std::size_t>(w) * d + a] * row;
        }
        p[w] = std::max(0.0, pr.real());
        total += p[w];
      }
      double r = outcome_rng.next_double() * total;
      int w = 0;
      double cum = 0.0;
      for (; w < d - 1; ++w) {
        cum += p[w];
        if (r < cum) break;
      }
      cplx oww{0.0, 0.0};
      for (int a = 0; a < d; ++a) {
        cplx row{0.0, 0.0};
        for (int b = 0; b < d; ++b) {
          row += obs_d.a[static_cast<std::size_t>(a) * d + b] *
                 std::conj(u[static_cast<std::size_t>(w) * d + b]);
        }
        oww += u[static_cast<std::size_t>(w) * d + a] * row;
      }
      acc.add((static_cast<double>(d) + 1.0) * oww.real() - tr_o);
    }
    partial[static_cast<std::size_t>(s)] = acc;
  };

  if (workers <= 1 || n_streams == 1) {
    for (std::int64_t s = 0; s < n_streams; ++s) run_stream(s);
  } else {
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
      while (true) {
        std::int64_t s = next.fetch_add(1);
        if (s >= n_streams) break;
        run_stream(s);
      }
    };
    std::vector<std::thread> pool;
    int n_workers = std::min<std::int64_t>(workers, n_streams);
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  MomentAccum total;
  for (const auto& acc : partial) total.combine(acc);

  EstimateReport report;
  report.samples = n_samples;
  const double n = static_cast<double>(n_samples);
  double mu = total.s1 / n;
  double m2 = total.s2 / n - mu * mu;
  double m4 = total.s4 / n - 4.0 * mu * total.s3 / n + 6.0 * mu * mu * total.s2 / n -
              3.0 * mu * mu * mu * mu;
  report.mean = mu;
  report.variance = n_samples > 1 ? m2 * n / (n - 1.0) : 0.0;
  report.std_error = std::sqrt(std::max(0.0, report.variance / n));
  report.exact_mean = exact_mean;
  report.exact_variance = exact_variance;
  report.variance_std_error = std::sqrt(std::max(0.0, (m4 - m2 * m2) / n));
  return report;
}

}  // namespace designlab::shadows
