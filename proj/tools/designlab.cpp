// Command-line front end: reproducible experiments over the library's
// modules, JSON/CSV records with embedded config and content hash.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "designlab/brauer.hpp"
#include "designlab/circuits.hpp"
#include "designlab/designs.hpp"
#include "designlab/json_writer.hpp"
#include "designlab/kernels.hpp"
#include "designlab/reps.hpp"
#include "designlab/sampling.hpp"
#include "designlab/shadows.hpp"
#include "designlab/weingarten.hpp"

using namespace designlab;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 20240807;
  int streams = 1;
  std::string out;
  std::string format = "json";
  std::size_t budget_dim = 0;
};

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void emit(const GlobalOpts& g, const std::string& subcommand,
          const std::function<void(JsonWriter&)>& write_config,
          const std::function<void(JsonWriter&)>& write_result) {
  JsonWriter w;
  w.begin_object();
  w.key("version").value(kToolVersion);
  w.key("backend").value(kern::backend_name());
  w.key("subcommand").value(subcommand);
  w.key("seed").value(g.seed);
  w.key("streams").value(g.streams);
  w.key("config");
  w.begin_object();
  write_config(w);
  w.end_object();
  w.key("result");
  w.begin_object();
  write_result(w);
  w.end_object();
  std::uint64_t hash = fnv1a64(w.str());
  char hex[20];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  w.key("record_hash").value(hex);
  w.key("timestamp").value(iso_timestamp());
  w.end_object();

  if (g.out.empty()) {
    std::cout << w.str() << "\n";
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw validation_error("cannot open output file: " + g.out);
    f << w.str() << "\n";
  }
}

void emit_text(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw validation_error("cannot open output file: " + g.out);
    f << text;
  }
}

Operator read_operator_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw validation_error("cannot open operator file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return operator_from_json(ss.str());
}

int run_selftest() {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name);
    if (!ok) ++failures;
  };

  {
    bool ok = true;
    for (int t = 1; t <= 5; ++t) {
      long expect = 1;
      for (int k = 2 * t - 1; k > 1; k -= 2) expect *= k;
      ok = ok && static_cast<long>(brauer::enumerate_pairings(t).size()) == expect;
    }
    check("pairing counts (2t-1)!!", ok);
  }
  check("composition table t<=4", [&] {
    for (int t = 1; t <= 4; ++t) {
      if (!brauer::composition_table_check(t)) return false;
    }
    return true;
  }());
  {
    bool ok = true;
    auto all = brauer::enumerate_pairings(2);
    for (const auto& a : all) {
      for (const auto& b : all) {
        Operator fa = reps::brauer_rep(a, 2, reps::BrauerSign::homomorphic).to_dense();
        Operator fb = reps::brauer_rep(b, 2, reps::BrauerSign::homomorphic).to_dense();
        auto prod = brauer::compose(a, b);
        Operator fc = reps::brauer_rep(prod.diagram, 2, reps::BrauerSign::homomorphic).to_dense();
        scale(fc, cplx{std::pow(-2.0, prod.loop_power), 0.0});
        ok = ok && frobenius_distance(matmul(fa, fb), fc) < 1e-10;
      }
    }
    check("(-d)^loops composition rule, t=2 d=2", ok);
  }
  {
    sampling::EnsembleSpec spec{GroupFamily::Symplectic, 4, 1, 0};
    auto u = sampling::HaarSampler(spec).next();
    check("symplectic sampler form constraint",
          sampling::symplectic_residual(u, 4) < 1e-12 &&
              sampling::unitarity_residual(u, 4) < 1e-12);
  }
  {
    auto rep = designs::state_design_test(GroupFamily::Symplectic, 2, 4, designs::Mode::exact);
    check("exact symplectic state design t=2 d=4", rep.verdict);
  }
  {
    wg::CommutantBasis basis = wg::build_basis(GroupFamily::Symplectic, 2, 4);
    std::vector<double> ones{1.0, 1.0, 0.0};
    auto wv = matvec(basis.gram, ones);
    bool ok = std::abs(wv[0] - 20.0) < 1e-10 && std::abs(wv[1] - 20.0) < 1e-10 &&
              std::abs(wv[2]) < 1e-10;
    check("Gram permutation-block eigenvector", ok);
  }
  check("shadow channels identical at d=4", shadows::channel_distance(4) < 1e-10);
  {
    circuits::MomentOperator mo(
        circuits::BrickArchitecture::make(2, circuits::ArchStyle::unitary));
    auto gap = circuits::spectral_gap(mo, 1e-10, 100);
    check("single-gate layer gap is zero", gap.converged && std::abs(gap.lambda) < 1e-10);
  }
  {
    bool ok = true;
    CounterRng rng(5, 0);
    std::vector<cplx> x(257), y(257);
    for (auto& v : x) v = rng.next_cgaussian();
    for (auto& v : y) v = rng.next_cgaussian();
    kern::Backend initial = kern::active_backend();
    kern::set_backend(kern::Backend::scalar);
    cplx ref = kern::dotc(x.size(), x.data(), y.data());
    kern::set_backend(initial);
    cplx got = kern::dotc(x.size(), x.data(), y.data());
    ok = std::abs(ref - got) < 1e-12 * (1.0 + std::abs(ref));
    check("kernel backend equivalence", ok);
  }

  std::printf("%s\n", failures == 0 ? "selftest: all checks passed" : "selftest: FAILURES");
  return failures == 0 ? 0 : 1;
}

GroupFamily parse_family(const std::string& s) { return family_from_name(s); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"designlab: exact and Monte-Carlo group-moment computations"};
  app.require_subcommand(1);
  // Let global flags appear after the subcommand as well.
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "base RNG seed");
  app.add_option("--streams", g.streams, "worker parallelism (results independent of it)");
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "json or csv (csv for sweep tables only)");
  app.add_option("--budget-dim", g.budget_dim, "max operator dimension d^t");

  // pairings
  auto* cmd_pairings = app.add_subcommand("pairings", "enumerate Brauer diagrams");
  int p_t = 2;
  bool p_count_only = false, p_check_table = false;
  cmd_pairings->add_option("--t", p_t, "diagram size")->required();
  cmd_pairings->add_flag("--count-only", p_count_only);
  cmd_pairings->add_flag("--check-table", p_check_table, "verify the S/J composition table");

  // twirl
  auto* cmd_twirl = app.add_subcommand("twirl", "exact Weingarten twirl");
  std::string tw_family = "sp", tw_input;
  int tw_t = 2, tw_d = 4;
  cmd_twirl->add_option("--family", tw_family, "u | sp | o")->required();
  cmd_twirl->add_option("--t", tw_t)->required();
  cmd_twirl->add_option("--d", tw_d)->required();
  cmd_twirl->add_option("--input", tw_input, "operator JSON (default |0..0><0..0|^t)");

  // design-test
  auto* cmd_design = app.add_subcommand("design-test", "state design distance to Pi_sym");
  std::string dt_family = "sp", dt_mode = "exact";
  int dt_t = 2, dt_d = 4;
  std::vector<std::int64_t> dt_samples;
  cmd_design->add_option("--family", dt_family)->required();
  cmd_design->add_option("--t", dt_t)->required();
  cmd_design->add_option("--d", dt_d)->required();
  cmd_design->add_option("--mode", dt_mode, "exact | mc");
  cmd_design->add_option("--samples", dt_samples, "MC sample count (repeat for a sweep)");

  // lemma1
  auto* cmd_lemma = app.add_subcommand("lemma1", "annihilation residuals per diagram");
  int l_t = 2, l_d = 4, l_states = 5;
  cmd_lemma->add_option("--t", l_t)->required();
  cmd_lemma->add_option("--d", l_d)->required();
  cmd_lemma->add_option("--states", l_states, "number of random reference states");

  // mixed-gap
  auto* cmd_gapm = app.add_subcommand("mixed-gap", "rank-two U vs SP twirl gap");
  double mg_lambda0 = 0.5;
  int mg_d = 4;
  bool mg_partner = false;
  cmd_gapm->add_option("--lambda0", mg_lambda0)->required();
  cmd_gapm->add_option("--d", mg_d)->required();
  cmd_gapm->add_flag("--partner-embedding", mg_partner,
                     "place the second component on the Omega partner of the first");

  // shadows
  auto* cmd_shadows = app.add_subcommand("shadows", "classical-shadow estimator");
  std::string sh_family = "sp", sh_obs_file, sh_rho_file;
  int sh_d = 4;
  std::int64_t sh_samples = 10000;
  cmd_shadows->add_option("--family", sh_family)->required();
  cmd_shadows->add_option("--d", sh_d)->required();
  cmd_shadows->add_option("--samples", sh_samples)->required();
  cmd_shadows->add_option("--observable", sh_obs_file, "observable operator JSON");
  cmd_shadows->add_option("--rho", sh_rho_file, "state operator JSON");

  // gap
  auto* cmd_gap = app.add_subcommand("gap", "brick-layer spectral gap");
  int gp_n = 3, gp_n_max = 0, gp_max_iters = 6000, gp_block = 3;
  double gp_tol = 1e-8;
  std::string gp_arch = "unitary";
  cmd_gap->add_option("--n", gp_n, "qubit count")->required();
  cmd_gap->add_option("--n-max", gp_n_max, "sweep up to this qubit count");
  cmd_gap->add_option("--architecture", gp_arch, "unitary | symplectic");
  cmd_gap->add_option("--tol", gp_tol);
  cmd_gap->add_option("--max-iters", gp_max_iters);
  cmd_gap->add_option("--block", gp_block, "subspace iteration block size");

  // ratio
  auto* cmd_ratio = app.add_subcommand("ratio", "parameter-count ratio of two layer ensembles");
  double r_lu = 0.64, r_lsp = 0.6461, r_nu = 15.0, r_nsp = 6.0;
  cmd_ratio->add_option("--lambda-u", r_lu)->required();
  cmd_ratio->add_option("--lambda-sp", r_lsp)->required();
  cmd_ratio->add_option("--params-u", r_nu)->required();
  cmd_ratio->add_option("--params-sp", r_nsp)->required();

  auto* cmd_selftest = app.add_subcommand("selftest", "run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (const char* env = std::getenv("DESIGNLAB_BUDGET_DIM"); env && g.budget_dim == 0) {
      g.budget_dim = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
    }
    if (g.budget_dim > 0) budget().max_dim = g.budget_dim;
    if (g.format != "json" && g.format != "csv") {
      throw validation_error("unknown format: " + g.format);
    }
    if (g.streams < 1) throw validation_error("--streams must be >= 1");

    if (*cmd_pairings) {
      auto all = brauer::enumerate_pairings(p_t);
      bool table_ok = p_check_table ? brauer::composition_table_check(p_t) : true;
      emit(
          g, "pairings",
          [&](JsonWriter& w) {
            w.key("t").value(p_t);
            w.key("count_only").value(p_count_only);
            w.key("check_table").value(p_check_table);
          },
          [&](JsonWriter& w) {
            w.key("count").value(static_cast<std::int64_t>(all.size()));
            if (p_check_table) w.key("table_ok").value(table_ok);
            if (!p_count_only) {
              w.key("diagrams").begin_array();
              for (const auto& p : all) w.value(brauer::to_string(p));
              w.end_array();
              w.key("propagating").begin_array();
              for (const auto& p : all) w.value(brauer::propagating_number(p));
              w.end_array();
            }
          });
      return table_ok ? 0 : 1;
    }

    if (*cmd_twirl) {
      GroupFamily fam = parse_family(tw_family);
      wg::CommutantBasis basis = wg::build_basis(fam, tw_t, tw_d);
      Operator x = tw_input.empty()
                       ? [&] {
                           std::vector<cplx> psi = designs::basis_state(tw_d, 0);
                           std::vector<cplx> psit = tensor_power(psi, tw_t);
                           Operator op = Operator::dense_zero(tw_d, tw_t);
                           for (std::size_t r = 0; r < op.dim; ++r) {
                             for (std::size_t c = 0; c < op.dim; ++c) {
                               op.a[r * op.dim + c] = psit[r] * std::conj(psit[c]);
                             }
                           }
                           return op;
                         }()
                       : read_operator_file(tw_input);
      wg::TwirlResult tw = wg::twirl(x, basis, false);
      emit(
          g, "twirl",
          [&](JsonWriter& w) {
            w.key("family").value(family_name(fam));
            w.key("t").value(tw_t);
            w.key("d").value(tw_d);
            w.key("input").value(tw_input.empty() ? "|0..0><0..0|^t" : tw_input);
          },
          [&](JsonWriter& w) {
            w.key("coefficients").begin_array();
            for (double c : tw.coeffs) w.value(c);
            w.end_array();
            w.key("basis_labels").begin_array();
            for (const auto& l : basis.labels) w.value(l);
            w.end_array();
            w.key("trace_in").value(tw.trace_in.real());
            w.key("trace_out").value(tw.trace_out.real());
            w.key("max_imag_coeff").value(tw.max_imag_coeff);
            w.key("gram_rank").value(basis.rank);
          });
      return 0;
    }

    if (*cmd_design) {
      GroupFamily fam = parse_family(dt_family);
      designs::Mode mode =
          dt_mode == "exact" ? designs::Mode::exact : designs::Mode::monte_carlo;
      if (dt_mode != "exact" && dt_mode != "mc") {
        throw validation_error("mode must be exact or mc");
      }
      if (mode == designs::Mode::monte_carlo && dt_samples.empty()) {
        throw validation_error("mc mode requires --samples");
      }
      std::vector<designs::DesignReport> reports;
      if (mode == designs::Mode::exact) {
        reports.push_back(designs::state_design_test(fam, dt_t, dt_d, mode));
      } else {
        for (std::int64_t n : dt_samples) {
          reports.push_back(
              designs::state_design_test(fam, dt_t, dt_d, mode, n, g.seed, nullptr, 5.0,
                                         g.streams));
        }
      }
      if (g.format == "csv") {
        std::string csv = "family,t,d,mode,samples,distance,tolerance,verdict\n";
        for (const auto& r : reports) {
          csv += std::string(family_name(r.family)) + "," + std::to_string(r.t) + "," +
                 std::to_string(r.d) + "," + (r.mode == designs::Mode::exact ? "exact" : "mc") +
                 "," + std::to_string(r.samples) + "," + format_double17(r.distance) + "," +
                 format_double17(r.tolerance) + "," + (r.verdict ? "true" : "false") + "\n";
        }
        emit_text(g, csv);
        return 0;
      }
      emit(
          g, "design-test",
          [&](JsonWriter& w) {
            w.key("family").value(family_name(fam));
            w.key("t").value(dt_t);
            w.key("d").value(dt_d);
            w.key("mode").value(dt_mode);
          },
          [&](JsonWriter& w) {
            w.key("reports").begin_array();
            for (const auto& r : reports) {
              w.begin_object();
              w.key("samples").value(r.samples);
              w.key("distance").value(r.distance);
              w.key("tolerance").value(r.tolerance);
              w.key("verdict").value(r.verdict);
              w.end_object();
            }
            w.end_array();
          });
      return 0;
    }

    if (*cmd_lemma) {
      CounterRng rng(g.seed, 0);
      struct StateSummary {
        double max_nonperm = 0.0;
        double min_perm = 1e300;
      };
      std::vector<StateSummary> summaries;
      for (int k = 0; k < l_states; ++k) {
        std::vector<cplx> psi = designs::random_state(l_d, rng);
        auto rows = designs::annihilation_residuals(l_t, l_d, psi);
        StateSummary s;
        for (const auto& row : rows) {
          double m = std::max(std::max(row.state_left, row.state_right),
                              std::max(row.proj_left, row.proj_right));
          if (row.is_perm) {
            s.min_perm = std::min(s.min_perm, row.state_left);
          } else {
            s.max_nonperm = std::max(s.max_nonperm, m);
          }
        }
        summaries.push_back(s);
      }
      emit(
          g, "lemma1",
          [&](JsonWriter& w) {
            w.key("t").value(l_t);
            w.key("d").value(l_d);
            w.key("states").value(l_states);
          },
          [&](JsonWriter& w) {
            w.key("per_state").begin_array();
            for (const auto& s : summaries) {
              w.begin_object();
              w.key("max_nonperm_residual").value(s.max_nonperm);
              w.key("min_perm_norm").value(s.min_perm);
              w.end_object();
            }
            w.end_array();
          });
      return 0;
    }

    if (*cmd_gapm) {
      auto rep = designs::mixed_state_gap(mg_lambda0, mg_d, mg_partner);
      emit(
          g, "mixed-gap",
          [&](JsonWriter& w) {
            w.key("lambda0").value(rep.lambda0);
            w.key("d").value(rep.d);
            w.key("partner_embedding").value(mg_partner);
          },
          [&](JsonWriter& w) {
            w.key("lambda1").value(rep.lambda1);
            w.key("gap").value(rep.gap);
            w.key("closed_form_applicable").value(rep.closed_form_applicable);
            w.key("closed_u_residual").value(rep.closed_u_residual);
            w.key("closed_sp_residual").value(rep.closed_sp_residual);
            w.key("coeffs_u").begin_array();
            for (double c : rep.coeffs_u) w.value(c);
            w.end_array();
            w.key("coeffs_sp").begin_array();
            for (double c : rep.coeffs_sp) w.value(c);
            w.end_array();
          });
      return 0;
    }

    if (*cmd_shadows) {
      GroupFamily fam = parse_family(sh_family);
      shadows::ShadowProtocol proto{sampling::EnsembleSpec{fam, sh_d, g.seed, 0}};
      Operator rho = sh_rho_file.empty()
                         ? [&] {
                             Operator r = Operator::dense_zero(sh_d, 1);
                             r.a[0] = cplx{1.0, 0.0};
                             return r;
                           }()
                         : read_operator_file(sh_rho_file);
      Operator obs = sh_obs_file.empty()
                         ? [&] {
                             Operator o = Operator::dense_zero(sh_d, 1);
                             o.a[0] = cplx{1.0 / std::sqrt(2.0), 0.0};
                             o.a[static_cast<std::size_t>(sh_d) + 1] =
                                 cplx{-1.0 / std::sqrt(2.0), 0.0};
                             return o;
                           }()
                         : read_operator_file(sh_obs_file);
      auto rep = shadows::estimate_observable(proto, rho, obs, sh_samples, g.streams);
      double chan_dist = shadows::channel_distance(sh_d);
      emit(
          g, "shadows",
          [&](JsonWriter& w) {
            w.key("family").value(family_name(fam));
            w.key("d").value(sh_d);
            w.key("samples").value(sh_samples);
            w.key("observable").value(sh_obs_file.empty() ? "default" : sh_obs_file);
            w.key("rho").value(sh_rho_file.empty() ? "|0><0|" : sh_rho_file);
          },
          [&](JsonWriter& w) {
            w.key("mean").value(rep.mean);
            w.key("variance").value(rep.variance);
            w.key("stderr").value(rep.std_error);
            w.key("exact_mean").value(rep.exact_mean);
            w.key("exact_variance").value(rep.exact_variance);
            w.key("channel_distance").value(chan_dist);
          });
      return 0;
    }

    if (*cmd_gap) {
      circuits::ArchStyle style;
      if (gp_arch == "unitary") {
        style = circuits::ArchStyle::unitary;
      } else if (gp_arch == "symplectic") {
        style = circuits::ArchStyle::symplectic;
      } else {
        throw validation_error("architecture must be unitary or symplectic");
      }
      int hi = gp_n_max > 0 ? gp_n_max : gp_n;
      if (hi < gp_n) throw validation_error("--n-max must be >= --n");
      std::vector<std::pair<int, circuits::GapReport>> rows;
      for (int n = gp_n; n <= hi; ++n) {
        circuits::MomentOperator mo(circuits::BrickArchitecture::make(n, style));
        rows.emplace_back(
            n, circuits::spectral_gap(mo, gp_tol, gp_max_iters, g.seed, gp_block));
      }
      if (g.format == "csv") {
        std::string csv = "n,architecture,lambda,iterations,residual\n";
        for (const auto& [n, r] : rows) {
          csv += std::to_string(n) + "," + gp_arch + "," + format_double17(r.lambda) + "," +
                 std::to_string(r.iterations) + "," + format_double17(r.residual) + "\n";
        }
        emit_text(g, csv);
        return 0;
      }
      emit(
          g, "gap",
          [&](JsonWriter& w) {
            w.key("architecture").value(gp_arch);
            w.key("n").value(gp_n);
            if (gp_n_max > 0) w.key("n_max").value(gp_n_max);
            w.key("tol").value(gp_tol);
            w.key("max_iters").value(gp_max_iters);
          },
          [&](JsonWriter& w) {
            w.key("reports").begin_array();
            for (const auto& [n, r] : rows) {
              w.begin_object();
              w.key("n").value(n);
              w.key("lambda").value(r.lambda);
              w.key("iterations").value(r.iterations);
              w.key("residual").value(r.residual);
              w.end_object();
            }
            w.end_array();
          });
      return 0;
    }

    if (*cmd_ratio) {
      double ratio = circuits::parameter_ratio(r_lu, r_lsp, r_nu, r_nsp);
      emit(
          g, "ratio",
          [&](JsonWriter& w) {
            w.key("lambda_u").value(r_lu);
            w.key("lambda_sp").value(r_lsp);
            w.key("params_u").value(r_nu);
            w.key("params_sp").value(r_nsp);
          },
          [&](JsonWriter& w) { w.key("ratio").value(ratio); });
      return 0;
    }

    if (*cmd_selftest) {
      return run_selftest();
    }
  } catch (const budget_error& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const convergence_error& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 4;
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
