#include "blockspin/acceptance.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "blockspin/chain.hpp"
#include "blockspin/circulant.hpp"
#include "blockspin/exact.hpp"
#include "blockspin/harness.hpp"
#include "blockspin/landscape.hpp"
#include "blockspin/rng.hpp"
#include "blockspin/sampler.hpp"
#include "blockspin/stats.hpp"

namespace blockspin::acceptance {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void add_check(SuiteResult& suite, const std::string& name, bool pass,
               const std::string& detail) {
  suite.checks.push_back(
      {name, pass ? VerdictStatus::pass : VerdictStatus::fail, detail});
}

// ---------------------------------------------------------------------------
// criterion 1: closed-form correctness (deterministic)
// ---------------------------------------------------------------------------

const std::vector<int> kSizeLadder = {1, 2, 3, 4, 5, 6, 7, 8, 12, 16, 32, 64, 128, 256, 512};

struct ParamPair {
  double beta, alpha;
};
const std::vector<ParamPair> kHighTempPairs = {{0.4, 0.1}, {0.5, 0.2}, {0.3, 0.05}};
const std::vector<ParamPair> kAllPairs = {{0.4, 0.1}, {0.5, 0.2}, {0.8, 0.25}, {0.6, 0.2}};

void check_closed_forms(SuiteResult& suite) {
  // eigenvalue formula vs dense symmetric eigendecomposition (sorted multisets)
  double worst_eig = 0.0;
  for (const auto& p : kAllPairs) {
    for (int s : kSizeLadder) {
      const CirculantSpec spec{s, p.beta, p.alpha};
      std::vector<double> closed = eigenvalues(spec);
      std::sort(closed.begin(), closed.end());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(spec));
      for (int j = 0; j < s; ++j)
        worst_eig = std::max(worst_eig, std::abs(closed[j] - es.eigenvalues()[j]));
    }
  }
  add_check(suite, "eigenvalues_vs_dense", worst_eig < 1e-10,
            "max abs error " + fmt(worst_eig) + " (tol 1e-10, s up to 512)");

  // independent DFT-of-first-row oracle over every s in 2..512
  double worst_dft = 0.0;
  for (int s = 2; s <= 512; ++s) {
    const CirculantSpec spec{s, 0.5, 0.2};
    const Eigen::MatrixXd a = dense(spec);
    std::vector<double> dft(s);
    for (int j = 1; j <= s; ++j) {
      double acc = 0.0;
      for (int k = 0; k < s; ++k)
        acc += a(0, k) * std::cos(2.0 * std::numbers::pi * j * k / s);
      dft[j - 1] = acc;
    }
    std::vector<double> closed = eigenvalues(spec);
    std::sort(closed.begin(), closed.end());
    std::sort(dft.begin(), dft.end());
    for (int j = 0; j < s; ++j)
      worst_dft = std::max(worst_dft, std::abs(closed[j] - dft[j]));
  }
  add_check(suite, "eigenvalues_vs_dft", worst_dft < 1e-10,
            "max abs error " + fmt(worst_dft) + " over all s in 2..512");

  // closed-form (I-A)^{-1} vs LU inversion, and the identity residual
  double worst_inv = 0.0, worst_id = 0.0;
  for (const auto& p : kHighTempPairs) {
    for (int s : kSizeLadder) {
      const CirculantSpec spec{s, p.beta, p.alpha};
      Eigen::MatrixXd closed(s, s);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) closed(i, j) = inverse_I_minus_A_entry(spec, i, j);
      const Eigen::MatrixXd ima = Eigen::MatrixXd::Identity(s, s) - dense(spec);
      const Eigen::MatrixXd lu = ima.partialPivLu().inverse();
      worst_inv = std::max(worst_inv, (closed - lu).cwiseAbs().maxCoeff());
      worst_id = std::max(
          worst_id,
          (closed * ima - Eigen::MatrixXd::Identity(s, s)).cwiseAbs().maxCoeff());
    }
  }
  add_check(suite, "inverse_I_minus_A_vs_lu", worst_inv < 1e-9,
            "max abs error " + fmt(worst_inv) + " (tol 1e-9, s up to 512)");
  add_check(suite, "inverse_identity_residual", worst_id < 1e-9,
            "max |closed*(I-A) - I| " + fmt(worst_id) + " (tol 1e-9)");

  // discrete Poisson identity on a 100-point (r, s, m) grid
  double worst_poisson = 0.0, worst_imag = 0.0;
  int n_points = 0;
  for (double r : {0.05, 0.17157, 0.3, 0.5, 0.75, 0.9, 0.97}) {
    for (int s : {2, 3, 4, 7, 16, 64, 256}) {
      for (int m : {0, 1, s / 2, s - 1}) {
        if (m >= s) continue;
        const PoissonIdentity id = discrete_poisson_check(r, s, m);
        worst_poisson = std::max(worst_poisson, std::abs(id.lhs - id.rhs));
        worst_imag = std::max(worst_imag, std::abs(id.lhs_imag));
        ++n_points;
      }
    }
  }
  add_check(suite, "discrete_poisson_identity",
            worst_poisson < 1e-12 && worst_imag < 1e-12 && n_points >= 100,
            "max residual " + fmt(worst_poisson) + ", max imag " + fmt(worst_imag) +
                " over " + std::to_string(n_points) + " points (tol 1e-12)");

  // Hessian-at-zero eigenvalues vs dense eigendecomposition of A - A^2
  double worst_hess = 0.0;
  for (const auto& p : kAllPairs) {
    for (int s : kSizeLadder) {
      const CirculantSpec spec{s, p.beta, p.alpha};
      std::vector<double> closed = hessian_at_zero_eigenvalues(spec);
      std::sort(closed.begin(), closed.end());
      const Eigen::MatrixXd a = dense(spec);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a - a * a);
      for (int j = 0; j < s; ++j)
        worst_hess = std::max(worst_hess, std::abs(closed[j] - es.eigenvalues()[j]));
    }
  }
  add_check(suite, "hessian_at_zero_vs_dense", worst_hess < 1e-10,
            "max abs error " + fmt(worst_hess) + " (tol 1e-10)");
}

// ---------------------------------------------------------------------------
// criterion 4: landscape calculus (deterministic)
// ---------------------------------------------------------------------------

void check_landscape(SuiteResult& suite, std::uint64_t seed) {
  SplitMix64 rng = SplitMix64::for_stream(seed, 41);

  // gradient vs central finite differences of phi
  double worst_grad = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int s = 2 + static_cast<int>(rng.next_below(31));
    const CirculantSpec spec{s, 0.5, 0.2};
    std::vector<double> x(s);
    for (double& v : x) v = 2.0 * rng.next_double() - 1.0;
    const std::vector<double> g = grad_phi(spec, x);
    const double h = 1e-6;
    for (int k = 0; k < s; ++k) {
      std::vector<double> xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const double fd = (phi(spec, xp) - phi(spec, xm)) / (2.0 * h);
      worst_grad = std::max(worst_grad, std::abs(fd - g[k]));
    }
  }
  add_check(suite, "grad_phi_vs_finite_differences", worst_grad < 1e-6,
            "max abs error " + fmt(worst_grad) + " (tol 1e-6)");

  // Hessian vs central finite differences of the gradient
  double worst_hess = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int s = 2 + static_cast<int>(rng.next_below(15));
    const CirculantSpec spec{s, 0.8, 0.25};
    std::vector<double> x(s);
    for (double& v : x) v = 2.0 * rng.next_double() - 1.0;
    const Eigen::MatrixXd hess = hess_phi(spec, x);
    const double h = 1e-5;
    for (int k = 0; k < s; ++k) {
      std::vector<double> xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      const std::vector<double> gp = grad_phi(spec, xp);
      const std::vector<double> gm = grad_phi(spec, xm);
      for (int i = 0; i < s; ++i)
        worst_hess =
            std::max(worst_hess, std::abs((gp[i] - gm[i]) / (2.0 * h) - hess(i, k)));
    }
  }
  add_check(suite, "hess_phi_vs_finite_differences", worst_hess < 1e-5,
            "max abs error " + fmt(worst_hess) + " (tol 1e-5)");

  // contraction at beta + 2 alpha = 0.9: 50 random starts all reach zero and
  // the empirical contraction ratio respects the spectral bound
  {
    const CirculantSpec spec{8, 0.5, 0.2};
    bool all_zero = true;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> x(8), y(8);
      for (int k = 0; k < 8; ++k) {
        x[k] = 2.0 * rng.next_double() - 1.0;
        y[k] = 2.0 * rng.next_double() - 1.0;
      }
      const FixedPointResult res = fixed_point_iterate(spec, x);
      all_zero = all_zero && res.converged;
      for (double v : res.x) all_zero = all_zero && std::abs(v) < 1e-10;

      const std::vector<double> hx = spec.apply(x);
      const std::vector<double> hy = spec.apply(y);
      double num = 0.0, den = 0.0;
      for (int k = 0; k < 8; ++k) {
        const double dh = std::tanh(hx[k]) - std::tanh(hy[k]);
        const double dx = x[k] - y[k];
        num += dh * dh;
        den += dx * dx;
      }
      worst_ratio = std::max(worst_ratio, std::sqrt(num / den));
    }
    add_check(suite, "fixed_point_contracts_to_zero",
              all_zero && worst_ratio <= 0.9 + 1e-9,
              "50 starts, worst contraction ratio " + fmt(worst_ratio) +
                  " (bound 0.9 + 1e-9)");
  }

  // low temperature: iteration from the all-ones vector agrees with bisection
  // (stopping tolerance 1e-14 so the remaining geometric tail sits well below
  // the 1e-12 agreement bound)
  {
    const CirculantSpec spec{6, 0.8, 0.25};
    const double root = solve_m_star(1.3);
    const FixedPointResult res =
        fixed_point_iterate(spec, std::vector<double>(6, 1.0), 100000, 1e-14);
    double worst = 0.0;
    for (double v : res.x) worst = std::max(worst, std::abs(v - root));
    add_check(suite, "fixed_point_matches_bisection", res.converged && worst < 1e-12,
              "max |x_k - m*| = " + fmt(worst) + " (tol 1e-12), m* = " + fmt(root));
  }

  // -y^4/12 <= G(y) <= 0 on a dense grid
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = -10000; i <= 10000; ++i) {
      const double y = i * 1e-3;
      const double g = log_cosh_deviation(y);
      ok = ok && g <= 1e-15 && g >= -y * y * y * y / 12.0 - 1e-15;
      worst = std::max(worst, g);
    }
    add_check(suite, "log_cosh_deviation_bounds", ok,
              "-y^4/12 <= G(y) <= 0 on [-10, 10] step 1e-3");
  }
}

// ---------------------------------------------------------------------------
// criterion 2: oracle equivalence (deterministic)
// ---------------------------------------------------------------------------

void check_oracle_equivalence(SuiteResult& suite) {
  struct Case {
    int n, s;
    double beta, alpha;
  };
  const std::vector<Case> cases = {
      {12, 3, 0.5, 0.2}, {12, 4, 0.5, 0.2}, {16, 4, 0.5, 0.2}, {12, 3, 0.8, 0.25}};
  double worst_tv = 0.0;
  for (const auto& c : cases) {
    const ModelParams params{c.beta, c.alpha, c.n, c.s, ParamMode::strict};
    worst_tv =
        std::max(worst_tv, total_variation(exact_law(params), spin_level_law(params)));
  }
  add_check(suite, "spin_vs_lattice_enumeration", worst_tv < 1e-12,
            "max TV " + fmt(worst_tv) + " (tol 1e-12) over (N,s) in "
            "{(12,3),(12,4),(16,4)} plus a low-temperature point");

  double worst_z = 0.0;
  for (int s = 2; s <= 6; ++s) {
    for (int b = 1; b <= 4; ++b) {
      const ModelParams params{0.5, 0.2, s * b, s, ParamMode::strict};
      const double z_enum = exact_law(params).log_Z;
      const double z_transfer =
          log_partition_periodic(build_transfer_matrix(ChainSpec::from_params(params)));
      worst_z = std::max(worst_z, std::abs(z_transfer - z_enum));
    }
  }
  add_check(suite, "transfer_trace_vs_enumeration", worst_z < 1e-10,
            "max |log Z difference| " + fmt(worst_z) +
                " (rel tol 1e-10) for s <= 6, block size <= 4");
}

// ---------------------------------------------------------------------------
// criterion 3: sampler exactness (deterministic at kernel level)
// ---------------------------------------------------------------------------

void check_sampler_exactness(SuiteResult& suite, std::uint64_t seed) {
  // detailed balance of the count-level kernel against enumeration pi
  {
    const ModelParams params{0.5, 0.2, 8, 2, ParamMode::strict};
    const ExactLaw law = exact_law(params);
    const int b = params.block_size();
    const int s = params.n_blocks;
    double worst = 0.0;
    for (std::int64_t r = 0; r < law.n_states(); ++r) {
      const BlockCounts counts = law.counts_at(r);
      for (int k = 0; k < s; ++k) {
        const HeatBathRates rates = heat_bath_rates(params, counts, k);
        if (counts[k] < b) {
          BlockCounts up = counts;
          ++up[k];
          const HeatBathRates back = heat_bath_rates(params, up, k);
          const double flow = law.prob(r) * rates.up / s;
          const double rflow = law.prob(law.rank_of(up)) * back.down / s;
          worst = std::max(worst, std::abs(flow - rflow));
        }
      }
    }
    add_check(suite, "detailed_balance_N8_s2", worst < 1e-12,
              "max |pi P - pi' P'| = " + fmt(worst) + " (tol 1e-12)");
  }

  // empirical law after 1e6 sweeps within TV 0.02 of the exact law
  {
    const ModelParams params{0.4, 0.1, 12, 3, ParamMode::strict};
    const ExactLaw law = exact_law(params);
    std::vector<double> hist(static_cast<std::size_t>(law.n_states()), 0.0);
    SamplerConfig sc;
    sc.seed = seed;
    sc.stream = 31;
    sc.burn_in_sweeps = 1000;
    sc.thinning_sweeps = 1;
    sc.n_samples = 1000000;
    sc.init = SamplerConfig::Init::uniform_random;
    ChainState state = make_chain_state(params, sc);
    for (int i = 0; i < sc.burn_in_sweeps; ++i) sweep(params, state);
    for (int n = 0; n < sc.n_samples; ++n) {
      sweep(params, state);
      hist[static_cast<std::size_t>(law.rank_of(state.counts))] += 1.0;
    }
    double tv = 0.0;
    for (std::int64_t r = 0; r < law.n_states(); ++r)
      tv += std::abs(hist[r] / sc.n_samples - law.prob(r));
    tv *= 0.5;
    add_check(suite, "empirical_law_tv_N12_s3", tv < 0.02,
              "TV after 1e6 sweeps = " + fmt(tv) + " (tol 0.02)");
  }
}

// ---------------------------------------------------------------------------
// criterion 7: fixed-block-size chain (deterministic + trend)
// ---------------------------------------------------------------------------

void check_chain(SuiteResult& suite) {
  // vanishing mean total magnetization
  double worst_mean = 0.0;
  for (const auto& p : std::vector<ParamPair>{{0.5, 0.2}, {0.8, 0.25}}) {
    for (int b : {2, 4}) {
      const ChainStats stats = total_magnetization_stats({b, p.beta, p.alpha, 64});
      worst_mean = std::max(worst_mean, std::abs(stats.mean_total));
    }
  }
  add_check(suite, "chain_mean_total_zero", worst_mean < 1e-14,
            "max |mean| = " + fmt(worst_mean) + " (tol 1e-14)");

  // bounded per-block variance of the total magnetization as s doubles 8 -> 256
  {
    bool bounded = true;
    std::string detail;
    for (const auto& p : std::vector<ParamPair>{{0.5, 0.2}, {0.8, 0.25}}) {
      std::vector<double> v;
      for (int s = 8; s <= 256; s *= 2)
        v.push_back(total_magnetization_stats({4, p.beta, p.alpha, s}).variance_per_block);
      // convergence to a finite limit: increments shrink geometrically, the
      // last doubling has converged, and the total spread stays bounded
      for (std::size_t i = 2; i < v.size(); ++i)
        bounded = bounded &&
                  std::abs(v[i] - v[i - 1]) < 0.5 * std::abs(v[i - 1] - v[i - 2]) + 1e-12;
      bounded = bounded && std::abs(v.back() - v[v.size() - 2]) < 1e-9;
      bounded = bounded && v.back() <= v.front() * 1.05;
      detail += "beta=" + fmt(p.beta) + ": v(8)=" + fmt(v.front()) +
                " v(256)=" + fmt(v.back()) + "  ";
    }
    add_check(suite, "chain_variance_bounded", bounded, detail + "(no growth)");
  }

  // pure geometric decay of the two-point function
  {
    const TransferMatrix t = build_transfer_matrix({2, 0.8, 0.25, 256});
    std::vector<double> xs, ys;
    for (int d = 1; d <= 8; ++d) {
      const double c = two_point(t, d);
      if (c <= 0.0) break;
      xs.push_back(d);
      ys.push_back(std::log(c));
    }
    const LinearFit fit = linear_fit(xs, ys);
    const ChainStats stats = total_magnetization_stats({2, 0.8, 0.25, 256});
    const double expected_slope = std::log(std::abs(stats.lambda2) / stats.lambda1);
    add_check(suite, "chain_two_point_geometric_decay",
              xs.size() == 8 && fit.r_squared > 0.999,
              "R^2 = " + fmt(fit.r_squared) + " over distances 1..8, slope " +
                  fmt(fit.slope) + " vs log(lambda2/lambda1) " + fmt(expected_slope));
  }
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

void append_report(SuiteResult& suite, const ExperimentReport& report) {
  suite.reports.push_back(report);
  for (const auto& v : report.verdicts)
    suite.checks.push_back({report.experiment + "." + v.name, v.status, v.detail});
}

void check_lln(SuiteResult& suite, const Options& options) {
  HarnessConfig cfg;
  cfg.seed = options.seed;
  cfg.threads = options.threads;
  cfg.n_replicas = 12;
  cfg.burn_in_sweeps = 400;
  cfg.thinning_sweeps = 5;
  cfg.samples_per_replica = 1000;
  append_report(suite,
                lln_high_temperature(0.5, 0.2, 8, 0.2, {800, 1600, 3200}, 0.05, cfg));

  cfg.burn_in_sweeps = 300;
  cfg.thinning_sweeps = 3;
  append_report(suite, lln_low_temperature(0.8, 0.25, 6, 0.15, {600, 1200, 2400},
                                           0.05, 0.02, cfg));
}

void check_clt(SuiteResult& suite, const Options& options) {
  HarnessConfig cfg;
  cfg.seed = options.seed;
  cfg.threads = options.threads;
  cfg.n_replicas = 12;
  cfg.burn_in_sweeps = 300;
  cfg.thinning_sweeps = 3;
  cfg.samples_per_replica = 1250;
  append_report(suite, clt_high_temperature(0.4, 0.1, 8, 40000, 3, 5000.0, 0.01, cfg));
  append_report(suite,
                clt_low_temperature(0.8, 0.25, 6, 24000, 3, 0.5, 5000.0, cfg));
}

void run_into(SuiteResult& result, const std::string& name, const Options& options) {
  if (name == "closed-forms") {
    const auto start = Clock::now();
    check_closed_forms(result);
    check_landscape(result, options.seed);
    add_check(result, "closed_forms_runtime", elapsed_s(start) < 10.0,
              fmt(elapsed_s(start)) + " s (budget 10 s)");
  } else if (name == "oracle") {
    const auto start = Clock::now();
    check_oracle_equivalence(result);
    check_sampler_exactness(result, options.seed);
    add_check(result, "oracle_runtime", elapsed_s(start) < 120.0,
              fmt(elapsed_s(start)) + " s (budget 2 min)");
  } else if (name == "lln") {
    const auto start = Clock::now();
    check_lln(result, options);
    add_check(result, "lln_runtime", elapsed_s(start) < 900.0,
              fmt(elapsed_s(start)) + " s (budget 15 min)");
  } else if (name == "clt") {
    const auto start = Clock::now();
    check_clt(result, options);
    add_check(result, "clt_runtime", elapsed_s(start) < 1800.0,
              fmt(elapsed_s(start)) + " s (budget 30 min)");
  } else if (name == "chain") {
    check_chain(result);
  } else {
    throw std::invalid_argument("unknown suite: " + name);
  }
}

}  // namespace

bool SuiteResult::all_pass() const {
  for (const auto& c : checks)
    if (c.status != VerdictStatus::pass) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"closed-forms", "oracle", "lln",
                                                 "clt", "chain"};
  return names;
}

SuiteResult run_suite(const std::string& name, const Options& options) {
  const auto start = Clock::now();
  SuiteResult result;
  result.suite = name;
  if (name == "all") {
    for (const auto& sub : suite_names()) run_into(result, sub, options);
  } else {
    run_into(result, name, options);
  }
  result.runtime_s = elapsed_s(start);

  if (!options.out_dir.empty()) {
    std::filesystem::create_directories(options.out_dir);
    for (const auto& report : result.reports) {
      std::ofstream os(std::filesystem::path(options.out_dir) /
                       (report.experiment + ".json"));
      os << report.to_json().dump(2) << "\n";
    }
  }
  return result;
}

void print_suite(const SuiteResult& result, std::ostream& os) {
  for (const auto& c : result.checks) {
    const char* tag = c.status == VerdictStatus::pass
                          ? "[PASS]"
                          : (c.status == VerdictStatus::fail ? "[FAIL]" : "[INCONCLUSIVE]");
    os << tag << " " << c.name << " - " << c.detail << "\n";
  }
  os << (result.all_pass() ? "ALL PASS" : "NOT ALL PASS") << " (" << result.suite
     << ", " << fmt(result.runtime_s) << " s)\n";
}

}  // namespace blockspin::acceptance
