// blockspin: analyze, simulate, enumerate, verify and sweep the block-spin
// mean-field Ising model from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "blockspin/acceptance.hpp"
#include "blockspin/chain.hpp"
#include "blockspin/circulant.hpp"
#include "blockspin/exact.hpp"
#include "blockspin/harness.hpp"
#include "blockspin/io.hpp"
#include "blockspin/landscape.hpp"
#include "blockspin/sampler.hpp"
#include "blockspin/svg.hpp"
#include "blockspin/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace blockspin;

namespace {

struct CommonOpts {
  double beta = 0.5;
  double alpha = 0.2;
  int n_spins = 8000;
  int n_blocks = 8;
  bool relaxed = false;
  std::uint64_t seed = 1;
  std::string out;
  int threads = default_threads();

  ModelParams params() const {
    return {beta, alpha, n_spins, n_blocks,
            relaxed ? ParamMode::relaxed : ParamMode::strict};
  }
  json echo(const std::string& command) const {
    return {{"command", command}, {"version", kVersion},
            {"beta", beta},       {"alpha", alpha},
            {"n_spins", n_spins}, {"n_blocks", n_blocks},
            {"mode", relaxed ? "relaxed" : "strict"},
            {"seed", seed},       {"threads", threads},
            {"out", out}};
  }
};

void add_model_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--beta", opts.beta, "within-block coupling");
  cmd->add_option("--alpha", opts.alpha, "neighbor-block coupling");
  cmd->add_option("--n-spins", opts.n_spins, "total number of spins N");
  cmd->add_option("--n-blocks", opts.n_blocks, "number of blocks s");
  cmd->add_flag("--relaxed", opts.relaxed, "allow alpha = 0 (relaxed mode)");
  cmd->add_option("--seed", opts.seed, "64-bit RNG seed");
  cmd->add_option("--out", opts.out, "output directory");
  cmd->add_option("--threads", opts.threads, "worker cap")
      ->envname("BLOCKSPIN_THREADS");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

void emit_config(const CommonOpts& opts, const json& echo) {
  std::cout << echo.dump(2) << "\n";
  if (!opts.out.empty()) {
    fs::create_directories(opts.out);
    write_text(fs::path(opts.out) / "config.json", echo.dump(2) + "\n");
  }
}

// -------------------------------------------------------------------- analyze

int cmd_analyze(const CommonOpts& opts) {
  const ModelParams params = opts.params();
  params.validate();
  const CirculantSpec spec = CirculantSpec::from_params(params);
  const LandscapeResult landscape = classify_minimizers(params);

  json out = opts.echo("analyze");
  const char* regime = landscape.regime == Regime::high
                           ? "high"
                           : (landscape.regime == Regime::low ? "low" : "critical");
  out["regime"] = regime;
  out["temperature"] = spec.total_temperature();
  out["temperature_gap"] = landscape.temperature_gap;
  out["m_star"] = landscape.m_star;
  out["phi_at_min"] = landscape.phi_at_min;

  const auto lam = eigenvalues(spec);
  out["eigenvalues_A"] = {{"min", *std::min_element(lam.begin(), lam.end())},
                          {"max", *std::max_element(lam.begin(), lam.end())}};
  const auto hess = hessian_at_zero_eigenvalues(spec);
  out["hessian_at_zero"] = {{"min", *std::min_element(hess.begin(), hess.end())},
                            {"max", *std::max_element(hess.begin(), hess.end())}};

  const int d = std::min(4, params.n_blocks);
  if (landscape.regime == Regime::high) {
    out["kappa1"] = kappa1(spec);
    json row = json::array();
    for (int j = 0; j < d; ++j) row.push_back(inverse_I_minus_A_entry(spec, 0, j));
    out["sigma_row0"] = row;
  } else if (landscape.regime == Regime::low) {
    out["kappa5"] = kappa5(spec, landscape.m_star);
    json row = json::array();
    for (int j = 0; j < d; ++j)
      row.push_back(sigma_star_entry_finite(spec, landscape.m_star, 0, j));
    out["sigma_star_row0"] = row;
  }

  std::cout << out.dump(2) << "\n";
  if (!opts.out.empty()) {
    fs::create_directories(opts.out);
    write_text(fs::path(opts.out) / "analyze.json", out.dump(2) + "\n");
  }
  return 0;
}

// ------------------------------------------------------------------- simulate

int cmd_simulate(const CommonOpts& opts, int samples, int thinning, int burn_in,
                 const std::string& init, const std::string& format) {
  const ModelParams params = opts.params();
  params.validate();

  SamplerConfig config;
  config.seed = opts.seed;
  config.burn_in_sweeps = burn_in;
  config.thinning_sweeps = thinning;
  config.n_samples = samples;
  if (init == "all-plus")
    config.init = SamplerConfig::Init::all_plus;
  else if (init == "all-minus")
    config.init = SamplerConfig::Init::all_minus;
  else
    config.init = SamplerConfig::Init::uniform_random;

  json echo = opts.echo("simulate");
  echo["samples"] = samples;
  echo["thinning_sweeps"] = thinning;
  echo["burn_in_sweeps"] = burn_in;
  echo["init"] = init;
  echo["format"] = format;
  emit_config(opts, echo);

  const auto trajectory = collect_samples(params, config);
  if (opts.out.empty()) {
    write_samples_csv(std::cout, trajectory, burn_in + thinning, thinning);
    return 0;
  }

  const fs::path dir(opts.out);
  if (format == "bin") {
    std::ofstream os(dir / "samples.bin", std::ios::binary);
    write_samples_bin(os, trajectory);
  } else {
    std::ofstream os(dir / "samples.csv", std::ios::binary);
    write_samples_csv(os, trajectory, burn_in + thinning, thinning);
  }

  // blocks-by-time heatmap on the fixed [-1, 1] diverging scale
  std::vector<std::vector<double>> grid(params.n_blocks,
                                        std::vector<double>(trajectory.size()));
  for (std::size_t t = 0; t < trajectory.size(); ++t)
    for (int k = 0; k < params.n_blocks; ++k) grid[k][t] = trajectory[t][k];
  write_text(dir / "heatmap.svg", render_heatmap_svg(grid, -1.0, 1.0, 4, 12));
  std::cout << "wrote " << (dir / (format == "bin" ? "samples.bin" : "samples.csv"))
            << " and " << (dir / "heatmap.svg") << "\n";
  return 0;
}

// ---------------------------------------------------------------------- exact

int cmd_exact(const CommonOpts& opts, std::int64_t budget) {
  const ModelParams params = opts.params();
  params.validate();
  const ExactLaw law = exact_law(params, budget);
  const int d = std::min(3, params.n_blocks);
  const auto [mean, cov] = exact_moments(law, d);

  json out = opts.echo("exact");
  out["log_Z"] = law.log_Z;
  out["n_states"] = law.n_states();
  json mean_json = json::array(), cov_json = json::array();
  for (int i = 0; i < d; ++i) {
    mean_json.push_back(mean[i]);
    json row = json::array();
    for (int j = 0; j < d; ++j) row.push_back(cov(i, j));
    cov_json.push_back(row);
  }
  out["mean"] = mean_json;
  out["covariance"] = cov_json;
  std::cout << out.dump(2) << "\n";

  if (!opts.out.empty()) {
    fs::create_directories(opts.out);
    write_text(fs::path(opts.out) / "exact.json", out.dump(2) + "\n");
    std::ofstream os(fs::path(opts.out) / "law.csv", std::ios::binary);
    dump_csv(law, os);
  }
  return 0;
}

// --------------------------------------------------------------------- verify

int cmd_verify(const CommonOpts& opts, const std::string& suite) {
  acceptance::Options options;
  options.seed = opts.seed;
  options.threads = opts.threads;
  options.out_dir = opts.out;

  json echo = opts.echo("verify");
  echo["suite"] = suite;
  std::cout << echo.dump(2) << "\n";

  const acceptance::SuiteResult result = acceptance::run_suite(suite, options);
  acceptance::print_suite(result, std::cout);

  if (!opts.out.empty()) {
    json summary = opts.echo("verify");
    summary["suite"] = suite;
    summary["all_pass"] = result.all_pass();
    json checks = json::array();
    for (const auto& c : result.checks)
      checks.push_back(
          {{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    summary["checks"] = checks;
    fs::create_directories(opts.out);
    write_text(fs::path(opts.out) / ("verify_" + suite + ".json"),
               summary.dump(2) + "\n");
  }
  return result.all_pass() ? 0 : 1;
}

// ---------------------------------------------------------------------- sweep

int cmd_sweep(const CommonOpts& opts, double beta_min, double beta_max, int beta_steps,
              double alpha_min, double alpha_max, int alpha_steps, int samples,
              int thinning, int burn_in) {
  std::vector<double> betas, alphas;
  for (int i = 0; i < beta_steps; ++i)
    betas.push_back(beta_min +
                    (beta_steps > 1 ? i * (beta_max - beta_min) / (beta_steps - 1) : 0.0));
  for (int i = 0; i < alpha_steps; ++i)
    alphas.push_back(
        alpha_min + (alpha_steps > 1 ? i * (alpha_max - alpha_min) / (alpha_steps - 1) : 0.0));

  HarnessConfig cfg;
  cfg.seed = opts.seed;
  cfg.threads = opts.threads;
  cfg.burn_in_sweeps = burn_in;
  cfg.thinning_sweeps = thinning;
  cfg.samples_per_replica = samples;

  json echo = opts.echo("sweep");
  echo["beta_grid"] = betas;
  echo["alpha_grid"] = alphas;
  emit_config(opts, echo);

  const SweepResult result = phase_sweep(betas, alphas, opts.n_spins, opts.n_blocks, cfg);
  std::cout << result.report.to_json().dump(2) << "\n";

  if (!opts.out.empty()) {
    const fs::path dir(opts.out);
    fs::create_directories(dir);
    std::string csv = "beta,alpha,mean_abs_total,se,mean_sup_block\n";
    for (const auto& p : result.grid)
      csv += format_double(p.beta) + "," + format_double(p.alpha) + "," +
             format_double(p.mean_abs_total) + "," + format_double(p.se) + "," +
             format_double(p.mean_sup_block) + "\n";
    write_text(dir / "sweep.csv", csv);

    std::vector<std::vector<double>> grid(alphas.size(),
                                          std::vector<double>(betas.size()));
    for (std::size_t a = 0; a < alphas.size(); ++a)
      for (std::size_t b = 0; b < betas.size(); ++b)
        grid[a][b] = result.grid[a * betas.size() + b].mean_abs_total;
    write_text(dir / "sweep.svg", render_heatmap_svg(grid, 0.0, 1.0, 24, 24));
    write_text(dir / "sweep_report.json", result.report.to_json().dump(2) + "\n");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block-spin mean-field Ising model toolkit (v" +
               std::string(kVersion) + ")"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML file");

  CommonOpts opts;

  auto* analyze = app.add_subcommand("analyze", "closed-form analytic summary");
  add_model_flags(analyze, opts);

  auto* simulate = app.add_subcommand("simulate", "run a seeded heat-bath chain");
  add_model_flags(simulate, opts);
  int samples = 500, thinning = 1, burn_in = 100;
  std::string init = "uniform", format = "csv";
  simulate->add_option("--samples", samples, "number of emitted samples");
  simulate->add_option("--thin", thinning, "sweeps between samples");
  simulate->add_option("--burn-in", burn_in, "burn-in sweeps");
  simulate->add_option("--init", init, "all-plus | all-minus | uniform")
      ->check(CLI::IsMember({"all-plus", "all-minus", "uniform"}));
  simulate->add_option("--format", format, "samples file format")
      ->check(CLI::IsMember({"csv", "bin"}));

  auto* exact = app.add_subcommand("exact", "exact law by lattice enumeration");
  add_model_flags(exact, opts);
  std::int64_t budget = 100000000;
  exact->add_option("--budget", budget, "enumeration state budget");

  auto* verify = app.add_subcommand("verify", "run an acceptance suite");
  add_model_flags(verify, opts);
  std::string suite = "all";
  verify->add_option("--suite", suite, "closed-forms | oracle | lln | clt | chain | all")
      ->check(CLI::IsMember({"closed-forms", "oracle", "lln", "clt", "chain", "all"}));

  auto* sweep = app.add_subcommand("sweep", "phase diagram over a (beta, alpha) grid");
  add_model_flags(sweep, opts);
  double beta_min = 0.45, beta_max = 1.15;
  double alpha_min = 0.1, alpha_max = 0.2;
  int beta_steps = 8, alpha_steps = 2;
  int sweep_samples = 400, sweep_thin = 2, sweep_burn = 250;
  sweep->add_option("--beta-min", beta_min);
  sweep->add_option("--beta-max", beta_max);
  sweep->add_option("--beta-steps", beta_steps);
  sweep->add_option("--alpha-min", alpha_min);
  sweep->add_option("--alpha-max", alpha_max);
  sweep->add_option("--alpha-steps", alpha_steps);
  sweep->add_option("--samples", sweep_samples);
  sweep->add_option("--thin", sweep_thin);
  sweep->add_option("--burn-in", sweep_burn);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(opts);
    if (simulate->parsed())
      return cmd_simulate(opts, samples, thinning, burn_in, init, format);
    if (exact->parsed()) return cmd_exact(opts, budget);
    if (verify->parsed()) return cmd_verify(opts, suite);
    if (sweep->parsed())
      return cmd_sweep(opts, beta_min, beta_max, beta_steps, alpha_min, alpha_max,
                       alpha_steps, sweep_samples, sweep_thin, sweep_burn);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
