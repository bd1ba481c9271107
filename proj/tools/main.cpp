// Command-line front end: ingest count data, fit the discrete Pareto-type
// models, run diagnostics, and drive the simulation studies. All randomness
// flows from --seed; --jobs only changes wall time, never output bytes.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "degpd/data.hpp"
#include "degpd/format.hpp"
#include "degpd/gof.hpp"
#include "degpd/inference.hpp"
#include "degpd/models.hpp"
#include "degpd/serialize.hpp"
#include "degpd/simlab.hpp"

namespace {

using namespace degpd;

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  file << content;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  return values;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ','))
    if (!item.empty()) values.push_back(std::stoll(item));
  return values;
}

struct ParamFlags {
  double pi = 0.0;
  double kappa = 1.0;
  double beta = 1.0;
  double xi = 0.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pi", pi, "zero-inflation probability (zidegpd only)");
    cmd->add_option("--kappa", kappa, "carrier shape (degpd/zidegpd)");
    cmd->add_option("--beta", beta, "GPD scale");
    cmd->add_option("--xi", xi, "GPD shape (tail index)");
  }

  ParamVector build(const ModelSpec& spec) const {
    switch (spec.family) {
      case Family::DGPD: return ParamVector::for_dgpd(beta, xi);
      case Family::DEGPD: return ParamVector::for_degpd(kappa, beta, xi);
      case Family::ZIDEGPD: return ParamVector::for_zidegpd(pi, kappa, beta, xi);
    }
    throw std::logic_error("unknown family");
  }
};

std::string summary_table(const std::vector<CellSummary>& summaries) {
  std::string out = "model,threshold,parameter,median,q1,q3,fitted,skipped\n";
  for (const auto& cell : summaries) {
    out += cell.model;
    out += ',';
    if (cell.threshold) out += std::to_string(*cell.threshold);
    out += ',';
    out += cell.parameter;
    out += ',';
    out += double_to_string(cell.median);
    out += ',';
    out += double_to_string(cell.q1);
    out += ',';
    out += double_to_string(cell.q3);
    out += ',';
    out += std::to_string(cell.fitted);
    out += ',';
    out += std::to_string(cell.skipped);
    out += '\n';
  }
  return out;
}

// Resolve the (spec, params, threshold) triple for the diagnostic commands:
// either read a stored fit or fit the ingested data on the fly.
struct ResolvedModel {
  ModelSpec spec;
  ParamVector params;
  std::optional<std::int64_t> threshold;
};

ResolvedModel resolve_model(const std::string& fit_path, const std::string& model,
                            double omega, const CountSample& data) {
  if (!fit_path.empty()) {
    const FitResult fit = load_fit_result(fit_path);
    return {fit.spec, fit.estimates, fit.threshold};
  }
  if (model.empty())
    throw std::runtime_error("either --model or --fit is required");
  const ModelSpec spec = ModelSpec::parse(model, omega);
  const FitResult fit = fit_mle(data, spec);
  return {spec, fit.estimates, std::nullopt};
}

int run(int argc, char** argv) {
  CLI::App app{
      "Count-data modeling with discrete extended generalized Pareto "
      "distributions: fitting, diagnostics, and simulation studies"};
  app.require_subcommand(1);

  std::string input, output = "-", model, fit_path, format = "json";
  std::string models_csv = "dgpd,degpd-m1,degpd-m2,degpd-m3";
  std::string m_grid_csv = "2,5,10,20,50,100,200,500,1000";
  std::string thresholds_csv = "0,1,2,3,4,5";
  double omega = 1.0 / 32.0;
  double level = 0.95;
  std::uint64_t seed = 0;
  int jobs = 0;
  int bootstrap_B = 1000;
  int ks_B = 999;
  std::int64_t threshold = -1;
  std::int64_t n = 1000;
  std::int64_t replicates = 200;
  double gev_mu = 2.0, gev_beta = 1.0, gev_xi = 0.05;
  ParamFlags params;

  const auto add_common = [&](CLI::App* cmd, bool needs_input) {
    if (needs_input)
      cmd->add_option("-i,--input", input, "count data file")->required();
    cmd->add_option("-o,--output", output, "output path, - for stdout");
    cmd->add_option("--seed", seed, "random seed (default 0)");
    cmd->add_option("--jobs", jobs, "parallel worker count, 0 = all cores");
    cmd->add_option("--omega", omega, "truncated-beta support offset");
  };

  auto* fit_cmd = app.add_subcommand("fit", "maximum-likelihood fit");
  add_common(fit_cmd, true);
  fit_cmd->add_option("--model", model, "model selector")->required();
  fit_cmd->add_option("--threshold", threshold, "fit exceedances above this value");
  fit_cmd->add_option("--bootstrap-B", bootstrap_B,
                      "bootstrap replicates for bands, 0 disables");
  fit_cmd->add_option("--level", level, "band level (default 0.95)");

  auto* gof_cmd = app.add_subcommand("gof", "Monte Carlo KS goodness-of-fit");
  add_common(gof_cmd, true);
  gof_cmd->add_option("--model", model, "model selector");
  gof_cmd->add_option("--fit", fit_path, "stored fit JSON");
  gof_cmd->add_option("--ks-B", ks_B, "Monte Carlo replicates");
  gof_cmd->add_option("--format", format, "json or csv");

  auto* qq_cmd = app.add_subcommand("qq", "Q-Q plot data");
  add_common(qq_cmd, true);
  qq_cmd->add_option("--model", model, "model selector");
  qq_cmd->add_option("--fit", fit_path, "stored fit JSON");

  auto* rl_cmd = app.add_subcommand("return-levels", "m-observation return levels");
  add_common(rl_cmd, true);
  rl_cmd->add_option("--model", model, "model selector");
  rl_cmd->add_option("--fit", fit_path, "stored fit JSON");
  rl_cmd->add_option("--m-grid", m_grid_csv, "comma-separated m values");

  auto* sample_cmd = app.add_subcommand("sample", "draw from a model");
  add_common(sample_cmd, false);
  sample_cmd->alias("simulate");
  sample_cmd->add_option("--model", model, "model selector")->required();
  sample_cmd->add_option("--n", n, "number of draws")->required();
  params.attach(sample_cmd);

  auto* recovery_cmd =
      app.add_subcommand("recovery", "simulate-then-fit parameter recovery study");
  add_common(recovery_cmd, false);
  recovery_cmd->add_option("--model", model, "model selector")->required();
  recovery_cmd->add_option("--n", n, "sample size per replicate");
  recovery_cmd->add_option("--replicates", replicates, "replicate count");
  params.attach(recovery_cmd);

  auto* sweep_cmd =
      app.add_subcommand("sweep", "tail-stability sweep on discrete GEV data");
  add_common(sweep_cmd, false);
  sweep_cmd->add_option("--models", models_csv, "comma-separated model selectors");
  sweep_cmd->add_option("--thresholds", thresholds_csv, "comma-separated thresholds");
  sweep_cmd->add_option("--n", n, "sample size per replicate");
  sweep_cmd->add_option("--replicates", replicates, "replicate count");
  sweep_cmd->add_option("--gev-mu", gev_mu, "GEV location");
  sweep_cmd->add_option("--gev-beta", gev_beta, "GEV scale");
  sweep_cmd->add_option("--gev-xi", gev_xi, "GEV shape");

  CLI11_PARSE(app, argc, argv);

  if (fit_cmd->parsed()) {
    CountSample data = ingest_counts(input);
    std::optional<std::int64_t> used_threshold;
    if (fit_cmd->count("--threshold") > 0) {
      data = data.exceedances_above(threshold);
      used_threshold = threshold;
    }
    const ModelSpec spec = ModelSpec::parse(model, omega);
    FitResult fit;
    try {
      fit = fit_mle(data, spec);
    } catch (const FitNonConvergence& failure) {
      std::cerr << "fit did not converge after " << failure.best.iterations
                << " simplex iterations; best log-likelihood "
                << failure.best.loglik << "\n";
      return 1;
    }
    fit.threshold = used_threshold;
    for (const auto& warning : fit.warnings)
      std::cerr << "warning: " << warning << "\n";
    if (bootstrap_B > 0)
      fit.boot_bands = bootstrap_bands(data, spec, fit, bootstrap_B, level, seed, jobs);
    write_text(output, fit_result_to_json(fit, seed).dump(2) + "\n");
    return 0;
  }

  if (gof_cmd->parsed()) {
    CountSample data = ingest_counts(input);
    std::optional<FitResult> point_fit;
    ModelSpec spec = ModelSpec::dgpd();
    if (!fit_path.empty()) {
      FitResult loaded = load_fit_result(fit_path);
      if (loaded.threshold) data = data.exceedances_above(*loaded.threshold);
      spec = loaded.spec;
      point_fit = std::move(loaded);
    } else if (!model.empty()) {
      spec = ModelSpec::parse(model, omega);
    } else {
      throw std::runtime_error("either --model or --fit is required");
    }
    const KsMcResult result = ks_test_mc(data, spec, ks_B, seed, jobs, {}, point_fit);
    if (format == "csv") {
      std::string out = "ks_statistic,p_value,mc_replicates,failures\n";
      out += double_to_string(result.statistic) + "," +
             double_to_string(result.p_value) + "," + std::to_string(result.used) +
             "," + std::to_string(result.failures) + "\n";
      write_text(output, out);
    } else {
      nlohmann::json j;
      j["model"] = spec.name();
      j["ks_statistic"] = result.statistic;
      j["p_value"] = result.p_value;
      j["mc_replicates"] = result.used;
      j["failures"] = result.failures;
      j["seed"] = seed;
      write_text(output, j.dump(2) + "\n");
    }
    return 0;
  }

  if (qq_cmd->parsed()) {
    CountSample data = ingest_counts(input);
    const ResolvedModel resolved = resolve_model(fit_path, model, omega, data);
    if (resolved.threshold) data = data.exceedances_above(*resolved.threshold);
    const auto points = qq_data(data, resolved.spec, resolved.params);
    std::string out = "empirical,model\n";
    for (const auto& [empirical, modeled] : points)
      out += std::to_string(empirical) + "," + std::to_string(modeled) + "\n";
    write_text(output, out);
    return 0;
  }

  if (rl_cmd->parsed()) {
    CountSample data = ingest_counts(input);
    const ResolvedModel resolved = resolve_model(fit_path, model, omega, data);
    const auto levels =
        return_levels(resolved.spec, resolved.params, parse_double_list(m_grid_csv));
    std::string out = "m,level\n";
    for (const auto& [m, value] : levels)
      out += double_to_string(m) + "," + std::to_string(value) + "\n";
    write_text(output, out);
    return 0;
  }

  if (sample_cmd->parsed()) {
    const ModelSpec spec = ModelSpec::parse(model, omega);
    const auto draws = sample(n, spec, params.build(spec), seed);
    std::string out;
    for (const auto value : draws) out += std::to_string(value) + "\n";
    write_text(output, out);
    return 0;
  }

  if (recovery_cmd->parsed()) {
    RecoveryConfig config;
    config.spec = ModelSpec::parse(model, omega);
    config.truth = params.build(config.spec);
    config.n = n;
    config.replicates = replicates;
    config.seed = seed;
    const RecoveryResult result = run_recovery(config, jobs);
    write_text(output, study_rows_to_csv(result.rows));
    std::cout << summary_table(result.summaries);
    return 0;
  }

  if (sweep_cmd->parsed()) {
    SweepConfig config;
    for (const auto& name : [&] {
           std::vector<std::string> names;
           std::stringstream stream(models_csv);
           std::string item;
           while (std::getline(stream, item, ','))
             if (!item.empty()) names.push_back(item);
           return names;
         }())
      config.models.push_back(ModelSpec::parse(name, omega));
    config.thresholds = parse_int_list(thresholds_csv);
    config.n = n;
    config.replicates = replicates;
    config.gev_mu = gev_mu;
    config.gev_beta = gev_beta;
    config.gev_xi = gev_xi;
    config.seed = seed;
    const SweepResult result = run_threshold_sweep(config, jobs);
    write_text(output, study_rows_to_csv(result.rows));
    std::cout << summary_table(result.summaries);
    if (result.gev_draws > 0)
      std::cout << "# gev_rejection_rate,"
                << double_to_string(static_cast<double>(result.gev_rejections) /
                                    static_cast<double>(result.gev_draws))
                << "\n";
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
}
