#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <string>

#include "ganova/experiments.hpp"

namespace {

// JSON config mirrors the command line flags; flags override file values.
void apply_json_config(const std::string& path, ganova::ExperimentConfig& config) {
  std::ifstream stream(path);
  if (!stream) throw std::runtime_error("cannot open config file '" + path + "'");
  nlohmann::json parsed;
  stream >> parsed;
  const auto get = [&parsed](const char* key, auto& target) {
    if (parsed.contains(key)) target = parsed.at(key).get<std::decay_t<decltype(target)>>();
  };
  get("experiment", config.kind);
  get("preset", config.preset);
  get("bandwidths", config.bandwidths);
  get("smoothness", config.smoothness);
  get("noise", config.noise);
  get("absolute_noise", config.absolute_noise);
  get("lambda_min", config.lambda_min);
  get("lambda_max", config.lambda_max);
  get("lambda_count", config.lambda_count);
  get("reps", config.repetitions);
  get("samples", config.sample_count);
  get("seed", config.seed);
  get("threads", config.threads);
  get("warm_start", config.warm_start);
  get("prox_exempt_mean", config.prox_exempt_mean);
  get("active_eps", config.active_eps);
  get("refit_bandwidths", config.refit_bandwidths);
  get("nfft_sigma", config.nfft_sigma);
  get("nfft_cutoff", config.nfft_cutoff);
  get("direct_group_limit", config.direct_group_limit);
  get("out", config.out);
  get("census_file", config.census_file);
  get("recipe_file", config.recipe_file);
  get("emit_network", config.emit_network);
  get("train_fraction", config.train_fraction);
  get("folds", config.folds);
  get("lsqr_max_iterations", config.lsqr.max_iterations);
  get("lsqr_atol", config.lsqr.atol);
  get("lsqr_btol", config.lsqr.btol);
  get("fista_max_iterations", config.fista.max_iterations);
  get("fista_stop_tolerance", config.fista.stop_tolerance);
  get("fista_initial_step", config.fista.initial_step);
  get("fista_backtracking", config.fista.backtracking);
  get("fista_constant_step", config.fista.constant_step);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Grouped Fourier/cosine transforms with regularized least-squares pipelines for "
      "explainable high-dimensional approximation"};
  app.get_formatter()->column_width(34);

  ganova::ExperimentConfig config;
  std::string config_path;

  app.add_option("--config", config_path, "JSON config file (flags override its values)");
  app.add_option("--experiment", config.kind,
                 "synthetic-lsqr | synthetic-fista | census | transform-bench")
      ->capture_default_str();
  app.add_option("--preset", config.preset,
                 "bandwidth preset: small | large | census | explicit")
      ->capture_default_str();
  app.add_option("--bandwidths", config.bandwidths,
                 "per-order bandwidths for --preset explicit");
  app.add_option("--smoothness", config.smoothness, "Sobolev weight exponent s >= 0")
      ->capture_default_str();
  app.add_option("--noise", config.noise, "noise level (relative l2 by default)")
      ->capture_default_str();
  app.add_flag("--absolute-noise", config.absolute_noise,
               "interpret --noise as the plain standard deviation");
  app.add_option("--lambda-min", config.lambda_min, "smallest lambda of the grid")
      ->capture_default_str();
  app.add_option("--lambda-max", config.lambda_max, "largest lambda of the grid")
      ->capture_default_str();
  app.add_option("--lambda-count", config.lambda_count, "log-spaced grid size")
      ->capture_default_str();
  app.add_option("--reps", config.repetitions, "synthetic repetitions")
      ->capture_default_str();
  app.add_option("--samples", config.sample_count, "nodes per synthetic draw")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "base RNG seed")->capture_default_str();
  app.add_option("--out", config.out, "output CSV path")->capture_default_str();
  app.add_option("--threads", config.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  app.add_flag("--prox-exempt-mean", config.prox_exempt_mean,
               "leave the constant term unpenalized in the group lasso prox");
  app.add_flag("!--no-warm-start", config.warm_start,
               "disable warm starts along the descending lambda sweep");
  app.add_option("--active-eps", config.active_eps,
                 "per-order sensitivity thresholds for active-set detection");
  app.add_option("--refit-bandwidths", config.refit_bandwidths,
                 "per-order bandwidths for the active-set refit");
  app.add_option("--nfft-sigma", config.nfft_sigma, "fast transform oversampling factor")
      ->capture_default_str();
  app.add_option("--nfft-m", config.nfft_cutoff, "fast transform window cutoff")
      ->capture_default_str();
  app.add_option("--direct-group-limit", config.direct_group_limit,
                 "largest group size eligible for the exact kernel")
      ->capture_default_str();
  app.add_option("--census-file", config.census_file, "census CSV (census experiment)");
  app.add_option("--recipe-file", config.recipe_file, "JSON preprocessing recipe");
  app.add_option("--emit-network", config.emit_network, "write a DOT network to this path");
  app.add_option("--train-fraction", config.train_fraction, "train split fraction")
      ->capture_default_str();
  app.add_option("--folds", config.folds, "cross-validation folds")->capture_default_str();
  app.add_option("--lsqr-max-iterations", config.lsqr.max_iterations, "LSQR iteration cap")
      ->capture_default_str();
  app.add_option("--fista-max-iterations", config.fista.max_iterations,
                 "FISTA iteration cap")
      ->capture_default_str();
  app.add_option("--fista-stop-tolerance", config.fista.stop_tolerance,
                 "FISTA relative-change stop")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      // re-parse so explicit flags win over the file
      ganova::ExperimentConfig from_file;
      apply_json_config(config_path, from_file);
      std::swap(config, from_file);
      app.clear();
      CLI11_PARSE(app, argc, argv);
      config_path.clear();
    }

    if (config.kind == "synthetic-lsqr" || config.kind == "synthetic-fista") {
      const auto result = ganova::run_synthetic(config);
      std::printf("minimum mean L2 error %.6g at lambda %.6g\n", result.min_mean_error,
                  result.lambda_at_min);
      if (!config.out.empty()) std::printf("wrote %s\n", config.out.c_str());
    } else if (config.kind == "census") {
      const auto result = ganova::run_census(config);
      std::printf("rows %ld, |I_N(U)| = %zu\n", static_cast<long>(result.usable_rows),
                  result.index_cardinality);
      std::printf("best accuracy: lsqr %.2f%%, lsqr+refit %.2f%%, group lasso %.2f%%\n",
                  result.best_lsqr, result.best_lsqr_refit, result.best_fista);
      if (!config.out.empty()) std::printf("wrote %s (-lsqr / -lsqr-refit / -fista)\n",
                                           config.out.c_str());
    } else if (config.kind == "transform-bench") {
      const auto rows = ganova::run_transform_bench(config);
      for (const auto& row : rows)
        std::printf("d=%d d_s=%d N=%s M=%d %-6s %.4fs  err=%.3g\n", row.dimension,
                    row.superposition, row.bandwidths.c_str(), row.node_count,
                    row.method.c_str(), row.seconds, row.max_error_vs_direct);
      if (!config.out.empty()) std::printf("wrote %s\n", config.out.c_str());
    } else {
      std::fprintf(stderr, "unknown experiment '%s'\n", config.kind.c_str());
      return 2;
    }
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }
  return 0;
}
