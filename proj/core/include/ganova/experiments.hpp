#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "ganova/pipeline.hpp"
#include "ganova/tabular.hpp"
#include "ganova/test_function.hpp"

namespace ganova {

struct ExperimentConfig {
  std::string kind = "synthetic-lsqr";  ///< synthetic-lsqr | synthetic-fista | census | transform-bench
  std::string preset = "small";         ///< small | large | census | explicit
  std::vector<int> bandwidths;          ///< per order, used with preset "explicit"
  double smoothness = 0.0;
  double noise = 0.0;
  bool absolute_noise = false;          ///< noise as plain sigma instead of relative l2
  double lambda_min = 1.0;
  double lambda_max = 22026.465794806718;  ///< e^10
  int lambda_count = 50;
  int repetitions = 10;
  int sample_count = 10000;
  std::uint64_t seed = 1;
  int threads = 0;
  bool warm_start = true;
  bool prox_exempt_mean = false;
  std::vector<double> active_eps;       ///< per-order detection thresholds
  std::vector<int> refit_bandwidths;    ///< per order; empty reuses detection bandwidths
  LsqrConfig lsqr;
  FistaConfig fista;
  double nfft_sigma = 2.0;
  int nfft_cutoff = 6;
  std::size_t direct_group_limit = 4096;
  std::string out = "results.csv";
  std::string census_file;
  std::string recipe_file;
  std::string emit_network;             ///< optional DOT output path
  double train_fraction = 0.8;
  int folds = 10;
};

/// Descending log-spaced grid between lambda_min and lambda_max.
std::vector<double> lambda_grid(const ExperimentConfig& config);

/// Bandwidths per term order for the configured preset.
std::vector<int> preset_bandwidths(const ExperimentConfig& config);

struct SyntheticResult {
  std::vector<double> lambdas;           ///< descending
  std::vector<double> mean_error;        ///< per lambda, averaged over repetitions
  std::vector<std::string> term_labels;  ///< non-empty terms of the fit set
  Eigen::MatrixXd mean_gsi;              ///< lambda count x term count
  std::vector<std::size_t> rep_optimal;  ///< per repetition: argmin error index
  std::vector<bool> rep_active_exact;    ///< active set (or support) == U* at the optimum
  double min_mean_error = 0.0;
  double lambda_at_min = 0.0;
};

/// Lambda sweep of the nine-dimensional synthetic experiment, averaged over
/// repetitions. LSQR runs refit on the detected active set and report the
/// refit error; FISTA runs report the error of the full-set fit.
SyntheticResult run_synthetic(const ExperimentConfig& config);

struct CensusResult {
  Eigen::Index usable_rows = 0;
  std::size_t index_cardinality = 0;
  std::vector<double> lambdas;
  std::vector<double> accuracy_lsqr;
  std::vector<double> accuracy_lsqr_refit;
  std::vector<double> accuracy_fista;
  std::vector<std::string> term_labels;
  Eigen::MatrixXd gsi_lsqr;   ///< fold-averaged, lambda x term
  Eigen::MatrixXd gsi_fista;  ///< fold-averaged, lambda x term
  double best_lsqr = 0.0;
  double best_lsqr_refit = 0.0;
  double best_fista = 0.0;
};

/// K-fold cross-validated census pipeline over the lambda grid, for both
/// solvers, plus the active-set refit of the l2 path.
CensusResult run_census(const ExperimentConfig& config);

struct BenchRow {
  int dimension = 0;
  int superposition = 0;
  std::string bandwidths;
  int node_count = 0;
  std::string method;
  double seconds = 0.0;
  double max_error_vs_direct = 0.0;
};

std::vector<BenchRow> run_transform_bench(const ExperimentConfig& config);

}  // namespace ganova
