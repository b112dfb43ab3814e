#pragma once

#include <optional>
#include <vector>

#include "ganova/fista.hpp"
#include "ganova/lsqr.hpp"
#include "ganova/sensitivity.hpp"
#include "ganova/transform_plan.hpp"

namespace ganova {

enum class SolverKind { lsqr, fista };

struct SolverOptions {
  SolverKind kind = SolverKind::lsqr;
  WeightFunction weights = WeightFunction::ones();
  LsqrConfig lsqr;
  FistaConfig fista;
};

/// One annotated solver run at a single lambda.
FitResult solve_annotated(const TransformPlan& plan, const Eigen::VectorXcd& y,
                          double lambda, const SolverOptions& solver,
                          const GroupedCoefficients* initial = nullptr);

/// Runs the solver over the grid from the largest lambda down. With
/// warm_start each run begins at the previous minimizer (FISTA benefits
/// directly; LSQR solves for the correction on the damping-augmented
/// operator). Without warm_start, LSQR computes the whole grid from one
/// shared bidiagonalization, which yields the same per-lambda solutions.
/// Results come back in descending-lambda order.
std::vector<FitResult> lambda_sweep(const TransformPlan& plan, const Eigen::VectorXcd& y,
                                    const SolverOptions& solver,
                                    std::vector<double> lambda_grid, bool warm_start);

struct PipelineConfig {
  SolverOptions solver;
  TransformMethod method = TransformMethod::fast;
  FastParams fast_params;
  int threads = 0;
  std::optional<ActiveSetSpec> active_set;
  /// Refit bandwidths per term order; empty reuses the detection bandwidths.
  std::vector<int> refit_bandwidths;
};

struct PipelineResult {
  explicit PipelineResult(FitResult f) : fit(std::move(f)) {}

  FitResult fit;
  std::optional<TermSet> active_set;
  std::optional<FitResult> refit;
};

/// Fit on the given index set; when an active-set spec is configured,
/// detect the active terms from the sensitivity indices, rebuild the index
/// set with the refit bandwidths, and fit again.
PipelineResult fit_pipeline(std::shared_ptr<const NodeSet> nodes, const Eigen::VectorXcd& y,
                            std::shared_ptr<const GroupedIndexSet> index_set, double lambda,
                            const PipelineConfig& config);

}  // namespace ganova
