#include "ganova/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ganova {

FitResult solve_annotated(const TransformPlan& plan, const Eigen::VectorXcd& y, double lambda,
                          const SolverOptions& solver, const GroupedCoefficients* initial) {
  FitResult result(GroupedCoefficients(plan.index_set_ptr()));
  result.lambda = lambda;
  if (solver.kind == SolverKind::lsqr) {
    result.solver = "lsqr";
    LsqrReport report;
    result.coefficients = lsqr_solve(plan, y, lambda, solver.weights, solver.lsqr,
                                     initial, &report);
    result.iterations = report.iterations;
    result.residual = report.residual_norm;
    result.converged = report.converged;
  } else {
    result.solver = "fista";
    FistaReport report;
    result.coefficients = fista_solve(plan, y, lambda, solver.weights, solver.fista,
                                      initial, &report);
    result.iterations = report.iterations;
    result.residual = report.objective_trace.empty() ? 0.0 : report.objective_trace.back();
    result.converged = report.converged;
  }
  annotate_sensitivity(result);
  return result;
}

std::vector<FitResult> lambda_sweep(const TransformPlan& plan, const Eigen::VectorXcd& y,
                                    const SolverOptions& solver,
                                    std::vector<double> lambda_grid, bool warm_start) {
  if (lambda_grid.empty()) throw std::invalid_argument("lambda_sweep: empty grid");
  std::sort(lambda_grid.begin(), lambda_grid.end(), std::greater<>());

  std::vector<FitResult> results;
  results.reserve(lambda_grid.size());

  if (solver.kind == SolverKind::lsqr && !warm_start) {
    std::vector<LsqrReport> reports;
    auto solutions = lsqr_solve_sweep(plan, y, lambda_grid, solver.weights, solver.lsqr,
                                      &reports);
    for (std::size_t i = 0; i < solutions.size(); ++i) {
      FitResult fit(std::move(solutions[i]));
      fit.lambda = lambda_grid[i];
      fit.solver = "lsqr";
      fit.iterations = reports[i].iterations;
      fit.residual = reports[i].residual_norm;
      fit.converged = reports[i].converged;
      annotate_sensitivity(fit);
      results.push_back(std::move(fit));
    }
    return results;
  }

  const GroupedCoefficients* previous = nullptr;
  for (double lambda : lambda_grid) {
    results.push_back(solve_annotated(plan, y, lambda, solver, previous));
    if (warm_start) previous = &results.back().coefficients;
  }
  return results;
}

PipelineResult fit_pipeline(std::shared_ptr<const NodeSet> nodes, const Eigen::VectorXcd& y,
                            std::shared_ptr<const GroupedIndexSet> index_set, double lambda,
                            const PipelineConfig& config) {
  TransformPlan plan(nodes, index_set, config.method, config.fast_params, config.threads);
  PipelineResult result(solve_annotated(plan, y, lambda, config.solver));
  if (!config.active_set) return result;

  result.active_set = detect_active_set(result.fit, *config.active_set);
  std::vector<int> per_order = config.refit_bandwidths;
  if (per_order.empty()) {
    per_order.assign(static_cast<std::size_t>(index_set->term_set().max_order()), 0);
    for (std::size_t g = 0; g < index_set->group_count(); ++g) {
      const auto order = index_set->term_set().term(g).size();
      if (order > 0) per_order[order - 1] = index_set->bandwidth(g);
    }
  }
  auto refit_set = std::make_shared<GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      *result.active_set, per_order, index_set->basis()));
  TransformPlan refit_plan(nodes, refit_set, config.method, config.fast_params,
                           config.threads);
  result.refit = solve_annotated(refit_plan, y, lambda, config.solver);
  return result;
}

}  // namespace ganova
