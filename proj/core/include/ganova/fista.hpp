#pragma once

#include <Eigen/Core>
#include <vector>

#include "ganova/grouped_coefficients.hpp"
#include "ganova/transform_plan.hpp"
#include "ganova/weights.hpp"

namespace ganova {

struct FistaConfig {
  double initial_step = 1.0;    ///< L0 > 0
  double backtracking = 2.0;    ///< eta > 1
  int max_iterations = 1000;    ///< K
  double xi_tolerance = 1e-12;  ///< prox root-finder tolerance
  double stop_tolerance = 1e-8; ///< relative iterate-change stop
  bool constant_step = false;   ///< fixed L = initial_step, no backtracking
  bool exempt_constant_group = false;
};

struct FistaReport {
  int iterations = 0;
  bool converged = false;
  double final_step = 0.0;  ///< accepted L at the last iteration
  std::vector<double> objective_trace;
};

/// 1/2 ||y - F fhat||^2 + lambda sum_u ||fhat(u)||_W(u) (norms unsquared).
double group_lasso_objective(const TransformPlan& plan, const Eigen::VectorXcd& y,
                             const GroupedCoefficients& fhat, double lambda,
                             const WeightFunction& weights);

/// Accelerated proximal gradient for the group-lasso objective: momentum
/// t_{k+1} = (1+sqrt(1+4 t_k^2))/2, gradient step h - (1/L) F^H(F h - y),
/// exact grouped prox at threshold lambda/L, and step backtracking that
/// multiplies L by eta until the quadratic majorization holds.
GroupedCoefficients fista_solve(const TransformPlan& plan, const Eigen::VectorXcd& y,
                                double lambda, const WeightFunction& weights,
                                const FistaConfig& config = {},
                                const GroupedCoefficients* initial = nullptr,
                                FistaReport* report = nullptr);

}  // namespace ganova
