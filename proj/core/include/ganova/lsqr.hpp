#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "ganova/grouped_coefficients.hpp"
#include "ganova/weights.hpp"

namespace ganova {

class TransformPlan;

/// Matrix-free operator: the solver only sees A v and A^H u.
struct LinearOperator {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply;
  std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)> apply_adjoint;
};

struct LsqrConfig {
  int max_iterations = 500;
  double atol = 1e-8;
  double btol = 1e-8;
};

struct LsqrReport {
  int iterations = 0;
  double residual_norm = 0.0;         ///< ||[b;0] - [A; damp I] x||
  double normal_residual_norm = 0.0;  ///< ||A_damped^H r||
  bool converged = false;
};

/// Damped LSQR (Golub-Kahan bidiagonalization with per-damp plane
/// rotations): minimizes ||b - A x||^2 + damp^2 ||x||^2 for every damp in
/// `damps` at the cost of a single bidiagonalization of (A, b). With one
/// zero damp this is plain LSQR.
std::vector<Eigen::VectorXcd> lsqr_multi_damp(const LinearOperator& A,
                                              const Eigen::VectorXcd& b,
                                              const std::vector<double>& damps,
                                              const LsqrConfig& config,
                                              std::vector<LsqrReport>* reports = nullptr);

/// Minimizes 1/2 ||y - F fhat||^2 + lambda ||fhat||_W^2 through the change
/// of variables g = W^{1/2} fhat, i.e. damped least squares on F W^{-1/2}
/// with damping sqrt(2 lambda). An initial guess is handled by solving for
/// the correction on the damping-augmented operator.
GroupedCoefficients lsqr_solve(const TransformPlan& plan, const Eigen::VectorXcd& y,
                               double lambda, const WeightFunction& weights,
                               const LsqrConfig& config = {},
                               const GroupedCoefficients* initial = nullptr,
                               LsqrReport* report = nullptr);

/// All lambdas of a descending grid in one shared bidiagonalization.
std::vector<GroupedCoefficients> lsqr_solve_sweep(const TransformPlan& plan,
                                                  const Eigen::VectorXcd& y,
                                                  const std::vector<double>& lambdas,
                                                  const WeightFunction& weights,
                                                  const LsqrConfig& config = {},
                                                  std::vector<LsqrReport>* reports = nullptr);

}  // namespace ganova
