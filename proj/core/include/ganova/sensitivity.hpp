#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "ganova/grouped_coefficients.hpp"

namespace ganova {

/// Fitted coefficients with sensitivity annotations and solver diagnostics
/// for one (lambda, solver) run.
struct FitResult {
  explicit FitResult(GroupedCoefficients c) : coefficients(std::move(c)) {}

  GroupedCoefficients coefficients;
  double lambda = 0.0;
  std::string solver;
  std::vector<double> term_variances;  ///< per term, 0 for the constant term
  double global_variance = 0.0;
  std::vector<double> sensitivity;     ///< GSI per term, 0 for the constant term
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
};

/// Variance of one ANOVA term of the partial sum: sum of |fhat_k|^2 over
/// the group (0 for the constant term).
double term_variance(const GroupedCoefficients& coeffs, std::size_t term_index);
double term_variance(const GroupedCoefficients& coeffs, const Term& u);

/// sigma^2 of the partial sum: sum of all non-constant term variances.
double global_variance(const GroupedCoefficients& coeffs);

/// rho(u, S f) = term variance / global variance; throws when the global
/// variance is zero.
double global_sensitivity_index(const GroupedCoefficients& coeffs, const Term& u);

/// Fills term_variances, global_variance, and sensitivity of a FitResult.
void annotate_sensitivity(FitResult& fit);

/// Threshold vector, one entry per term order (entry 0 applies to |u| = 1).
/// Entries lie in [0,1).
struct ActiveSetSpec {
  std::vector<double> thresholds;
};

/// {const} union {u : GSI(u) > eps_|u|}, in canonical order.
TermSet detect_active_set(const FitResult& fit, const ActiveSetSpec& spec);

/// Ground truth for the exact L2 error: exact coefficients on any frequency
/// of the index set plus the exact squared norm of the target function.
struct L2Oracle {
  std::function<std::complex<double>(const std::vector<int>&)> coefficient;
  double norm_squared = 0.0;
};

/// Relative L2 error of the partial sum against the oracle,
/// sqrt(||f||^2 + sum_I |fhat_k - c_k|^2 - sum_I |c_k|^2) / ||f||.
/// The radicand is clamped to zero when it is negative by no more than
/// 1e-12; a larger negative value signals an inconsistent oracle.
double relative_l2_error(const GroupedCoefficients& coeffs, const L2Oracle& oracle);

/// DOT-format explainable network: variable nodes feed the term nodes they
/// participate in, term nodes (annotated with their GSI) feed one sum node.
/// Terms with GSI below display_threshold are drawn faint.
std::string emit_anova_network(const FitResult& fit, double display_threshold = 0.01);

}  // namespace ganova
