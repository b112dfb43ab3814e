#pragma once

#include <Eigen/Core>

#include "ganova/grouped_coefficients.hpp"
#include "ganova/weights.hpp"

namespace ganova {

/// Minimizer of 1/2 ||x - y||^2 + xi ||x||_W^2 for xi > 0:
/// x = diag(1/(1 + 2 xi w_k)) y.
Eigen::VectorXcd shrink_group_closed_form(const Eigen::VectorXcd& y, double xi,
                                          const Eigen::VectorXd& weights);

struct XiResult {
  double xi = 0.0;
  int bisection_steps = 0;
  int newton_steps = 0;
};

/// Solves t(xi) = lambda_eff^2 with t(xi) = || (y_k / (1/xi + w_k))_k ||_W^2,
/// which is strictly increasing in xi for y != 0. Requires
/// lambda_eff < || (y_k / w_k)_k ||_W (otherwise the prox is zero and no xi
/// exists); violating it trips the bracket check. Bisection on [0,1] in xi
/// or its reciprocal (chosen by the sign of t(1) - lambda_eff^2), then
/// safeguarded Newton until |t(xi) - lambda_eff^2| <= tol * lambda_eff^2.
XiResult find_xi(const Eigen::VectorXcd& y, const Eigen::VectorXd& weights,
                 double lambda_eff, double tol = 1e-12);

struct ProxOptions {
  double xi_tolerance = 1e-12;
  bool exempt_constant_group = false;  ///< leave the mean coefficient unshrunk
  int threads = 0;
};

/// Exact proximal map of lambda_eff * sum_u ||.||_W(u): per group, zero when
/// lambda_eff >= ||(y_k/w_k)||_W(u), otherwise diag(1/(1+xi(u) w_k)) y with
/// xi(u) from find_xi. Groups are independent and processed in parallel.
GroupedCoefficients prox_grouped(const GroupedCoefficients& input, double lambda_eff,
                                 const Eigen::VectorXd& flat_weights,
                                 const ProxOptions& options = {});

/// Convenience overload evaluating the weight rule on the index set.
GroupedCoefficients prox_grouped(const GroupedCoefficients& input, double lambda_eff,
                                 const WeightFunction& weights,
                                 const ProxOptions& options = {});

}  // namespace ganova
