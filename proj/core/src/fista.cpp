#include "ganova/fista.hpp"

#include <cmath>
#include <stdexcept>

#include "ganova/prox.hpp"

namespace ganova {

namespace {

double weighted_group_norm_sum(const GroupedCoefficients& fhat,
                               const Eigen::VectorXd& flat_weights) {
  const GroupedIndexSet& set = fhat.index_set();
  double sum = 0.0;
  for (std::size_t g = 0; g < set.group_count(); ++g) {
    const auto begin = static_cast<Eigen::Index>(set.group_offset(g));
    const auto size = static_cast<Eigen::Index>(set.group_size(g));
    double norm2 = 0.0;
    for (Eigen::Index i = 0; i < size; ++i)
      norm2 += flat_weights[begin + i] * std::norm(fhat.values()[begin + i]);
    sum += std::sqrt(norm2);
  }
  return sum;
}

}  // namespace

double group_lasso_objective(const TransformPlan& plan, const Eigen::VectorXcd& y,
                             const GroupedCoefficients& fhat, double lambda,
                             const WeightFunction& weights) {
  const Eigen::VectorXcd residual = y - plan.forward(fhat);
  const Eigen::VectorXd w = weights.evaluate(fhat.index_set());
  return 0.5 * residual.squaredNorm() + lambda * weighted_group_norm_sum(fhat, w);
}

GroupedCoefficients fista_solve(const TransformPlan& plan, const Eigen::VectorXcd& y,
                                double lambda, const WeightFunction& weights,
                                const FistaConfig& config, const GroupedCoefficients* initial,
                                FistaReport* report) {
  if (y.size() != plan.node_set().count())
    throw std::invalid_argument("fista_solve: sample length != node count");
  if (config.initial_step <= 0.0 || config.backtracking <= 1.0 || config.max_iterations < 1)
    throw std::invalid_argument("fista_solve: invalid configuration");
  if (lambda < 0.0) throw std::invalid_argument("fista_solve: lambda must be >= 0");

  const Eigen::VectorXd flat_weights = weights.evaluate(plan.index_set());
  ProxOptions prox_options;
  prox_options.xi_tolerance = config.xi_tolerance;
  prox_options.exempt_constant_group = config.exempt_constant_group;
  prox_options.threads = plan.threads();

  GroupedCoefficients f_prev =
      initial ? *initial : GroupedCoefficients(plan.index_set_ptr());
  if (initial && !(initial->index_set_ptr() == plan.index_set_ptr() ||
                   initial->index_set() == plan.index_set()))
    throw std::invalid_argument("fista_solve: initial guess index set mismatch");
  GroupedCoefficients h = f_prev;
  GroupedCoefficients f = f_prev;

  double L = config.initial_step;
  double t = 1.0;
  FistaReport local_report;
  local_report.objective_trace.reserve(static_cast<std::size_t>(config.max_iterations));

  const auto candidate_at = [&](const GroupedCoefficients& point,
                                const GroupedCoefficients& gradient, double step) {
    GroupedCoefficients z(plan.index_set_ptr(),
                          point.values() - gradient.values() / step);
    return prox_grouped(z, lambda / step, flat_weights, prox_options);
  };

  for (int k = 1; k <= config.max_iterations; ++k) {
    const Eigen::VectorXcd residual_h = plan.forward(h) - y;
    const double data_h = residual_h.squaredNorm();
    const GroupedCoefficients gradient = plan.adjoint(residual_h);

    f = candidate_at(h, gradient, L);
    double data_f = (y - plan.forward(f)).squaredNorm();
    int backtracks = 0;
    while (data_f - data_h >
           2.0 * (f.values() - h.values()).dot(gradient.values()).real() +
               L * (f.values() - h.values()).squaredNorm()) {
      if (config.constant_step)
        throw std::runtime_error("fista_solve: constant step violates the majorization");
      if (++backtracks > 100)
        throw std::runtime_error("fista_solve: backtracking failed to find a valid step");
      L *= config.backtracking;
      f = candidate_at(h, gradient, L);
      data_f = (y - plan.forward(f)).squaredNorm();
    }

    local_report.objective_trace.push_back(
        0.5 * data_f + lambda * weighted_group_norm_sum(f, flat_weights));
    local_report.iterations = k;
    local_report.final_step = L;

    const double change = (f.values() - f_prev.values()).norm() /
                          std::max(1.0, f.values().norm());
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    h = GroupedCoefficients(plan.index_set_ptr(),
                            f.values() + ((t - 1.0) / t_next) * (f.values() - f_prev.values()));
    f_prev = f;
    t = t_next;
    if (change < config.stop_tolerance) {
      local_report.converged = true;
      break;
    }
  }

  if (report) *report = local_report;
  return f;
}

}  // namespace ganova
