#include "ganova/prox.hpp"

#include <cmath>
#include <stdexcept>

#include "ganova/parallel.hpp"

namespace ganova {

namespace {

// t as a function of beta = 1/xi: T(beta) = sum w |y|^2 / (beta + w)^2,
// strictly decreasing in beta.
double t_of_beta(const Eigen::VectorXcd& y, const Eigen::VectorXd& w, double beta) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double q = std::abs(y[i]) / (beta + w[i]);
    sum += w[i] * q * q;
  }
  return sum;
}

double t_derivative_beta(const Eigen::VectorXcd& y, const Eigen::VectorXd& w, double beta) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double d = beta + w[i];
    const double a2 = std::norm(y[i]);
    sum += w[i] * a2 / (d * d * d);
  }
  return -2.0 * sum;
}

double weighted_threshold_norm(const Eigen::VectorXcd& y, const Eigen::VectorXd& w) {
  // ||(y_k / w_k)||_W = sqrt(sum |y_k|^2 / w_k)
  double sum = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) sum += std::norm(y[i]) / w[i];
  return std::sqrt(sum);
}

}  // namespace

Eigen::VectorXcd shrink_group_closed_form(const Eigen::VectorXcd& y, double xi,
                                          const Eigen::VectorXd& weights) {
  if (y.size() != weights.size())
    throw std::invalid_argument("shrink_group_closed_form: size mismatch");
  Eigen::VectorXcd out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) out[i] = y[i] / (1.0 + 2.0 * xi * weights[i]);
  return out;
}

XiResult find_xi(const Eigen::VectorXcd& y, const Eigen::VectorXd& weights,
                 double lambda_eff, double tol) {
  if (y.size() != weights.size()) throw std::invalid_argument("find_xi: size mismatch");
  if (lambda_eff <= 0.0) throw std::invalid_argument("find_xi: lambda_eff must be positive");
  const double target = lambda_eff * lambda_eff;
  if (weighted_threshold_norm(y, weights) <= lambda_eff)
    throw std::invalid_argument("find_xi: bracket failure, lambda_eff >= ||(y/w)||_W");

  XiResult result;
  // t is increasing in xi, so s(mu) = t(1/mu) is decreasing in mu. The root
  // lies in xi-space [0,1] when t(1) >= lambda^2, else in mu-space [0,1].
  const bool xi_space = t_of_beta(y, weights, 1.0) >= target;
  const auto value = [&](double v) {
    if (xi_space) return v == 0.0 ? 0.0 : t_of_beta(y, weights, 1.0 / v);
    return t_of_beta(y, weights, v);
  };
  // dg/dv in the active parameterization
  const auto derivative = [&](double v) {
    if (xi_space) {
      const double beta = 1.0 / v;
      return -t_derivative_beta(y, weights, beta) * beta * beta;
    }
    return t_derivative_beta(y, weights, v);
  };
  const double rising = xi_space ? 1.0 : -1.0;  // sign of dg/dv

  double lo = 0.0, hi = 1.0;
  while ((hi - lo) > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (rising * (value(mid) - target) < 0.0)
      lo = mid;
    else
      hi = mid;
    ++result.bisection_steps;
  }

  double v = 0.5 * (lo + hi);
  double g = value(v) - target;
  for (int it = 0; it < 100 && std::abs(g) > tol * target; ++it) {
    double next = v - g / derivative(v);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
    const double gn = value(next) - target;
    if (rising * gn < 0.0)
      lo = next;
    else
      hi = next;
    v = next;
    g = gn;
    ++result.newton_steps;
  }
  result.xi = xi_space ? v : 1.0 / v;
  return result;
}

GroupedCoefficients prox_grouped(const GroupedCoefficients& input, double lambda_eff,
                                 const Eigen::VectorXd& flat_weights,
                                 const ProxOptions& options) {
  if (lambda_eff < 0.0) throw std::invalid_argument("prox_grouped: lambda_eff must be >= 0");
  if (flat_weights.size() != input.size())
    throw std::invalid_argument("prox_grouped: weight vector size mismatch");
  GroupedCoefficients out(input.index_set_ptr());
  if (lambda_eff == 0.0) {
    out.values() = input.values();
    return out;
  }
  const GroupedIndexSet& set = input.index_set();
  parallel_for(set.group_count(), options.threads, [&](std::size_t g) {
    const auto begin = static_cast<Eigen::Index>(set.group_offset(g));
    const auto size = static_cast<Eigen::Index>(set.group_size(g));
    const Eigen::VectorXcd y = input.values().segment(begin, size);
    const Eigen::VectorXd w = flat_weights.segment(begin, size);
    if (options.exempt_constant_group && set.term_set().term(g).empty()) {
      out.values().segment(begin, size) = y;
      return;
    }
    if (lambda_eff >= weighted_threshold_norm(y, w)) return;  // zero block stays zero
    const double xi = find_xi(y, w, lambda_eff, options.xi_tolerance).xi;
    for (Eigen::Index i = 0; i < size; ++i)
      out.values()[begin + i] = y[i] / (1.0 + xi * w[i]);
  });
  return out;
}

GroupedCoefficients prox_grouped(const GroupedCoefficients& input, double lambda_eff,
                                 const WeightFunction& weights, const ProxOptions& options) {
  return prox_grouped(input, lambda_eff, weights.evaluate(input.index_set()), options);
}

}  // namespace ganova
