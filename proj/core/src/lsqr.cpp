#include "ganova/lsqr.hpp"

#include <cmath>
#include <stdexcept>

#include "ganova/transform_plan.hpp"

namespace ganova {

namespace {

struct DampState {
  double damp = 0.0;
  double phibar = 0.0;
  double rhobar = 0.0;
  double res2 = 0.0;    // accumulated psi^2 from damping rotations
  double anorm2 = 0.0;  // Frobenius estimate of the damped operator
  Eigen::VectorXcd x;
  Eigen::VectorXcd w;
  bool done = false;
  LsqrReport report;
};

}  // namespace

std::vector<Eigen::VectorXcd> lsqr_multi_damp(const LinearOperator& A,
                                              const Eigen::VectorXcd& b,
                                              const std::vector<double>& damps,
                                              const LsqrConfig& config,
                                              std::vector<LsqrReport>* reports) {
  if (damps.empty()) throw std::invalid_argument("lsqr: at least one damping value required");
  if (b.size() != A.rows) throw std::invalid_argument("lsqr: rhs length != operator rows");

  const double bnorm = b.norm();
  std::vector<DampState> states(damps.size());
  for (std::size_t i = 0; i < damps.size(); ++i) {
    states[i].damp = damps[i];
    states[i].x = Eigen::VectorXcd::Zero(A.cols);
  }
  if (bnorm == 0.0) {
    std::vector<Eigen::VectorXcd> out;
    for (auto& s : states) {
      s.report.converged = true;
      out.push_back(std::move(s.x));
    }
    if (reports) {
      reports->clear();
      for (auto& s : states) reports->push_back(s.report);
    }
    return out;
  }

  // Golub-Kahan bidiagonalization, shared across damps.
  double beta = bnorm;
  Eigen::VectorXcd u = b / beta;
  Eigen::VectorXcd v = A.apply_adjoint(u);
  double alpha = v.norm();
  if (alpha > 0.0) v /= alpha;

  for (auto& s : states) {
    s.phibar = beta;
    s.rhobar = alpha;
    s.w = v;
    s.anorm2 = alpha * alpha;
  }

  int remaining = static_cast<int>(states.size());
  for (int iter = 1; iter <= config.max_iterations && remaining > 0 && alpha > 0.0; ++iter) {
    Eigen::VectorXcd u_next = A.apply(v) - alpha * u;
    beta = u_next.norm();
    if (beta > 0.0) u_next /= beta;
    Eigen::VectorXcd v_next = A.apply_adjoint(u_next) - beta * v;
    const double alpha_next = v_next.norm();
    if (alpha_next > 0.0) v_next /= alpha_next;

    for (auto& s : states) {
      if (s.done) continue;
      // fold the damping row into the bidiagonal factor
      const double rhobar1 = std::hypot(s.rhobar, s.damp);
      const double cs1 = s.rhobar / rhobar1;
      const double sn1 = s.damp / rhobar1;
      const double psi = sn1 * s.phibar;
      s.phibar = cs1 * s.phibar;
      s.res2 += psi * psi;
      // eliminate the subdiagonal
      const double rho = std::hypot(rhobar1, beta);
      const double cs = rhobar1 / rho;
      const double sn = beta / rho;
      const double theta = sn * alpha_next;
      s.rhobar = -cs * alpha_next;
      const double phi = cs * s.phibar;
      s.phibar = sn * s.phibar;

      s.x += (phi / rho) * s.w;
      s.w = v_next - (theta / rho) * s.w;

      s.anorm2 += alpha_next * alpha_next + beta * beta + s.damp * s.damp;
      const double anorm = std::sqrt(s.anorm2);
      const double rnorm = std::sqrt(s.phibar * s.phibar + s.res2);
      const double arnorm = alpha_next * std::abs(sn * phi);
      const double xnorm = s.x.norm();

      s.report.iterations = iter;
      s.report.residual_norm = rnorm;
      s.report.normal_residual_norm = arnorm;
      const double rtol = config.btol + config.atol * anorm * xnorm / bnorm;
      const bool consistent = rnorm / bnorm <= rtol;
      const bool least_squares = arnorm <= config.atol * anorm * rnorm;
      if (consistent || least_squares) {
        s.report.converged = true;
        s.done = true;
        --remaining;
      }
    }

    u = std::move(u_next);
    v = std::move(v_next);
    alpha = alpha_next;
    if (beta == 0.0) break;  // Krylov space exhausted: solutions are exact
  }

  std::vector<Eigen::VectorXcd> out;
  out.reserve(states.size());
  if (reports) reports->clear();
  for (auto& s : states) {
    if (reports) reports->push_back(s.report);
    out.push_back(std::move(s.x));
  }
  return out;
}

namespace {

LinearOperator weighted_plan_operator(const TransformPlan& plan,
                                      const Eigen::VectorXd& inv_sqrt_weights) {
  LinearOperator op;
  op.rows = plan.node_set().count();
  op.cols = static_cast<Eigen::Index>(plan.index_set().total_cardinality());
  op.apply = [&plan, inv_sqrt_weights](const Eigen::VectorXcd& g) -> Eigen::VectorXcd {
    GroupedCoefficients c(plan.index_set_ptr(),
                          g.cwiseProduct(inv_sqrt_weights.cast<std::complex<double>>()));
    return plan.forward(c);
  };
  op.apply_adjoint = [&plan, inv_sqrt_weights](const Eigen::VectorXcd& r) -> Eigen::VectorXcd {
    Eigen::VectorXcd scaled = plan.adjoint(r).values().cwiseProduct(
        inv_sqrt_weights.cast<std::complex<double>>());
    return scaled;
  };
  return op;
}

// [A; damp I] stacked, for warm-started solves with a nonzero damping target.
LinearOperator augmented_operator(const LinearOperator& A, double damp) {
  LinearOperator op;
  op.rows = A.rows + A.cols;
  op.cols = A.cols;
  op.apply = [A, damp](const Eigen::VectorXcd& x) {
    Eigen::VectorXcd out(A.rows + A.cols);
    out.head(A.rows) = A.apply(x);
    out.tail(A.cols) = damp * x;
    return out;
  };
  op.apply_adjoint = [A, damp](const Eigen::VectorXcd& r) {
    Eigen::VectorXcd out = A.apply_adjoint(r.head(A.rows));
    out += damp * r.tail(A.cols);
    return out;
  };
  return op;
}

}  // namespace

GroupedCoefficients lsqr_solve(const TransformPlan& plan, const Eigen::VectorXcd& y,
                               double lambda, const WeightFunction& weights,
                               const LsqrConfig& config, const GroupedCoefficients* initial,
                               LsqrReport* report) {
  if (lambda < 0.0) throw std::invalid_argument("lsqr_solve: lambda must be >= 0");
  if (y.size() != plan.node_set().count())
    throw std::invalid_argument("lsqr_solve: sample length != node count");
  const Eigen::VectorXd w = weights.evaluate(plan.index_set());
  const Eigen::VectorXd inv_sqrt = w.cwiseSqrt().cwiseInverse();
  const LinearOperator op = weighted_plan_operator(plan, inv_sqrt);
  const double damp = std::sqrt(2.0 * lambda);

  std::vector<LsqrReport> reports;
  Eigen::VectorXcd g;
  if (initial == nullptr) {
    auto solutions = lsqr_multi_damp(op, y, {damp}, config, &reports);
    g = std::move(solutions.front());
  } else {
    // solve for the correction h: min ||[r0; -damp g0] - [A; damp I] h||
    Eigen::VectorXcd g0 =
        initial->values().cwiseProduct(w.cwiseSqrt().cast<std::complex<double>>());
    Eigen::VectorXcd rhs(op.rows + op.cols);
    rhs.head(op.rows) = y - op.apply(g0);
    rhs.tail(op.cols) = -damp * g0;
    auto solutions = lsqr_multi_damp(augmented_operator(op, damp), rhs, {0.0}, config, &reports);
    g = g0 + solutions.front();
  }
  if (report) *report = reports.front();
  return GroupedCoefficients(plan.index_set_ptr(),
                             g.cwiseProduct(inv_sqrt.cast<std::complex<double>>()));
}

std::vector<GroupedCoefficients> lsqr_solve_sweep(const TransformPlan& plan,
                                                  const Eigen::VectorXcd& y,
                                                  const std::vector<double>& lambdas,
                                                  const WeightFunction& weights,
                                                  const LsqrConfig& config,
                                                  std::vector<LsqrReport>* reports) {
  if (y.size() != plan.node_set().count())
    throw std::invalid_argument("lsqr_solve_sweep: sample length != node count");
  const Eigen::VectorXd w = weights.evaluate(plan.index_set());
  const Eigen::VectorXd inv_sqrt = w.cwiseSqrt().cwiseInverse();
  const LinearOperator op = weighted_plan_operator(plan, inv_sqrt);
  std::vector<double> damps;
  damps.reserve(lambdas.size());
  for (double lambda : lambdas) {
    if (lambda < 0.0) throw std::invalid_argument("lsqr_solve_sweep: lambda must be >= 0");
    damps.push_back(std::sqrt(2.0 * lambda));
  }
  auto solutions = lsqr_multi_damp(op, y, damps, config, reports);
  std::vector<GroupedCoefficients> out;
  out.reserve(solutions.size());
  for (auto& g : solutions)
    out.emplace_back(plan.index_set_ptr(),
                     g.cwiseProduct(inv_sqrt.cast<std::complex<double>>()));
  return out;
}

}  // namespace ganova
