#include <doctest.h>

#include <Eigen/Dense>

#include "ganova/lsqr.hpp"
#include "ganova/transform_plan.hpp"
#include "support/oracles.hpp"

using namespace ganova;
using ganova::testing::dense_basis_matrix;
using ganova::testing::random_complex;
using ganova::testing::random_nodes;

namespace {

// dense minimizer of 1/2||y - F f||^2 + lambda ||f||_W^2 from the normal
// equations (F^H F + 2 lambda W) f = F^H y
Eigen::VectorXcd dense_tikhonov(const Eigen::MatrixXcd& F, const Eigen::VectorXcd& y,
                                double lambda, const Eigen::VectorXd& w) {
  Eigen::MatrixXcd normal = F.adjoint() * F;
  normal += (2.0 * lambda) * w.asDiagonal().toDenseMatrix().cast<std::complex<double>>();
  return normal.ldlt().solve(F.adjoint() * y);
}

}  // namespace

TEST_CASE("huge damping crushes the coefficients") {
  std::mt19937_64 gen(31);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(3, 2), {4, 4}, Basis::exponential));
  auto nodes = std::make_shared<const NodeSet>(random_nodes(3, 60, gen), Basis::exponential);
  TransformPlan plan(nodes, set, TransformMethod::direct);
  const Eigen::VectorXcd y = random_complex(60, gen);
  const auto fhat = lsqr_solve(plan, y, 1e12, WeightFunction::ones());
  CHECK(fhat.values().cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("equispaced grid has the diagonal closed form") {
  // d = 1, full grid of M nodes: F^H F = M I, so the minimizer is
  // diag(M + 2 lambda w(k))^{-1} F^H y
  const int M = 32;
  Eigen::MatrixXd grid(1, M);
  for (int m = 0; m < M; ++m) grid(0, m) = static_cast<double>(m) / M;
  auto nodes = std::make_shared<const NodeSet>(grid, Basis::exponential);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(1, 1), {16}, Basis::exponential));
  std::mt19937_64 gen(32);
  const Eigen::VectorXcd y = random_complex(M, gen);
  TransformPlan plan(nodes, set, TransformMethod::direct);
  for (const WeightFunction& weights : {WeightFunction::ones(), WeightFunction::sobolev(1.5)}) {
    const Eigen::VectorXd w = weights.evaluate(*set);
    for (double lambda : {0.0, 0.8, 37.0}) {
      LsqrConfig config;
      config.atol = 1e-12;
      config.btol = 1e-12;
      const auto fhat = lsqr_solve(plan, y, lambda, weights, config);
      const Eigen::VectorXcd fty = plan.adjoint(y).values();
      Eigen::VectorXcd expected(fty.size());
      for (Eigen::Index i = 0; i < fty.size(); ++i)
        expected[i] = fty[i] / (M + 2.0 * lambda * w[i]);
      CHECK((fhat.values() - expected).norm() / expected.norm() < 1e-8);
    }
  }
}

TEST_CASE("matches the dense normal equations on random instances") {
  std::mt19937_64 gen(33);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(4, 2), {4, 4}, Basis::exponential));
  auto nodes = std::make_shared<const NodeSet>(random_nodes(4, 150, gen), Basis::exponential);
  TransformPlan plan(nodes, set, TransformMethod::direct);
  const Eigen::MatrixXcd F = dense_basis_matrix(*nodes, *set);
  const Eigen::VectorXcd y = random_complex(150, gen);
  LsqrConfig config;
  config.atol = 1e-12;
  config.btol = 1e-12;
  config.max_iterations = 2000;
  for (const WeightFunction& weights : {WeightFunction::ones(), WeightFunction::sobolev(1.0)}) {
    for (double lambda : {0.0, 0.3, 4.0}) {
      const auto fhat = lsqr_solve(plan, y, lambda, weights, config);
      const Eigen::VectorXcd expected =
          dense_tikhonov(F, y, lambda, weights.evaluate(*set));
      CHECK((fhat.values() - expected).norm() / expected.norm() < 1e-6);
    }
  }
}

TEST_CASE("sweep solutions equal standalone solves") {
  std::mt19937_64 gen(34);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(3, 2), {6, 4}, Basis::exponential));
  auto nodes = std::make_shared<const NodeSet>(random_nodes(3, 120, gen), Basis::exponential);
  TransformPlan plan(nodes, set, TransformMethod::direct);
  const Eigen::VectorXcd y = random_complex(120, gen);
  const WeightFunction weights = WeightFunction::sobolev(0.5);
  const std::vector<double> lambdas = {50.0, 5.0, 0.5};
  LsqrConfig config;
  config.atol = 1e-11;
  config.btol = 1e-11;
  config.max_iterations = 1000;
  const auto swept = lsqr_solve_sweep(plan, y, lambdas, weights, config);
  REQUIRE(swept.size() == 3);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto single = lsqr_solve(plan, y, lambdas[i], weights, config);
    CHECK((swept[i].values() - single.values()).norm() /
              std::max(1.0, single.values().norm()) <
          1e-8);
  }
}

TEST_CASE("warm start converges to the same minimizer") {
  std::mt19937_64 gen(35);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(3, 1), {8}, Basis::exponential));
  auto nodes = std::make_shared<const NodeSet>(random_nodes(3, 80, gen), Basis::exponential);
  TransformPlan plan(nodes, set, TransformMethod::direct);
  const Eigen::VectorXcd y = random_complex(80, gen);
  const WeightFunction weights = WeightFunction::ones();
  LsqrConfig config;
  config.atol = 1e-12;
  config.btol = 1e-12;
  const auto cold = lsqr_solve(plan, y, 2.0, weights, config);
  GroupedCoefficients guess(set, random_complex(cold.values().size(), gen));
  LsqrReport report;
  const auto warm = lsqr_solve(plan, y, 2.0, weights, config, &guess, &report);
  CHECK((warm.values() - cold.values()).norm() / cold.values().norm() < 1e-7);
  CHECK(report.converged);
}

TEST_CASE("non-convergence is reported, not fatal") {
  std::mt19937_64 gen(36);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(4, 2), {6, 6}, Basis::exponential));
  auto nodes = std::make_shared<const NodeSet>(random_nodes(4, 200, gen), Basis::exponential);
  TransformPlan plan(nodes, set, TransformMethod::direct);
  const Eigen::VectorXcd y = random_complex(200, gen);
  LsqrConfig config;
  config.max_iterations = 2;
  config.atol = 1e-14;
  config.btol = 1e-14;
  LsqrReport report;
  const auto fhat = lsqr_solve(plan, y, 0.01, WeightFunction::ones(), config, nullptr, &report);
  CHECK_FALSE(report.converged);
  CHECK(report.iterations == 2);
  CHECK(report.residual_norm > 0.0);
  CHECK(fhat.values().allFinite());
}
