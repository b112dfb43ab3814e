#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ganova/prox.hpp"
#include "support/oracles.hpp"

using namespace ganova;
using ganova::testing::random_complex;
using ganova::testing::uniform01;

namespace {

double weighted_norm(const Eigen::VectorXcd& x, const Eigen::VectorXd& w) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) sum += w[i] * std::norm(x[i]);
  return std::sqrt(sum);
}

double shrink_objective(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y, double xi,
                        const Eigen::VectorXd& w) {
  return 0.5 * (x - y).squaredNorm() + xi * weighted_norm(x, w) * weighted_norm(x, w);
}

// slow subgradient-descent oracle for 1/2||x-y||^2 + lambda ||x||_W
Eigen::VectorXcd descent_oracle(const Eigen::VectorXcd& y, const Eigen::VectorXd& w,
                                double lambda) {
  Eigen::VectorXcd x = y;
  double step = 0.2;
  for (int it = 0; it < 400000; ++it) {
    const double norm = weighted_norm(x, w);
    if (norm == 0.0) break;
    Eigen::VectorXcd gradient = x - y;
    for (Eigen::Index i = 0; i < x.size(); ++i) gradient[i] += lambda / norm * w[i] * x[i];
    x -= step * gradient;
    if (it % 50000 == 49999) step *= 0.5;
  }
  return x;
}

GroupedCoefficients pack(const std::shared_ptr<const GroupedIndexSet>& set,
                         const Eigen::VectorXcd& values) {
  return GroupedCoefficients(set, values);
}

}  // namespace

TEST_CASE("closed-form shrink") {
  std::mt19937_64 gen(21);
  const Eigen::VectorXcd y = random_complex(5, gen);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(5);

  CHECK((shrink_group_closed_form(y, 1e-14, ones) - y).norm() < 1e-12);
  CHECK((shrink_group_closed_form(y, 0.5, ones) - 0.5 * y).norm() < 1e-15);

  // matches a numerical minimizer of the strictly convex objective
  Eigen::VectorXd w(5);
  for (Eigen::Index i = 0; i < 5; ++i) w[i] = 1.0 + 3.0 * uniform01(gen);
  const double xi = 0.7;
  const Eigen::VectorXcd x = shrink_group_closed_form(y, xi, w);
  const double best = shrink_objective(x, y, xi, w);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXcd perturbed = x + 1e-3 * random_complex(5, gen);
    CHECK(shrink_objective(perturbed, y, xi, w) >= best);
  }
}

TEST_CASE("find_xi closed form with unit weights") {
  std::mt19937_64 gen(22);
  const Eigen::VectorXcd y = random_complex(7, gen);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(7);
  const double lambda = 0.4 * y.norm();
  const double xi = find_xi(y, ones, lambda).xi;
  const double expected = 1.0 / (y.norm() / lambda - 1.0);
  CHECK(xi == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("find_xi scalar example") {
  Eigen::VectorXcd y(1);
  y[0] = 4.0;
  Eigen::VectorXd w(1);
  w[0] = 2.0;
  // t(xi) = 2*16/(1/xi+2)^2 = 1  =>  1/xi = 4 sqrt(2) - 2
  const double expected = 1.0 / (4.0 * std::sqrt(2.0) - 2.0);
  const double xi = find_xi(y, w, 1.0).xi;
  CHECK(xi == doctest::Approx(expected).epsilon(1e-10));
  const double t = 2.0 * 16.0 / std::pow(1.0 / xi + 2.0, 2.0);
  CHECK(t == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("t is strictly increasing in xi") {
  std::mt19937_64 gen(23);
  const Eigen::VectorXcd y = random_complex(6, gen);
  Eigen::VectorXd w(6);
  for (Eigen::Index i = 0; i < 6; ++i) w[i] = 1.0 + uniform01(gen);
  const auto t_of = [&](double xi) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < 6; ++i)
      sum += w[i] * std::norm(y[i]) / std::pow(1.0 / xi + w[i], 2.0);
    return sum;
  };
  double previous = 0.0;
  for (double xi : {0.01, 0.1, 0.5, 1.0, 5.0, 50.0}) {
    const double value = t_of(xi);
    CHECK(value > previous);
    previous = value;
  }
}

TEST_CASE("find_xi rejects the zero branch") {
  Eigen::VectorXcd y(2);
  y << 0.1, 0.1;
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(find_xi(y, ones, 10.0), std::invalid_argument);
}

TEST_CASE("grouped prox: identity, soft threshold, zero branch") {
  std::mt19937_64 gen(24);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(3, 2), {4, 4}, Basis::exponential));
  const Eigen::VectorXd ones =
      Eigen::VectorXd::Ones(static_cast<Eigen::Index>(set->total_cardinality()));
  GroupedCoefficients input =
      pack(set, random_complex(static_cast<Eigen::Index>(set->total_cardinality()), gen));

  const GroupedCoefficients identity = prox_grouped(input, 0.0, ones);
  CHECK((identity.values() - input.values()).norm() == 0.0);

  // with unit weights each group is the classical group soft threshold
  const double lambda = 0.35;
  const GroupedCoefficients shrunk = prox_grouped(input, lambda, ones);
  for (std::size_t g = 0; g < set->group_count(); ++g) {
    const Eigen::VectorXcd y = input.group(g);
    const double norm = y.norm();
    const Eigen::VectorXcd expected =
        norm > lambda ? ((1.0 - lambda / norm) * y).eval()
                      : Eigen::VectorXcd::Zero(y.size()).eval();
    CHECK((shrunk.group(g) - expected).norm() < 1e-12 * std::max(1.0, norm));
  }

  // a threshold above every group norm zeroes everything
  const GroupedCoefficients zeroed = prox_grouped(input, 1e3, ones);
  CHECK(zeroed.values().norm() == 0.0);
}

TEST_CASE("grouped prox stationarity with Sobolev weights") {
  std::mt19937_64 gen(25);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(4, 2), {6, 4}, Basis::exponential));
  const Eigen::VectorXd w = WeightFunction::sobolev(1.5).evaluate(*set);
  for (int trial = 0; trial < 25; ++trial) {
    GroupedCoefficients input =
        pack(set, random_complex(static_cast<Eigen::Index>(set->total_cardinality()), gen));
    const double lambda = 0.1 + 2.0 * uniform01(gen);
    const GroupedCoefficients out = prox_grouped(input, lambda, w);
    for (std::size_t g = 0; g < set->group_count(); ++g) {
      const Eigen::VectorXcd x = out.group(g);
      const Eigen::VectorXcd y = input.group(g);
      const Eigen::VectorXd wg =
          w.segment(static_cast<Eigen::Index>(set->group_offset(g)),
                    static_cast<Eigen::Index>(set->group_size(g)));
      if (x.norm() == 0.0) {
        double threshold = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) threshold += std::norm(y[i]) / wg[i];
        CHECK(std::sqrt(threshold) <= lambda * (1.0 + 1e-10));
      } else {
        const double norm = weighted_norm(x, wg);
        Eigen::VectorXcd residual = x - y;
        for (Eigen::Index i = 0; i < x.size(); ++i)
          residual[i] += lambda / norm * wg[i] * x[i];
        CHECK(residual.norm() < 1e-8 * std::max(1.0, y.norm()));
      }
    }
  }
}

TEST_CASE("grouped prox matches the subgradient descent oracle") {
  std::mt19937_64 gen(26);
  Eigen::VectorXcd y = random_complex(3, gen) * 2.0;
  Eigen::VectorXd w(3);
  w << 1.0, std::pow(2.0, 1.5), std::pow(3.0, 1.5);
  const double lambda = 0.3 * weighted_norm(y, w);
  const Eigen::VectorXcd slow = descent_oracle(y, w, lambda);
  const double xi = find_xi(y, w, lambda).xi;
  Eigen::VectorXcd fast(3);
  for (Eigen::Index i = 0; i < 3; ++i) fast[i] = y[i] / (1.0 + xi * w[i]);
  CHECK((fast - slow).norm() < 1e-5);
}

TEST_CASE("prox is non-expansive with unit weights") {
  std::mt19937_64 gen(27);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(3, 2), {4, 4}, Basis::exponential));
  const Eigen::VectorXd ones =
      Eigen::VectorXd::Ones(static_cast<Eigen::Index>(set->total_cardinality()));
  for (int trial = 0; trial < 50; ++trial) {
    GroupedCoefficients a =
        pack(set, random_complex(static_cast<Eigen::Index>(set->total_cardinality()), gen));
    GroupedCoefficients b =
        pack(set, random_complex(static_cast<Eigen::Index>(set->total_cardinality()), gen));
    const double lambda = 2.0 * uniform01(gen);
    const auto pa = prox_grouped(a, lambda, ones);
    const auto pb = prox_grouped(b, lambda, ones);
    CHECK((pa.values() - pb.values()).norm() <=
          (a.values() - b.values()).norm() * (1.0 + 1e-12));
  }
}

TEST_CASE("constant group can be exempted") {
  std::mt19937_64 gen(28);
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(2, 1), {4}, Basis::exponential));
  GroupedCoefficients input =
      pack(set, random_complex(static_cast<Eigen::Index>(set->total_cardinality()), gen));
  const Eigen::VectorXd ones =
      Eigen::VectorXd::Ones(static_cast<Eigen::Index>(set->total_cardinality()));
  ProxOptions options;
  options.exempt_constant_group = true;
  const auto out = prox_grouped(input, 1e6, ones, options);
  CHECK(out[0] == input[0]);
  CHECK(out.values().tail(out.size() - 1).norm() == 0.0);
}
