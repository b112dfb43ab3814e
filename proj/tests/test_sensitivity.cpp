#include <doctest.h>

#include <stdexcept>
#include <algorithm>

#include <numbers>

#include "ganova/sensitivity.hpp"
#include "ganova/transform_plan.hpp"
#include "support/oracles.hpp"

using namespace ganova;
using ganova::testing::random_complex;
using ganova::testing::uniform01;

namespace {

std::shared_ptr<const GroupedIndexSet> small_set() {
  return std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(3, 2), {4, 4}, Basis::exponential));
}

FitResult annotated(GroupedCoefficients coeffs) {
  FitResult fit{std::move(coeffs)};
  annotate_sensitivity(fit);
  return fit;
}

}  // namespace

TEST_CASE("term variance basics") {
  auto set = small_set();
  GroupedCoefficients coeffs(set);
  CHECK(term_variance(coeffs, Term{}) == 0.0);
  CHECK(term_variance(coeffs, Term{1}) == 0.0);

  coeffs[0] = 10.0;  // the constant coefficient never counts
  const std::size_t g = set->term_set().index_of(Term{2}).value();
  coeffs[set->group_offset(g)] = {0.0, 2.0};
  CHECK(term_variance(coeffs, Term{2}) == doctest::Approx(4.0));
  CHECK(global_variance(coeffs) == doctest::Approx(4.0));
  CHECK_THROWS_AS(term_variance(coeffs, Term{3, 2, 1}), std::invalid_argument);
}

TEST_CASE("term variance matches Monte-Carlo variance of the reconstruction") {
  std::mt19937_64 gen(51);
  auto set = small_set();
  GroupedCoefficients coeffs(set);
  const std::size_t g = set->term_set().index_of(Term{1, 3}).value();
  for (std::size_t i = 0; i < set->group_size(g); ++i)
    coeffs[set->group_offset(g) + i] = {uniform01(gen) - 0.5, uniform01(gen) - 0.5};

  const Eigen::Index samples = 1000000;
  Eigen::MatrixXd nodes(3, samples);
  for (Eigen::Index i = 0; i < nodes.size(); ++i) nodes.data()[i] = uniform01(gen);
  TransformPlan plan(std::make_shared<NodeSet>(std::move(nodes), Basis::exponential), set,
                     TransformMethod::fast, FastParams{2.0, 6, 0});
  const Eigen::VectorXcd values = plan.forward(coeffs);
  const std::complex<double> mean = values.mean();
  double variance = 0.0;
  for (Eigen::Index i = 0; i < samples; ++i) variance += std::norm(values[i] - mean);
  variance /= static_cast<double>(samples);
  CHECK(variance == doctest::Approx(term_variance(coeffs, g)).epsilon(0.01));
}

TEST_CASE("sensitivity indices") {
  auto set = small_set();
  GroupedCoefficients coeffs(set);
  const std::size_t g1 = set->term_set().index_of(Term{1}).value();
  const std::size_t g23 = set->term_set().index_of(Term{2, 3}).value();

  coeffs[set->group_offset(g1)] = 2.0;
  CHECK(global_sensitivity_index(coeffs, Term{1}) == doctest::Approx(1.0));

  coeffs[set->group_offset(g23)] = {0.0, -2.0};
  CHECK(global_sensitivity_index(coeffs, Term{1}) == doctest::Approx(0.5));
  CHECK(global_sensitivity_index(coeffs, Term{2, 3}) == doctest::Approx(0.5));

  GroupedCoefficients zero(set);
  CHECK_THROWS_AS(global_sensitivity_index(zero, Term{1}), std::domain_error);
}

TEST_CASE("sensitivity indices sum to one") {
  std::mt19937_64 gen(52);
  auto set = small_set();
  FitResult fit = annotated(GroupedCoefficients(
      set, random_complex(static_cast<Eigen::Index>(set->total_cardinality()), gen)));
  double sum = 0.0;
  for (std::size_t g = 0; g < set->group_count(); ++g) sum += fit.sensitivity[g];
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("active set detection") {
  std::mt19937_64 gen(53);
  auto set = small_set();
  FitResult fit = annotated(GroupedCoefficients(
      set, random_complex(static_cast<Eigen::Index>(set->total_cardinality()), gen)));

  ActiveSetSpec everything{{0.0, 0.0}};
  const TermSet all = detect_active_set(fit, everything);
  CHECK(all.size() == set->group_count());  // every positive GSI survives eps = 0

  const double top = *std::max_element(fit.sensitivity.begin(), fit.sensitivity.end());
  ActiveSetSpec none{{std::min(0.999, top), std::min(0.999, top)}};
  const TermSet only_const = detect_active_set(fit, none);
  CHECK(only_const.size() == 1);
  CHECK(only_const.term(0).empty());

  // raising any threshold never adds terms
  ActiveSetSpec low{{0.01, 0.02}};
  ActiveSetSpec high{{0.05, 0.02}};
  const TermSet loose = detect_active_set(fit, low);
  const TermSet tight = detect_active_set(fit, high);
  for (const auto& u : tight.terms()) CHECK(loose.contains(u));

  ActiveSetSpec invalid{{1.0, 0.5}};
  CHECK_THROWS_AS(detect_active_set(fit, invalid), std::invalid_argument);
}

TEST_CASE("relative l2 error basics") {
  auto set = small_set();
  // oracle: exact coefficients 1/(1+flat index), norm adds a tail of 0.25
  std::vector<double> exact(set->total_cardinality());
  double captured = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    exact[i] = 1.0 / (1.0 + static_cast<double>(i));
    captured += exact[i] * exact[i];
  }
  L2Oracle oracle;
  oracle.norm_squared = captured + 0.25;
  oracle.coefficient = [&set, &exact](const std::vector<int>& k) {
    for (std::size_t i = 0; i < exact.size(); ++i)
      if (set->frequency_at(i) == k) return std::complex<double>(exact[i], 0.0);
    return std::complex<double>(0.0, 0.0);
  };

  GroupedCoefficients zero(set);
  CHECK(relative_l2_error(zero, oracle) == doctest::Approx(1.0));

  GroupedCoefficients perfect(set);
  for (std::size_t i = 0; i < exact.size(); ++i) perfect[i] = exact[i];
  CHECK(relative_l2_error(perfect, oracle) ==
        doctest::Approx(std::sqrt(0.25 / oracle.norm_squared)));

  // an inconsistent oracle (norm smaller than the captured mass) is refused
  L2Oracle broken = oracle;
  broken.norm_squared = captured - 0.1;
  CHECK_THROWS_AS(relative_l2_error(perfect, broken), std::domain_error);
}

TEST_CASE("l2 error shrinks on nested index sets") {
  std::mt19937_64 gen(54);
  auto small = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(2, 2), {4, 4}, Basis::exponential));
  auto big = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(2, 2), {8, 6}, Basis::exponential));
  L2Oracle oracle;
  oracle.norm_squared = 40.0;  // large enough to stay consistent
  oracle.coefficient = [](const std::vector<int>& k) {
    double w = 1.0;
    for (int kj : k) w *= 1.0 + std::abs(kj);
    return std::complex<double>(1.0 / (w * w), 0.0);
  };
  GroupedCoefficients on_small(small);
  for (std::size_t i = 0; i < small->total_cardinality(); ++i)
    on_small[i] = oracle.coefficient(small->frequency_at(i));
  GroupedCoefficients on_big(big);
  for (std::size_t i = 0; i < big->total_cardinality(); ++i)
    on_big[i] = oracle.coefficient(big->frequency_at(i));
  CHECK(relative_l2_error(on_big, oracle) <= relative_l2_error(on_small, oracle));
}

TEST_CASE("network structure") {
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(2, 1), {4}, Basis::exponential));
  GroupedCoefficients coeffs(set);
  coeffs[1] = 1.0;
  FitResult fit = annotated(std::move(coeffs));
  const std::string dot = emit_anova_network(fit, 0.5);

  const auto count = [&dot](const std::string& needle) {
    std::size_t n = 0, pos = 0;
    while ((pos = dot.find(needle, pos)) != std::string::npos) {
      ++n;
      pos += needle.size();
    }
    return n;
  };
  CHECK(count("[shape=circle") == 3);        // 2 variables + sum
  CHECK(count("[shape=box") == 3);           // const, {1}, {2}
  CHECK(count("-> sum") == 3);               // every term feeds the sum
  CHECK(count("x1 ->") == 1);                // edges into terms = sum of |u|
  CHECK(count("x2 ->") == 1);
  CHECK(count("style=dashed") == 1);         // the inactive {2} is faint
}
