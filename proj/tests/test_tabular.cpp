#include <doctest.h>

#include <stdexcept>

#include <numeric>
#include <set>
#include <sstream>

#include "ganova/tabular.hpp"

using namespace ganova;
namespace tab = ganova::tabular;

namespace {

const char* kToyCsv =
    "age,color,score,income\n"
    "25,red,0.5,>50K\n"
    "30,?,0.25,<=50K\n"
    "35,blue,1.0,<=50K\n"
    "40,red,0.0,>50K\n";

tab::Recipe toy_recipe() {
  tab::Recipe recipe;
  recipe.label_column = "income";
  recipe.positive_label = ">50K";
  return recipe;
}

}  // namespace

TEST_CASE("load drops missing rows and encodes categoricals") {
  std::istringstream csv(kToyCsv);
  const auto data = tab::load_and_preprocess(csv, toy_recipe());
  CHECK(data.rows() == 3);  // the '?' row is gone
  CHECK(data.feature_count() == 3);
  CHECK(data.schema[0].kind == tab::ColumnKind::numeric);
  CHECK(data.schema[1].kind == tab::ColumnKind::categorical);

  // categorical codes by first appearance: red=0, blue=1, then min-max
  CHECK(data.features(0, 1) == 0.0);
  CHECK(data.features(1, 1) == 1.0);
  CHECK(data.features(2, 1) == 0.0);

  // all features normalized into [0,1]
  CHECK(data.features.minCoeff() >= 0.0);
  CHECK(data.features.maxCoeff() <= 1.0);
  CHECK(data.features(0, 0) == 0.0);   // age 25 is the minimum
  CHECK(data.features(2, 0) == 1.0);   // age 40 is the maximum

  CHECK(data.labels[0] == 1.0);
  CHECK(data.labels[1] == 0.0);
  CHECK(data.labels[2] == 1.0);
}

TEST_CASE("constant columns normalize to zero and scaling is idempotent") {
  std::istringstream csv(
      "a,b,income\n"
      "7,1,>50K\n"
      "7,2,<=50K\n"
      "7,3,>50K\n");
  const auto data = tab::load_and_preprocess(csv, toy_recipe());
  CHECK(data.features.col(0).cwiseAbs().maxCoeff() == 0.0);

  std::vector<Eigen::Index> all = {0, 1, 2};
  const auto scaler = tab::MinMaxScaler::fit(data, all);
  const Eigen::MatrixXd again = scaler.apply(data, all);
  CHECK((again - data.features).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unknown columns are rejected") {
  tab::Recipe recipe = toy_recipe();
  recipe.drop_columns = {"nope"};
  std::istringstream csv(kToyCsv);
  CHECK_THROWS(tab::load_and_preprocess(csv, recipe));

  tab::Recipe missing_label = toy_recipe();
  missing_label.label_column = "absent";
  std::istringstream csv2(kToyCsv);
  CHECK_THROWS(tab::load_and_preprocess(csv2, missing_label));
}

TEST_CASE("test rows are scaled with train statistics and clamped") {
  std::istringstream csv(
      "a,income\n"
      "0,>50K\n"
      "10,<=50K\n"
      "100,>50K\n");
  const auto data = tab::load_and_preprocess(csv, toy_recipe());
  const auto scaler = tab::MinMaxScaler::fit(data, {0, 1});  // train range [0, 10] scaled
  const Eigen::MatrixXd test = scaler.apply(data, {2});
  CHECK(test(0, 0) == 1.0);  // outside the train range, clamped
}

TEST_CASE("split sizes and determinism") {
  const auto [train_a, test_a] = tab::split(45199, 0.8, 3);
  CHECK(train_a.size() == 36159);  // floor convention
  CHECK(test_a.size() == 9040);

  const auto [train_b, test_b] = tab::split(45199, 0.8, 3);
  CHECK(train_a == train_b);
  CHECK(test_a == test_b);

  const auto [small_train, small_test] = tab::split(4, 0.5, 1);
  CHECK(small_train.size() == 2);
  CHECK(small_test.size() == 2);

  CHECK_THROWS_AS(tab::split(10, 1.0, 0), std::invalid_argument);
}

TEST_CASE("kfold partitions") {
  const auto folds = tab::kfold(45199, 10, 5);
  REQUIRE(folds.size() == 10);
  std::size_t larger = 0;
  for (const auto& [train, test] : folds) {
    CHECK((test.size() == 4520 || test.size() == 4519));
    if (test.size() == 4520) ++larger;
    CHECK(train.size() + test.size() == 45199);
  }
  CHECK(larger == 9);

  // union of the test folds covers everything exactly once
  const auto tiny = tab::kfold(23, 4, 9);
  std::set<Eigen::Index> seen;
  for (const auto& [train, test] : tiny)
    for (Eigen::Index i : test) CHECK(seen.insert(i).second);
  CHECK(seen.size() == 23);

  const auto loo = tab::kfold(6, 6, 2);
  for (const auto& [train, test] : loo) CHECK(test.size() == 1);

  CHECK_THROWS_AS(tab::kfold(3, 4, 0), std::invalid_argument);
}

TEST_CASE("classification report") {
  auto set = std::make_shared<const GroupedIndexSet>(GroupedIndexSet::with_order_bandwidths(
      TermSet::superset(2, 1), {3}, Basis::cosine));
  GroupedCoefficients model(set);
  model[0] = 1.0;  // constant prediction 1 everywhere

  Eigen::MatrixXd points(2, 4);
  points << 0.1, 0.4, 0.6, 0.9, 0.2, 0.3, 0.7, 0.8;
  const NodeSet nodes(points, Basis::cosine);

  Eigen::VectorXd labels(4);
  labels << 1, 1, 1, 1;
  const auto perfect = tab::classify_and_score(model, nodes, labels);
  CHECK(perfect.accuracy == 100.0);
  CHECK(perfect.true_positive == 4);

  labels << 0, 0, 0, 0;
  const auto wrong = tab::classify_and_score(model, nodes, labels);
  CHECK(wrong.accuracy == 0.0);
  CHECK(wrong.false_positive == 4);

  labels << 1, 0, 1, 0;
  const auto half = tab::classify_and_score(model, nodes, labels);
  CHECK(half.accuracy == doctest::Approx(
                             100.0 * (half.true_positive + half.true_negative) / 4.0));

  labels << 1, 0, 2, 0;
  CHECK_THROWS_AS(tab::classify_and_score(model, nodes, labels), std::invalid_argument);
}

TEST_CASE("recipe json") {
  const auto recipe = tab::recipe_from_json(
      R"({"drop_columns":["a","b"],"label_column":"y","positive_label":"yes","missing_marker":"NA"})");
  CHECK(recipe.drop_columns == std::vector<std::string>{"a", "b"});
  CHECK(recipe.label_column == "y");
  CHECK(recipe.positive_label == "yes");
  CHECK(recipe.missing_marker == "NA");

  const auto census = tab::census_recipe();
  CHECK(census.drop_columns == std::vector<std::string>{"education", "fnlwgt"});
  CHECK(census.label_column == "income");
}
