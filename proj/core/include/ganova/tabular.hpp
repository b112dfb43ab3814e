#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ganova/grouped_coefficients.hpp"
#include "ganova/node_set.hpp"

namespace ganova::tabular {

enum class ColumnKind { numeric, categorical };

struct ColumnSchema {
  std::string name;
  ColumnKind kind = ColumnKind::numeric;
};

struct Recipe {
  std::vector<std::string> drop_columns;
  std::string label_column;
  std::string positive_label;  ///< label value mapped to 1
  std::string missing_marker = "?";
};

/// The adult-census recipe: drop education and fnlwgt, predict income.
Recipe census_recipe();

/// Reads a recipe from JSON text with keys drop_columns, label_column,
/// positive_label, missing_marker.
Recipe recipe_from_json(const std::string& json_text);

/// Ingested table: rows with missing values removed, categoricals encoded
/// by first-appearance order, every feature min-max normalized into [0,1].
/// fitted_min/fitted_max hold the normalization statistics of that fit.
struct TabularDataset {
  std::vector<ColumnSchema> schema;
  Eigen::MatrixXd features;  ///< rows x feature count, values in [0,1]
  Eigen::VectorXd labels;    ///< binary 0/1
  Eigen::VectorXd fitted_min;
  Eigen::VectorXd fitted_max;

  Eigen::Index rows() const { return features.rows(); }
  Eigen::Index feature_count() const { return features.cols(); }
};

TabularDataset load_and_preprocess(std::istream& csv, const Recipe& recipe);
TabularDataset load_and_preprocess_file(const std::string& path, const Recipe& recipe);

/// Min-max statistics fitted on a row subset; apply rescales any rows with
/// those statistics and clamps into [0,1] (test rows may fall outside the
/// training range). Constant columns map to 0.
struct MinMaxScaler {
  Eigen::VectorXd minimum;
  Eigen::VectorXd maximum;

  static MinMaxScaler fit(const TabularDataset& data, const std::vector<Eigen::Index>& rows);
  Eigen::MatrixXd apply(const TabularDataset& data,
                        const std::vector<Eigen::Index>& rows) const;
};

/// Seeded shuffle then split; the train side gets floor(fraction * rows).
std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split(
    Eigen::Index rows, double train_fraction, std::uint64_t seed);

/// Seeded partition into k near-equal disjoint folds; element i is the
/// (train, test) index pair with fold i held out.
std::vector<std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>>> kfold(
    Eigen::Index rows, int k, std::uint64_t seed);

struct ClassificationReport {
  double accuracy = 0.0;  ///< percentage in [0, 100]
  std::vector<double> fold_accuracies;
  long true_positive = 0;
  long true_negative = 0;
  long false_positive = 0;
  long false_negative = 0;
};

/// Thresholded regression-as-classification: predict 1 iff the cosine
/// partial sum at the test node reaches 0.5; accuracy is the percentage of
/// matching labels.
ClassificationReport classify_and_score(const GroupedCoefficients& model,
                                        const NodeSet& test_nodes,
                                        const Eigen::VectorXd& labels, int threads = 0);

}  // namespace ganova::tabular
