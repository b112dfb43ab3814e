#include "ganova/tabular.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "ganova/transform_plan.hpp"

namespace ganova::tabular {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

bool parse_number(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

void shuffle_indices(std::vector<Eigen::Index>& indices, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (std::size_t i = indices.size(); i > 1; --i)
    std::swap(indices[i - 1], indices[gen() % i]);
}

}  // namespace

Recipe census_recipe() {
  Recipe recipe;
  recipe.drop_columns = {"education", "fnlwgt"};
  recipe.label_column = "income";
  recipe.positive_label = ">50K";
  recipe.missing_marker = "?";
  return recipe;
}

Recipe recipe_from_json(const std::string& json_text) {
  const auto parsed = nlohmann::json::parse(json_text);
  Recipe recipe;
  if (parsed.contains("drop_columns"))
    recipe.drop_columns = parsed.at("drop_columns").get<std::vector<std::string>>();
  recipe.label_column = parsed.at("label_column").get<std::string>();
  recipe.positive_label = parsed.at("positive_label").get<std::string>();
  if (parsed.contains("missing_marker"))
    recipe.missing_marker = parsed.at("missing_marker").get<std::string>();
  return recipe;
}

TabularDataset load_and_preprocess(std::istream& csv, const Recipe& recipe) {
  std::string line;
  if (!std::getline(csv, line)) throw std::runtime_error("tabular: empty CSV");
  const auto header = split_line(line);

  std::vector<std::size_t> feature_columns;
  std::size_t label_column = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == recipe.label_column) {
      label_column = c;
      continue;
    }
    if (std::find(recipe.drop_columns.begin(), recipe.drop_columns.end(), header[c]) ==
        recipe.drop_columns.end())
      feature_columns.push_back(c);
  }
  if (label_column == header.size())
    throw std::runtime_error("tabular: label column '" + recipe.label_column + "' not found");
  for (const auto& name : recipe.drop_columns)
    if (std::find(header.begin(), header.end(), name) == header.end())
      throw std::runtime_error("tabular: unknown drop column '" + name + "'");

  std::vector<std::vector<std::string>> rows;
  while (std::getline(csv, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != header.size())
      throw std::runtime_error("tabular: row with wrong field count");
    bool missing = false;
    for (std::size_t c : feature_columns)
      if (fields[c] == recipe.missing_marker) missing = true;
    if (fields[label_column] == recipe.missing_marker) missing = true;
    if (!missing) rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw std::runtime_error("tabular: no usable rows");

  TabularDataset data;
  data.schema.resize(feature_columns.size());
  data.features.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(feature_columns.size()));
  data.labels.resize(static_cast<Eigen::Index>(rows.size()));

  for (std::size_t f = 0; f < feature_columns.size(); ++f) {
    const std::size_t c = feature_columns[f];
    data.schema[f].name = header[c];
    bool numeric = true;
    double parsed = 0.0;
    for (const auto& row : rows)
      if (!parse_number(row[c], parsed)) {
        numeric = false;
        break;
      }
    data.schema[f].kind = numeric ? ColumnKind::numeric : ColumnKind::categorical;
    if (numeric) {
      for (std::size_t r = 0; r < rows.size(); ++r) {
        parse_number(rows[r][c], parsed);
        data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) = parsed;
      }
    } else {
      std::map<std::string, int> codes;  // first-appearance integer codes
      int next = 0;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        auto [it, inserted] = codes.try_emplace(rows[r][c], next);
        if (inserted) ++next;
        data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) =
            it->second;
      }
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r)
    data.labels[static_cast<Eigen::Index>(r)] =
        rows[r][label_column] == recipe.positive_label ? 1.0 : 0.0;

  // normalize the full table in place and remember the fit
  std::vector<Eigen::Index> all(static_cast<std::size_t>(data.rows()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Eigen::Index>(i);
  const MinMaxScaler scaler = MinMaxScaler::fit(data, all);
  data.features = scaler.apply(data, all);
  data.fitted_min = scaler.minimum;
  data.fitted_max = scaler.maximum;
  return data;
}

TabularDataset load_and_preprocess_file(const std::string& path, const Recipe& recipe) {
  std::ifstream stream(path);
  if (!stream) throw std::runtime_error("tabular: cannot open '" + path + "'");
  return load_and_preprocess(stream, recipe);
}

MinMaxScaler MinMaxScaler::fit(const TabularDataset& data,
                               const std::vector<Eigen::Index>& rows) {
  if (rows.empty()) throw std::invalid_argument("MinMaxScaler: empty row set");
  MinMaxScaler scaler;
  scaler.minimum.resize(data.feature_count());
  scaler.maximum.resize(data.feature_count());
  for (Eigen::Index c = 0; c < data.feature_count(); ++c) {
    double lo = data.features(rows.front(), c);
    double hi = lo;
    for (Eigen::Index r : rows) {
      lo = std::min(lo, data.features(r, c));
      hi = std::max(hi, data.features(r, c));
    }
    scaler.minimum[c] = lo;
    scaler.maximum[c] = hi;
  }
  return scaler;
}

Eigen::MatrixXd MinMaxScaler::apply(const TabularDataset& data,
                                    const std::vector<Eigen::Index>& rows) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), data.feature_count());
  for (Eigen::Index c = 0; c < data.feature_count(); ++c) {
    const double range = maximum[c] - minimum[c];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double v = range > 0.0 ? (data.features(rows[i], c) - minimum[c]) / range : 0.0;
      out(static_cast<Eigen::Index>(i), c) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>> split(
    Eigen::Index rows, double train_fraction, std::uint64_t seed) {
  if (train_fraction <= 0.0 || train_fraction >= 1.0)
    throw std::invalid_argument("split: fraction must lie in (0,1)");
  std::vector<Eigen::Index> indices(static_cast<std::size_t>(rows));
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<Eigen::Index>(i);
  shuffle_indices(indices, seed);
  const auto train_size =
      static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(rows)));
  std::vector<Eigen::Index> train(indices.begin(),
                                  indices.begin() + static_cast<std::ptrdiff_t>(train_size));
  std::vector<Eigen::Index> test(indices.begin() + static_cast<std::ptrdiff_t>(train_size),
                                 indices.end());
  return {std::move(train), std::move(test)};
}

std::vector<std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>>> kfold(
    Eigen::Index rows, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("kfold: k must be >= 2");
  if (static_cast<Eigen::Index>(k) > rows) throw std::invalid_argument("kfold: k > rows");
  std::vector<Eigen::Index> indices(static_cast<std::size_t>(rows));
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = static_cast<Eigen::Index>(i);
  shuffle_indices(indices, seed);
  std::vector<std::pair<std::vector<Eigen::Index>, std::vector<Eigen::Index>>> folds;
  const std::size_t base = indices.size() / static_cast<std::size_t>(k);
  const std::size_t remainder = indices.size() % static_cast<std::size_t>(k);
  std::size_t begin = 0;
  for (int fold = 0; fold < k; ++fold) {
    const std::size_t size = base + (static_cast<std::size_t>(fold) < remainder ? 1 : 0);
    std::vector<Eigen::Index> test(indices.begin() + static_cast<std::ptrdiff_t>(begin),
                                   indices.begin() + static_cast<std::ptrdiff_t>(begin + size));
    std::vector<Eigen::Index> train;
    train.reserve(indices.size() - size);
    train.insert(train.end(), indices.begin(),
                 indices.begin() + static_cast<std::ptrdiff_t>(begin));
    train.insert(train.end(), indices.begin() + static_cast<std::ptrdiff_t>(begin + size),
                 indices.end());
    folds.emplace_back(std::move(train), std::move(test));
    begin += size;
  }
  return folds;
}

ClassificationReport classify_and_score(const GroupedCoefficients& model,
                                        const NodeSet& test_nodes,
                                        const Eigen::VectorXd& labels, int threads) {
  if (labels.size() != test_nodes.count())
    throw std::invalid_argument("classify_and_score: label count != node count");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels[i] != 0.0 && labels[i] != 1.0)
      throw std::invalid_argument("classify_and_score: labels must be binary 0/1");
  TransformPlan plan(std::make_shared<NodeSet>(test_nodes),
                     model.index_set_ptr(), TransformMethod::fast, FastParams{}, threads);
  const Eigen::VectorXcd predicted = plan.forward(model);
  ClassificationReport report;
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    const bool positive = predicted[i].real() >= 0.5;
    const bool truth = labels[i] == 1.0;
    if (positive && truth) ++report.true_positive;
    else if (positive && !truth) ++report.false_positive;
    else if (!positive && truth) ++report.false_negative;
    else ++report.true_negative;
  }
  const double correct = static_cast<double>(report.true_positive + report.true_negative);
  report.accuracy = 100.0 * correct / static_cast<double>(labels.size());
  return report;
}

}  // namespace ganova::tabular
