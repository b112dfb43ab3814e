#include "ganova/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace ganova {

WeightFunction WeightFunction::sobolev(double smoothness) {
  if (smoothness < 0.0) throw std::invalid_argument("WeightFunction: smoothness must be >= 0");
  return WeightFunction(smoothness);
}

double WeightFunction::operator()(const std::vector<int>& frequency) const {
  if (smoothness_ == 0.0) return 1.0;
  double w = 1.0;
  for (int kj : frequency)
    if (kj != 0) w *= std::pow(1.0 + std::abs(kj), smoothness_);
  return w;
}

double WeightFunction::restricted(const std::vector<int>& ku) const {
  return operator()(ku);
}

Eigen::VectorXd WeightFunction::evaluate(const GroupedIndexSet& set) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(set.total_cardinality()));
  if (smoothness_ == 0.0) {
    out.setOnes();
    return out;
  }
  for (std::size_t g = 0; g < set.group_count(); ++g) {
    const std::size_t begin = set.group_offset(g);
    const Term& u = set.term_set().term(g);
    if (u.empty()) {
      out[static_cast<Eigen::Index>(begin)] = 1.0;
      continue;
    }
    const auto values = set.axis_values(g);
    std::vector<double> axis_weight(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
      axis_weight[i] = std::pow(1.0 + std::abs(values[i]), smoothness_);
    const std::size_t r = u.size();
    std::vector<std::size_t> idx(r, 0);
    std::size_t flat = begin;
    while (true) {
      double w = 1.0;
      for (std::size_t a = 0; a < r; ++a) w *= axis_weight[idx[a]];
      out[static_cast<Eigen::Index>(flat++)] = w;
      std::size_t a = 0;
      while (a < r && ++idx[a] == values.size()) {
        idx[a] = 0;
        ++a;
      }
      if (a == r) break;
    }
  }
  return out;
}

}  // namespace ganova
