#pragma once

#include <Eigen/Core>
#include <vector>

#include "ganova/grouped_index_set.hpp"

namespace ganova {

/// Frequency weight rule omega(k) >= 1 with omega(0) = 1. Built-in rules:
/// constant one, and the Sobolev product weight
/// omega_s(k) = prod_{j in supp k} (1 + |k_j|)^s with smoothness s >= 0.
class WeightFunction {
public:
  static WeightFunction ones() { return WeightFunction(0.0); }
  static WeightFunction sobolev(double smoothness);

  double smoothness() const { return smoothness_; }

  double operator()(const std::vector<int>& frequency) const;

  /// Weight of one group frequency from its |u|-dimensional restriction.
  double restricted(const std::vector<int>& ku) const;

  /// Flat weight vector over a whole index set (canonical layout).
  Eigen::VectorXd evaluate(const GroupedIndexSet& set) const;

private:
  explicit WeightFunction(double smoothness) : smoothness_(smoothness) {}
  double smoothness_;
};

}  // namespace ganova
