#pragma once

#include <Eigen/Core>
#include <complex>
#include <memory>

#include "ganova/grouped_index_set.hpp"

namespace ganova {

/// A coefficient vector partitioned by ANOVA term, in the canonical flat
/// layout of its GroupedIndexSet. Coefficients are complex; for the cosine
/// basis the imaginary parts are expected (but not forced) to be zero.
class GroupedCoefficients {
public:
  explicit GroupedCoefficients(std::shared_ptr<const GroupedIndexSet> index_set);
  GroupedCoefficients(std::shared_ptr<const GroupedIndexSet> index_set,
                      Eigen::VectorXcd values);

  const GroupedIndexSet& index_set() const { return *set_; }
  const std::shared_ptr<const GroupedIndexSet>& index_set_ptr() const { return set_; }

  Eigen::Index size() const { return values_.size(); }
  const Eigen::VectorXcd& values() const { return values_; }
  Eigen::VectorXcd& values() { return values_; }

  std::complex<double> operator[](std::size_t flat) const {
    return values_[static_cast<Eigen::Index>(flat)];
  }
  std::complex<double>& operator[](std::size_t flat) {
    return values_[static_cast<Eigen::Index>(flat)];
  }

  /// View of the coefficients of one term's group.
  Eigen::VectorBlock<Eigen::VectorXcd> group(std::size_t term_index) {
    return values_.segment(static_cast<Eigen::Index>(set_->group_offset(term_index)),
                           static_cast<Eigen::Index>(set_->group_size(term_index)));
  }
  Eigen::VectorBlock<const Eigen::VectorXcd> group(std::size_t term_index) const {
    return values_.segment(static_cast<Eigen::Index>(set_->group_offset(term_index)),
                           static_cast<Eigen::Index>(set_->group_size(term_index)));
  }

  /// True when both views refer to the same index set (by identity or value).
  bool compatible_with(const GroupedCoefficients& other) const {
    return set_ == other.set_ || *set_ == *other.set_;
  }

private:
  std::shared_ptr<const GroupedIndexSet> set_;
  Eigen::VectorXcd values_;
};

}  // namespace ganova
