#include "ganova/grouped_coefficients.hpp"

#include <stdexcept>

namespace ganova {

GroupedCoefficients::GroupedCoefficients(std::shared_ptr<const GroupedIndexSet> index_set)
    : set_(std::move(index_set)) {
  if (!set_) throw std::invalid_argument("GroupedCoefficients: null index set");
  values_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(set_->total_cardinality()));
}

GroupedCoefficients::GroupedCoefficients(std::shared_ptr<const GroupedIndexSet> index_set,
                                         Eigen::VectorXcd values)
    : set_(std::move(index_set)), values_(std::move(values)) {
  if (!set_) throw std::invalid_argument("GroupedCoefficients: null index set");
  if (values_.size() != static_cast<Eigen::Index>(set_->total_cardinality()))
    throw std::invalid_argument("GroupedCoefficients: value count != total cardinality");
}

}  // namespace ganova
