#pragma once

#include <Eigen/Core>

#include "ganova/grouped_index_set.hpp"

namespace ganova {

/// A finite set of sampling nodes, stored column-wise (d x M).
/// Exponential basis: coordinates live on the torus and are reduced into
/// [0,1) on construction. Cosine basis: coordinates must lie in [0,1].
class NodeSet {
public:
  NodeSet(Eigen::MatrixXd nodes, Basis domain);

  int dimension() const { return static_cast<int>(nodes_.rows()); }
  Eigen::Index count() const { return nodes_.cols(); }
  Basis domain() const { return domain_; }
  const Eigen::MatrixXd& nodes() const { return nodes_; }

  /// Restriction X_u: the |u| x M block of coordinates j in u (a multiset,
  /// duplicates possible).
  Eigen::MatrixXd restricted(const Term& u) const;

private:
  Eigen::MatrixXd nodes_;
  Basis domain_;
};

}  // namespace ganova
