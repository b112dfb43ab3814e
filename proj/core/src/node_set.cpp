#include "ganova/node_set.hpp"

#include <cmath>
#include <stdexcept>

namespace ganova {

NodeSet::NodeSet(Eigen::MatrixXd nodes, Basis domain)
    : nodes_(std::move(nodes)), domain_(domain) {
  if (nodes_.cols() < 1) throw std::invalid_argument("NodeSet: need at least one node");
  if (nodes_.rows() < 1) throw std::invalid_argument("NodeSet: dimension must be positive");
  if (domain_ == Basis::exponential) {
    for (Eigen::Index j = 0; j < nodes_.size(); ++j) {
      double& x = nodes_.data()[j];
      x -= std::floor(x);
      if (x >= 1.0) x = 0.0;  // guard against floor rounding at the seam
    }
  } else {
    if ((nodes_.array() < 0.0).any() || (nodes_.array() > 1.0).any())
      throw std::invalid_argument("NodeSet: cosine-basis nodes must lie in [0,1]");
  }
}

Eigen::MatrixXd NodeSet::restricted(const Term& u) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(u.size()), nodes_.cols());
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a] < 1 || u[a] > dimension())
      throw std::invalid_argument("NodeSet::restricted: coordinate outside {1,...,d}");
    out.row(static_cast<Eigen::Index>(a)) = nodes_.row(u[a] - 1);
  }
  return out;
}

}  // namespace ganova
