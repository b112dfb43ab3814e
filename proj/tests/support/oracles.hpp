#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numbers>
#include <random>

#include "ganova/grouped_index_set.hpp"
#include "ganova/node_set.hpp"

namespace ganova::testing {

// Dense basis matrix assembled straight from the basis definition, one
// entry at a time; the reference for every transform test.
inline Eigen::MatrixXcd dense_basis_matrix(const NodeSet& nodes, const GroupedIndexSet& set) {
  const Eigen::Index rows = nodes.count();
  const auto cols = static_cast<Eigen::Index>(set.total_cardinality());
  Eigen::MatrixXcd F(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    const auto k = set.frequency_at(static_cast<std::size_t>(c));
    for (Eigen::Index m = 0; m < rows; ++m) {
      if (set.basis() == Basis::exponential) {
        double phase = 0.0;
        for (std::size_t j = 0; j < k.size(); ++j)
          phase += k[j] * nodes.nodes()(static_cast<Eigen::Index>(j), m);
        F(m, c) = std::polar(1.0, 2.0 * std::numbers::pi * phase);
      } else {
        double value = 1.0;
        for (std::size_t j = 0; j < k.size(); ++j)
          if (k[j] != 0)
            value *= std::numbers::sqrt2 *
                     std::cos(std::numbers::pi * k[j] *
                              nodes.nodes()(static_cast<Eigen::Index>(j), m));
        F(m, c) = value;
      }
    }
  }
  return F;
}

inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline Eigen::MatrixXd random_nodes(int dimension, Eigen::Index count, std::mt19937_64& gen) {
  Eigen::MatrixXd nodes(dimension, count);
  for (Eigen::Index i = 0; i < nodes.size(); ++i) nodes.data()[i] = uniform01(gen);
  return nodes;
}

inline Eigen::VectorXcd random_complex(Eigen::Index count, std::mt19937_64& gen) {
  Eigen::VectorXcd v(count);
  for (Eigen::Index i = 0; i < count; ++i)
    v[i] = std::complex<double>(uniform01(gen) - 0.5, uniform01(gen) - 0.5);
  return v;
}

inline Eigen::VectorXcd random_real_vector(Eigen::Index count, std::mt19937_64& gen) {
  Eigen::VectorXcd v(count);
  for (Eigen::Index i = 0; i < count; ++i)
    v[i] = std::complex<double>(uniform01(gen) - 0.5, 0.0);
  return v;
}

}  // namespace ganova::testing
