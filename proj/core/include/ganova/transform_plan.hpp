#pragma once

#include <Eigen/Core>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "ganova/group_kernels.hpp"
#include "ganova/grouped_coefficients.hpp"
#include "ganova/node_set.hpp"
#include "ganova/nufft.hpp"

namespace ganova {

enum class TransformMethod { direct, fast };

/// Immutable binding of nodes, grouped index set, basis, and fast-transform
/// parameters. Per-group restricted node multisets are precomputed; the
/// per-group transforms run independently on a worker pool and the forward
/// reduction sums partial results in canonical term order, so outputs are
/// bitwise reproducible for any thread count.
class TransformPlan {
public:
  TransformPlan(std::shared_ptr<const NodeSet> nodes,
                std::shared_ptr<const GroupedIndexSet> index_set,
                TransformMethod method = TransformMethod::fast, FastParams params = {},
                int threads = 0);

  const NodeSet& node_set() const { return *nodes_; }
  const GroupedIndexSet& index_set() const { return *set_; }
  const std::shared_ptr<const NodeSet>& node_set_ptr() const { return nodes_; }
  const std::shared_ptr<const GroupedIndexSet>& index_set_ptr() const { return set_; }
  TransformMethod method() const { return method_; }
  const FastParams& fast_params() const { return params_; }
  int threads() const { return threads_; }

  /// (sum_{k} fhat_k phi_k(x))_{x in X}: one low-dimensional transform per
  /// group, summed.
  Eigen::VectorXcd forward(const GroupedCoefficients& coeffs) const;

  /// F^H y, blockwise per group.
  GroupedCoefficients adjoint(const Eigen::VectorXcd& values) const;

  /// True when the group runs the fast kernel (method, crossover heuristic).
  bool group_uses_fast(std::size_t term_index) const { return fast_kernel_[term_index] != nullptr; }

private:
  std::shared_ptr<const NodeSet> nodes_;
  std::shared_ptr<const GroupedIndexSet> set_;
  TransformMethod method_;
  FastParams params_;
  int threads_;
  std::vector<Eigen::MatrixXd> restricted_;                // X_u per group
  std::vector<std::shared_ptr<NufftKernel>> fast_kernel_;  // null -> direct kernel
  std::vector<PhaseSeeds> seeds_;                          // direct-kernel phase seeds
  std::map<int, Eigen::VectorXcd> step_pool_;              // per dimension
  std::map<std::pair<int, int>, Eigen::VectorXcd> start_pool_;  // per (dimension, N)
  std::map<int, Eigen::VectorXd> cosine_pool_;             // per dimension
};

}  // namespace ganova
