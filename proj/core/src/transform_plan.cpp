#include "ganova/transform_plan.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ganova/parallel.hpp"

namespace ganova {

namespace {

// Per-node cost comparison in complex-MAC units: the exact kernel costs the
// group size, the fast kernel a window gather plus amortized FFT work.
bool prefer_direct_kernel(std::size_t group_size, int order, int bandwidth, Basis basis,
                          const FastParams& params, Eigen::Index node_count) {
  if (group_size > params.direct_group_limit) return false;
  const double span = 2.0 * params.cutoff + 1.0;
  double fast = 0.5 * std::pow(span, order) + 2.0 * order * span;
  const double embedded = basis == Basis::exponential ? bandwidth : 2.0 * bandwidth;
  const double cube = std::pow(params.sigma * embedded, order);
  const double scatter = static_cast<double>(group_size) *
                         (basis == Basis::cosine ? std::pow(2.0, order) : 1.0);
  fast += (0.625 * cube * std::log2(std::max(4.0, cube)) + scatter) /
          static_cast<double>(node_count);
  return static_cast<double>(group_size) <= fast;
}

}  // namespace

TransformPlan::TransformPlan(std::shared_ptr<const NodeSet> nodes,
                             std::shared_ptr<const GroupedIndexSet> index_set,
                             TransformMethod method, FastParams params, int threads)
    : nodes_(std::move(nodes)),
      set_(std::move(index_set)),
      method_(method),
      params_(params),
      threads_(threads) {
  if (!nodes_ || !set_) throw std::invalid_argument("TransformPlan: null nodes or index set");
  if (nodes_->dimension() != set_->term_set().dimension())
    throw std::invalid_argument("TransformPlan: node dimension != index set dimension");
  if (nodes_->domain() != set_->basis())
    throw std::invalid_argument("TransformPlan: node domain does not match the basis");

  const std::size_t groups = set_->group_count();
  const Eigen::Index node_count = nodes_->count();
  restricted_.resize(groups);
  fast_kernel_.resize(groups);
  seeds_.resize(groups);
  std::map<std::pair<int, int>, std::shared_ptr<NufftKernel>> kernel_cache;  // (|u|, N)

  const auto exponential_step = [&](int dim) -> const std::complex<double>* {
    auto it = step_pool_.find(dim);
    if (it == step_pool_.end()) {
      Eigen::VectorXcd phases(node_count);
      for (Eigen::Index m = 0; m < node_count; ++m)
        phases[m] = std::polar(1.0, 2.0 * std::numbers::pi * nodes_->nodes()(dim - 1, m));
      it = step_pool_.emplace(dim, std::move(phases)).first;
    }
    return it->second.data();
  };
  const auto exponential_start = [&](int dim, int bandwidth) -> const std::complex<double>* {
    auto it = start_pool_.find({dim, bandwidth});
    if (it == start_pool_.end()) {
      Eigen::VectorXcd phases(node_count);
      for (Eigen::Index m = 0; m < node_count; ++m)
        phases[m] = std::polar(1.0, -std::numbers::pi * bandwidth *
                                        nodes_->nodes()(dim - 1, m));
      it = start_pool_.emplace(std::make_pair(dim, bandwidth), std::move(phases)).first;
    }
    return it->second.data();
  };
  const auto cosine_base = [&](int dim) -> const double* {
    auto it = cosine_pool_.find(dim);
    if (it == cosine_pool_.end()) {
      Eigen::VectorXd base(node_count);
      for (Eigen::Index m = 0; m < node_count; ++m)
        base[m] = std::cos(std::numbers::pi * nodes_->nodes()(dim - 1, m));
      it = cosine_pool_.emplace(dim, std::move(base)).first;
    }
    return it->second.data();
  };

  for (std::size_t g = 0; g < groups; ++g) {
    const Term& u = set_->term_set().term(g);
    if (u.empty()) continue;
    restricted_[g] = nodes_->restricted(u);
    const int bandwidth = set_->bandwidth(g);
    const bool direct =
        method_ == TransformMethod::direct ||
        prefer_direct_kernel(set_->group_size(g), static_cast<int>(u.size()), bandwidth,
                             set_->basis(), params_, node_count);
    if (!direct) {
      const auto key = std::make_pair(static_cast<int>(u.size()), bandwidth);
      auto it = kernel_cache.find(key);
      if (it == kernel_cache.end())
        it = kernel_cache
                 .emplace(key, std::make_shared<NufftKernel>(key.first, key.second,
                                                             set_->basis(), params_.sigma,
                                                             params_.cutoff))
                 .first;
      fast_kernel_[g] = it->second;
      continue;
    }
    PhaseSeeds& seeds = seeds_[g];
    if (set_->basis() == Basis::exponential) {
      for (int dim : u) {
        seeds.step.push_back(exponential_step(dim));
        seeds.start.push_back(exponential_start(dim, bandwidth));
      }
    } else {
      for (int dim : u) seeds.cosine.push_back(cosine_base(dim));
    }
  }
}

Eigen::VectorXcd TransformPlan::forward(const GroupedCoefficients& coeffs) const {
  if (!(coeffs.index_set_ptr() == set_ || coeffs.index_set() == *set_))
    throw std::invalid_argument("TransformPlan::forward: coefficient index set mismatch");
  const Eigen::Index node_count = nodes_->count();
  const std::size_t groups = set_->group_count();
  std::vector<Eigen::VectorXcd> partial(groups);
  parallel_for(groups, threads_, [&](std::size_t g) {
    partial[g] = Eigen::VectorXcd::Zero(node_count);
    const Term& u = set_->term_set().term(g);
    if (u.empty()) {
      partial[g].setConstant(coeffs[set_->group_offset(g)]);
      return;
    }
    const Eigen::VectorXcd ghat = coeffs.group(g);
    if (fast_kernel_[g])
      fast_kernel_[g]->forward_accumulate(restricted_[g], ghat, partial[g]);
    else
      direct_group_forward_accumulate(restricted_[g], ghat, set_->bandwidth(g),
                                      set_->basis(), partial[g], &seeds_[g]);
  });
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(node_count);
  for (std::size_t g = 0; g < groups; ++g) out += partial[g];  // fixed reduction order
  return out;
}

GroupedCoefficients TransformPlan::adjoint(const Eigen::VectorXcd& values) const {
  if (values.size() != nodes_->count())
    throw std::invalid_argument("TransformPlan::adjoint: value length != node count");
  GroupedCoefficients out(set_);
  parallel_for(set_->group_count(), threads_, [&](std::size_t g) {
    const Term& u = set_->term_set().term(g);
    if (u.empty()) {
      out[set_->group_offset(g)] = values.sum();
      return;
    }
    Eigen::VectorXcd block =
        Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(set_->group_size(g)));
    if (fast_kernel_[g])
      fast_kernel_[g]->adjoint_accumulate(restricted_[g], values, block);
    else
      direct_group_adjoint_accumulate(restricted_[g], values, set_->bandwidth(g),
                                      set_->basis(), block, &seeds_[g]);
    out.group(g) = block;
  });
  return out;
}

}  // namespace ganova
