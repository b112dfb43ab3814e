#pragma once

#include <Eigen/Core>
#include <complex>

#include "ganova/grouped_index_set.hpp"

namespace ganova {

/// Optional per-node phase seeds shared across groups by the plan: for the
/// exponential basis, step[a][m] = e^{2 pi i x_(a,m)} and start[a][m] is the
/// phase at the smallest axis frequency -N/2; for the cosine basis,
/// cosine[a][m] = cos(pi x_(a,m)). One pointer per axis, arrays of length M.
struct PhaseSeeds {
  std::vector<const std::complex<double>*> step;
  std::vector<const std::complex<double>*> start;
  std::vector<const double*> cosine;
};

/// Exact per-group evaluation by plain summation, O(M * (N-1)^|u|).
/// `nodes_u` is the |u| x M restriction X_u (|u| >= 1); `ghat` holds the
/// group coefficients in odometer order. Adds into `out`.
/// Exponential basis: sum_l ghat_l e^{2 pi i <l, x>}.
/// Cosine basis: sum_l ghat_l sqrt(2)^{|u|} prod_j cos(pi l_j x_j).
void direct_group_forward_accumulate(const Eigen::MatrixXd& nodes_u,
                                     const Eigen::VectorXcd& ghat, int bandwidth,
                                     Basis basis, Eigen::VectorXcd& out,
                                     const PhaseSeeds* seeds = nullptr);

/// Adjoint of the above: ghat_l += sum_m values_m conj(phi_l(x_m)).
void direct_group_adjoint_accumulate(const Eigen::MatrixXd& nodes_u,
                                     const Eigen::VectorXcd& values, int bandwidth,
                                     Basis basis, Eigen::VectorXcd& ghat,
                                     const PhaseSeeds* seeds = nullptr);

/// Convenience wrappers returning fresh vectors.
Eigen::VectorXcd direct_group_forward(const Eigen::MatrixXd& nodes_u,
                                      const Eigen::VectorXcd& ghat, int bandwidth,
                                      Basis basis);
Eigen::VectorXcd direct_group_adjoint(const Eigen::MatrixXd& nodes_u,
                                      const Eigen::VectorXcd& values, int bandwidth,
                                      Basis basis);

}  // namespace ganova
