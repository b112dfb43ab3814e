#pragma once

#include <Eigen/Core>
#include <complex>
#include <memory>
#include <vector>

#include "ganova/grouped_index_set.hpp"

namespace ganova {

/// Parameters of the fast (oversampled-FFT + window) group transform.
struct FastParams {
  double sigma = 2.0;      ///< oversampling factor, >= 1.25
  int cutoff = 6;          ///< window cutoff m, >= 2; (2m+1)^|u| gather points
  /// Groups with (N-1)^|u| at or below this many frequencies run the exact
  /// kernel instead (cost crossover); set to 0 to force the fast kernel.
  std::size_t direct_group_limit = 4096;
};

/// Approximate |u|-dimensional group transform: zero-padded coefficients on
/// the full cube, Gaussian-window deconvolution, oversampled FFT, and
/// window gathering at each node. One instance per (|u|, bandwidth, basis)
/// shape; apply calls are const and safe to run concurrently from several
/// threads. Cosine groups are computed through an exponential kernel of
/// twice the bandwidth on halved nodes with symmetrized coefficients.
class NufftKernel {
public:
  NufftKernel(int order, int bandwidth, Basis basis, double sigma, int cutoff);
  ~NufftKernel();
  NufftKernel(const NufftKernel&) = delete;
  NufftKernel& operator=(const NufftKernel&) = delete;

  int order() const { return order_; }
  int bandwidth() const { return bandwidth_; }
  Basis basis() const { return basis_; }
  int grid_size() const { return grid_; }

  /// out[m] += sum over the group cube of ghat_l phi_l(x_m).
  void forward_accumulate(const Eigen::MatrixXd& nodes_u, const Eigen::VectorXcd& ghat,
                          Eigen::VectorXcd& out) const;
  /// ghat_l += sum_m values_m conj(phi_l(x_m)); exact adjoint of forward.
  void adjoint_accumulate(const Eigen::MatrixXd& nodes_u, const Eigen::VectorXcd& values,
                          Eigen::VectorXcd& ghat) const;

private:
  struct FftPlans;

  void scatter_coefficients(const Eigen::VectorXcd& ghat, std::complex<double>* cube) const;
  void gather_coefficients(const std::complex<double>* cube, Eigen::VectorXcd& ghat) const;
  void gather_nodes(const Eigen::MatrixXd& nodes_u, const std::complex<double>* cube,
                    Eigen::VectorXcd& out) const;
  void scatter_nodes(const Eigen::MatrixXd& nodes_u, const Eigen::VectorXcd& values,
                     std::complex<double>* cube) const;

  int order_;
  int bandwidth_;       // group bandwidth N
  Basis basis_;
  int embedded_band_;   // N (exponential) or 2N (cosine)
  int grid_;            // oversampled size n per axis, even
  int cutoff_;
  double shape_;        // Kaiser-Bessel shape parameter b = pi (2 - 1/sigma)
  double node_scale_;   // 1 (exponential) or 1/2 (cosine)
  std::size_t cube_size_;
  std::vector<int> value_bins_;       // axis value -> FFT bin
  std::vector<double> value_deconv_;  // axis value -> deconvolution factor
  std::vector<double> window_table_;  // window on a fine grid, cubic-interpolated
  double table_step_inv_ = 0.0;
  std::unique_ptr<FftPlans> plans_;

  double window(double z) const;  // interpolated Kaiser-Bessel value
};

/// One-shot wrappers around a freshly built kernel (the plan caches kernels
/// for repeated use).
Eigen::VectorXcd fast_group_forward(const Eigen::MatrixXd& nodes_u,
                                    const Eigen::VectorXcd& ghat, int bandwidth,
                                    Basis basis, double sigma, int cutoff);
Eigen::VectorXcd fast_group_adjoint(const Eigen::MatrixXd& nodes_u,
                                    const Eigen::VectorXcd& values, int bandwidth,
                                    Basis basis, double sigma, int cutoff);

}  // namespace ganova
