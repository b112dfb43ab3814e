#include "ganova/nufft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace ganova {

namespace {

using cplx = std::complex<double>;

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex mutex;
  return mutex;
}

// Kaiser-Bessel window at z grid steps from the center, cutoff m and shape
// b: sinh(b sqrt(m^2-z^2))/(pi sqrt(m^2-z^2)) inside the main lobe, with
// the oscillatory sin continuation outside.
double kaiser_bessel(double z, int m, double b) {
  const double arg = static_cast<double>(m) * m - z * z;
  if (arg > 0.0) {
    const double root = std::sqrt(arg);
    return std::sinh(b * root) / (std::numbers::pi * root);
  }
  if (arg < 0.0) {
    const double root = std::sqrt(-arg);
    return std::sin(b * root) / (std::numbers::pi * root);
  }
  return b / std::numbers::pi;
}

}  // namespace

struct NufftKernel::FftPlans {
  fftw_plan synthesis = nullptr;  // e^{+2 pi i kl/n}, frequency -> grid
  fftw_plan analysis = nullptr;   // e^{-2 pi i kl/n}, grid -> frequency
  ~FftPlans() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (synthesis) fftw_destroy_plan(synthesis);
    if (analysis) fftw_destroy_plan(analysis);
  }
};

NufftKernel::NufftKernel(int order, int bandwidth, Basis basis, double sigma, int cutoff)
    : order_(order), bandwidth_(bandwidth), basis_(basis), cutoff_(cutoff) {
  if (order_ < 1) throw std::invalid_argument("NufftKernel: |u| >= 1 required");
  if (bandwidth_ < 2) throw std::invalid_argument("NufftKernel: bandwidth must be >= 2");
  if (basis_ == Basis::exponential && bandwidth_ % 2 != 0)
    throw std::invalid_argument("NufftKernel: exponential basis requires even bandwidth");
  if (sigma < 1.25) throw std::invalid_argument("NufftKernel: oversampling must be >= 1.25");
  if (cutoff_ < 2) throw std::invalid_argument("NufftKernel: cutoff must be >= 2");

  embedded_band_ = basis_ == Basis::exponential ? bandwidth_ : 2 * bandwidth_;
  node_scale_ = basis_ == Basis::exponential ? 1.0 : 0.5;
  grid_ = 2 * static_cast<int>(std::ceil(sigma * embedded_band_ / 2.0));

  cube_size_ = 1;
  for (int a = 0; a < order_; ++a) {
    if (cube_size_ > (std::size_t(1) << 40) / static_cast<std::size_t>(grid_))
      throw std::overflow_error("NufftKernel: oversampled grid too large");
    cube_size_ *= static_cast<std::size_t>(grid_);
  }

  const double sigma_eff = static_cast<double>(grid_) / embedded_band_;
  shape_ = std::numbers::pi * (2.0 - 1.0 / sigma_eff);

  const auto values = axis_frequency_values(bandwidth_, basis_);
  value_bins_.reserve(values.size());
  value_deconv_.reserve(values.size());
  for (int v : values) {
    value_bins_.push_back(((v % grid_) + grid_) % grid_);
    const double w = 2.0 * std::numbers::pi * v / grid_;
    value_deconv_.push_back(
        1.0 / std::cyl_bessel_i(0.0, cutoff_ * std::sqrt(shape_ * shape_ - w * w)));
  }

  // window values tabulated for cubic interpolation; entry i holds the
  // window at (i - 1) * step so the 4-tap stencil never underruns
  constexpr int kStepsPerUnit = 256;
  table_step_inv_ = kStepsPerUnit;
  const int entries = (cutoff_ + 1) * kStepsPerUnit + 4;
  window_table_.resize(static_cast<std::size_t>(entries));
  for (int i = 0; i < entries; ++i)
    window_table_[static_cast<std::size_t>(i)] =
        kaiser_bessel(static_cast<double>(i - 1) / kStepsPerUnit, cutoff_, shape_);

  plans_ = std::make_unique<FftPlans>();
  std::vector<cplx> scratch(cube_size_);
  std::vector<int> dims(static_cast<std::size_t>(order_), grid_);
  auto* data = reinterpret_cast<fftw_complex*>(scratch.data());
  std::lock_guard<std::mutex> lock(planner_mutex());
  plans_->synthesis = fftw_plan_dft(order_, dims.data(), data, data, FFTW_BACKWARD,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->analysis = fftw_plan_dft(order_, dims.data(), data, data, FFTW_FORWARD,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans_->synthesis || !plans_->analysis)
    throw std::runtime_error("NufftKernel: FFTW planning failed");
}

NufftKernel::~NufftKernel() = default;

double NufftKernel::window(double z) const {
  const double u = std::abs(z) * table_step_inv_;  // the window is even
  const auto i = static_cast<std::size_t>(u);
  const double f = u - static_cast<double>(i);
  const double* t = window_table_.data() + i;  // t[0] sits one step left of u
  // 4-point Lagrange interpolation on the uniform table
  const double w0 = -f * (f - 1.0) * (f - 2.0) * (1.0 / 6.0);
  const double w1 = (f + 1.0) * (f - 1.0) * (f - 2.0) * 0.5;
  const double w2 = -(f + 1.0) * f * (f - 2.0) * 0.5;
  const double w3 = (f + 1.0) * f * (f - 1.0) * (1.0 / 6.0);
  return w0 * t[0] + w1 * t[1] + w2 * t[2] + w3 * t[3];
}

void NufftKernel::scatter_coefficients(const Eigen::VectorXcd& ghat, cplx* cube) const {
  const int nv = bandwidth_ - 1;
  const int r = order_;
  std::vector<int> idx(static_cast<std::size_t>(r), 0);
  if (basis_ == Basis::exponential) {
    Eigen::Index g = 0;
    while (true) {
      std::size_t bin = 0;
      double dec = 1.0;
      for (int a = r - 1; a >= 0; --a) {
        bin = bin * static_cast<std::size_t>(grid_) +
              static_cast<std::size_t>(value_bins_[static_cast<std::size_t>(idx[a])]);
        dec *= value_deconv_[static_cast<std::size_t>(idx[a])];
      }
      cube[bin] += dec * ghat[g++];
      int a = 0;
      while (a < r && ++idx[a] == nv) {
        idx[a] = 0;
        ++a;
      }
      if (a == r) break;
    }
  } else {
    // half-period cosine: each group value l fans out to the bins of +l and
    // -l with weight 1/sqrt(2) per axis
    const double axis_scale = 1.0 / std::numbers::sqrt2;
    Eigen::Index g = 0;
    while (true) {
      double dec = 1.0;
      for (int a = 0; a < r; ++a) dec *= axis_scale * value_deconv_[static_cast<std::size_t>(idx[a])];
      const cplx contribution = dec * ghat[g++];
      // iterate the 2^r sign choices
      for (unsigned signs = 0; signs < (1u << r); ++signs) {
        std::size_t bin = 0;
        for (int a = r - 1; a >= 0; --a) {
          const int base = value_bins_[static_cast<std::size_t>(idx[a])];
          const int wrapped = (signs >> a) & 1u ? (grid_ - base) % grid_ : base;
          bin = bin * static_cast<std::size_t>(grid_) + static_cast<std::size_t>(wrapped);
        }
        cube[bin] += contribution;
      }
      int a = 0;
      while (a < r && ++idx[a] == nv) {
        idx[a] = 0;
        ++a;
      }
      if (a == r) break;
    }
  }
}

void NufftKernel::gather_coefficients(const cplx* cube, Eigen::VectorXcd& ghat) const {
  const int nv = bandwidth_ - 1;
  const int r = order_;
  std::vector<int> idx(static_cast<std::size_t>(r), 0);
  if (basis_ == Basis::exponential) {
    Eigen::Index g = 0;
    while (true) {
      std::size_t bin = 0;
      double dec = 1.0;
      for (int a = r - 1; a >= 0; --a) {
        bin = bin * static_cast<std::size_t>(grid_) +
              static_cast<std::size_t>(value_bins_[static_cast<std::size_t>(idx[a])]);
        dec *= value_deconv_[static_cast<std::size_t>(idx[a])];
      }
      ghat[g++] += dec * cube[bin];
      int a = 0;
      while (a < r && ++idx[a] == nv) {
        idx[a] = 0;
        ++a;
      }
      if (a == r) break;
    }
  } else {
    const double axis_scale = 1.0 / std::numbers::sqrt2;
    Eigen::Index g = 0;
    while (true) {
      double dec = 1.0;
      for (int a = 0; a < r; ++a) dec *= axis_scale * value_deconv_[static_cast<std::size_t>(idx[a])];
      cplx sum(0.0, 0.0);
      for (unsigned signs = 0; signs < (1u << r); ++signs) {
        std::size_t bin = 0;
        for (int a = r - 1; a >= 0; --a) {
          const int base = value_bins_[static_cast<std::size_t>(idx[a])];
          const int wrapped = (signs >> a) & 1u ? (grid_ - base) % grid_ : base;
          bin = bin * static_cast<std::size_t>(grid_) + static_cast<std::size_t>(wrapped);
        }
        sum += cube[bin];
      }
      ghat[g++] += dec * sum;
      int a = 0;
      while (a < r && ++idx[a] == nv) {
        idx[a] = 0;
        ++a;
      }
      if (a == r) break;
    }
  }
}

void NufftKernel::gather_nodes(const Eigen::MatrixXd& nodes_u, const cplx* cube,
                               Eigen::VectorXcd& out) const {
  const int r = order_;
  const int m = cutoff_;
  const int span = 2 * m + 1;
  const Eigen::Index node_count = nodes_u.cols();
  std::vector<double> weights(static_cast<std::size_t>(r) * span);
  std::vector<int> bins(static_cast<std::size_t>(r) * span);
  for (Eigen::Index j = 0; j < node_count; ++j) {
    for (int a = 0; a < r; ++a) {
      const double xi = node_scale_ * nodes_u(a, j) * grid_;
      const int l0 = static_cast<int>(std::lround(xi));
      const double t = xi - l0;
      double* w = weights.data() + static_cast<std::size_t>(a) * span;
      int* bn = bins.data() + static_cast<std::size_t>(a) * span;
      for (int o = -m; o <= m; ++o) {
        w[o + m] = window(t - o);
        bn[o + m] = ((l0 + o) % grid_ + grid_) % grid_;
      }
    }
    cplx acc(0.0, 0.0);
    const double* w0 = weights.data();
    const int* b0 = bins.data();
    if (r == 1) {
      for (int i0 = 0; i0 < span; ++i0) acc += w0[i0] * cube[b0[i0]];
    } else if (r == 2) {
      const double* w1 = w0 + span;
      const int* b1 = b0 + span;
      for (int i1 = 0; i1 < span; ++i1) {
        const std::size_t row = static_cast<std::size_t>(b1[i1]) * grid_;
        cplx s(0.0, 0.0);
        for (int i0 = 0; i0 < span; ++i0) s += w0[i0] * cube[row + b0[i0]];
        acc += w1[i1] * s;
      }
    } else {
      const double* w1 = w0 + span;
      const double* w2 = w1 + span;
      const int* b1 = b0 + span;
      const int* b2 = b1 + span;
      for (int i2 = 0; i2 < span; ++i2)
        for (int i1 = 0; i1 < span; ++i1) {
          const std::size_t row =
              (static_cast<std::size_t>(b2[i2]) * grid_ + b1[i1]) * grid_;
          cplx s(0.0, 0.0);
          for (int i0 = 0; i0 < span; ++i0) s += w0[i0] * cube[row + b0[i0]];
          acc += (w2[i2] * w1[i1]) * s;
        }
    }
    out[j] += acc;
  }
}

void NufftKernel::scatter_nodes(const Eigen::MatrixXd& nodes_u, const Eigen::VectorXcd& values,
                                cplx* cube) const {
  const int r = order_;
  const int m = cutoff_;
  const int span = 2 * m + 1;
  const Eigen::Index node_count = nodes_u.cols();
  std::vector<double> weights(static_cast<std::size_t>(r) * span);
  std::vector<int> bins(static_cast<std::size_t>(r) * span);
  for (Eigen::Index j = 0; j < node_count; ++j) {
    for (int a = 0; a < r; ++a) {
      const double xi = node_scale_ * nodes_u(a, j) * grid_;
      const int l0 = static_cast<int>(std::lround(xi));
      const double t = xi - l0;
      double* w = weights.data() + static_cast<std::size_t>(a) * span;
      int* bn = bins.data() + static_cast<std::size_t>(a) * span;
      for (int o = -m; o <= m; ++o) {
        w[o + m] = window(t - o);
        bn[o + m] = ((l0 + o) % grid_ + grid_) % grid_;
      }
    }
    const cplx y = values[j];
    const double* w0 = weights.data();
    const int* b0 = bins.data();
    if (r == 1) {
      for (int i0 = 0; i0 < span; ++i0) cube[b0[i0]] += w0[i0] * y;
    } else if (r == 2) {
      const double* w1 = w0 + span;
      const int* b1 = b0 + span;
      for (int i1 = 0; i1 < span; ++i1) {
        const std::size_t row = static_cast<std::size_t>(b1[i1]) * grid_;
        const cplx q = w1[i1] * y;
        for (int i0 = 0; i0 < span; ++i0) cube[row + b0[i0]] += w0[i0] * q;
      }
    } else {
      const double* w1 = w0 + span;
      const double* w2 = w1 + span;
      const int* b1 = b0 + span;
      const int* b2 = b1 + span;
      for (int i2 = 0; i2 < span; ++i2)
        for (int i1 = 0; i1 < span; ++i1) {
          const std::size_t row =
              (static_cast<std::size_t>(b2[i2]) * grid_ + b1[i1]) * grid_;
          const cplx q = (w2[i2] * w1[i1]) * y;
          for (int i0 = 0; i0 < span; ++i0) cube[row + b0[i0]] += w0[i0] * q;
        }
    }
  }
}

void NufftKernel::forward_accumulate(const Eigen::MatrixXd& nodes_u,
                                     const Eigen::VectorXcd& ghat,
                                     Eigen::VectorXcd& out) const {
  if (nodes_u.rows() != order_)
    throw std::invalid_argument("NufftKernel: node restriction has wrong order");
  if (static_cast<std::size_t>(ghat.size()) !=
      group_cardinality(Term(static_cast<std::size_t>(order_), 0), bandwidth_))
    throw std::invalid_argument("NufftKernel: coefficient count != (N-1)^|u|");
  std::vector<cplx> cube(cube_size_, cplx(0.0, 0.0));
  scatter_coefficients(ghat, cube.data());
  auto* data = reinterpret_cast<fftw_complex*>(cube.data());
  fftw_execute_dft(plans_->synthesis, data, data);
  gather_nodes(nodes_u, cube.data(), out);
}

void NufftKernel::adjoint_accumulate(const Eigen::MatrixXd& nodes_u,
                                     const Eigen::VectorXcd& values,
                                     Eigen::VectorXcd& ghat) const {
  if (nodes_u.rows() != order_)
    throw std::invalid_argument("NufftKernel: node restriction has wrong order");
  if (values.size() != nodes_u.cols())
    throw std::invalid_argument("NufftKernel: value length != node count");
  std::vector<cplx> cube(cube_size_, cplx(0.0, 0.0));
  scatter_nodes(nodes_u, values, cube.data());
  auto* data = reinterpret_cast<fftw_complex*>(cube.data());
  fftw_execute_dft(plans_->analysis, data, data);
  gather_coefficients(cube.data(), ghat);
}

Eigen::VectorXcd fast_group_forward(const Eigen::MatrixXd& nodes_u,
                                    const Eigen::VectorXcd& ghat, int bandwidth,
                                    Basis basis, double sigma, int cutoff) {
  NufftKernel kernel(static_cast<int>(nodes_u.rows()), bandwidth, basis, sigma, cutoff);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(nodes_u.cols());
  kernel.forward_accumulate(nodes_u, ghat, out);
  return out;
}

Eigen::VectorXcd fast_group_adjoint(const Eigen::MatrixXd& nodes_u,
                                    const Eigen::VectorXcd& values, int bandwidth,
                                    Basis basis, double sigma, int cutoff) {
  NufftKernel kernel(static_cast<int>(nodes_u.rows()), bandwidth, basis, sigma, cutoff);
  Eigen::VectorXcd ghat = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(
      group_cardinality(Term(static_cast<std::size_t>(nodes_u.rows()), 0), bandwidth)));
  kernel.adjoint_accumulate(nodes_u, values, ghat);
  return ghat;
}

}  // namespace ganova
