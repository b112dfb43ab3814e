#include "ganova/group_kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ganova {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Phase table e^{sign * 2 pi i k x} for the ascending exponential axis values
// k in [-N/2, N/2) \ {0}, built by a unit-modulus recurrence from the two
// seed phases (at k = -N/2 and the unit step).
void fill_exponential_table(cplx start, cplx step, int bandwidth, cplx* table) {
  cplx z = start;
  int w = 0;
  for (int k = -bandwidth / 2; k < bandwidth / 2; ++k) {
    if (k != 0) table[w++] = z;
    z *= step;
  }
}

// cos(pi k x) for k = 1..N-1 via the Chebyshev three-term recurrence.
void fill_cosine_table(double c1, int bandwidth, double* table) {
  double prev = 1.0;  // k = 0
  double cur = c1;
  for (int k = 1; k < bandwidth; ++k) {
    table[k - 1] = cur;
    const double next = 2.0 * c1 * cur - prev;
    prev = cur;
    cur = next;
  }
}

template <bool Forward>
void run_exponential(const Eigen::MatrixXd& nodes_u, const Eigen::VectorXcd& in,
                     int bandwidth, Eigen::VectorXcd& out, const PhaseSeeds* seeds) {
  const int r = static_cast<int>(nodes_u.rows());
  const Eigen::Index node_count = nodes_u.cols();
  const int nv = bandwidth - 1;
  const double sign = Forward ? 1.0 : -1.0;
  std::vector<cplx> tables(static_cast<std::size_t>(r) * static_cast<std::size_t>(nv));
  for (Eigen::Index m = 0; m < node_count; ++m) {
    for (int a = 0; a < r; ++a) {
      cplx start, step;
      if (seeds) {
        start = seeds->start[static_cast<std::size_t>(a)][m];
        step = seeds->step[static_cast<std::size_t>(a)][m];
        if (!Forward) {
          start = std::conj(start);
          step = std::conj(step);
        }
      } else {
        const double x = nodes_u(a, m);
        step = std::polar(1.0, sign * kTwoPi * x);
        start = std::polar(1.0, sign * kTwoPi * x * static_cast<double>(-bandwidth / 2));
      }
      fill_exponential_table(start, step, bandwidth,
                             tables.data() + static_cast<std::size_t>(a) * nv);
    }
    const cplx* t0 = tables.data();
    if constexpr (Forward) {
      cplx acc(0.0, 0.0);
      if (r == 1) {
        for (int i0 = 0; i0 < nv; ++i0) acc += in[i0] * t0[i0];
      } else if (r == 2) {
        const cplx* t1 = t0 + nv;
        Eigen::Index idx = 0;
        for (int i1 = 0; i1 < nv; ++i1) {
          cplx s(0.0, 0.0);
          for (int i0 = 0; i0 < nv; ++i0) s += in[idx++] * t0[i0];
          acc += s * t1[i1];
        }
      } else {
        const cplx* t1 = t0 + nv;
        const cplx* t2 = t1 + nv;
        Eigen::Index idx = 0;
        for (int i2 = 0; i2 < nv; ++i2)
          for (int i1 = 0; i1 < nv; ++i1) {
            cplx s(0.0, 0.0);
            for (int i0 = 0; i0 < nv; ++i0) s += in[idx++] * t0[i0];
            acc += s * (t1[i1] * t2[i2]);
          }
      }
      out[m] += acc;
    } else {
      const cplx y = in[m];
      if (r == 1) {
        for (int i0 = 0; i0 < nv; ++i0) out[i0] += y * t0[i0];
      } else if (r == 2) {
        const cplx* t1 = t0 + nv;
        Eigen::Index idx = 0;
        for (int i1 = 0; i1 < nv; ++i1) {
          const cplx q = y * t1[i1];
          for (int i0 = 0; i0 < nv; ++i0) out[idx++] += q * t0[i0];
        }
      } else {
        const cplx* t1 = t0 + nv;
        const cplx* t2 = t1 + nv;
        Eigen::Index idx = 0;
        for (int i2 = 0; i2 < nv; ++i2)
          for (int i1 = 0; i1 < nv; ++i1) {
            const cplx q = y * (t1[i1] * t2[i2]);
            for (int i0 = 0; i0 < nv; ++i0) out[idx++] += q * t0[i0];
          }
      }
    }
  }
}

template <bool Forward>
void run_cosine(const Eigen::MatrixXd& nodes_u, const Eigen::VectorXcd& in, int bandwidth,
                Eigen::VectorXcd& out, const PhaseSeeds* seeds) {
  const int r = static_cast<int>(nodes_u.rows());
  const Eigen::Index node_count = nodes_u.cols();
  const int nv = bandwidth - 1;
  const double scale = std::pow(std::numbers::sqrt2, r);
  std::vector<double> tables(static_cast<std::size_t>(r) * static_cast<std::size_t>(nv));
  for (Eigen::Index m = 0; m < node_count; ++m) {
    for (int a = 0; a < r; ++a) {
      const double c1 = seeds ? seeds->cosine[static_cast<std::size_t>(a)][m]
                              : std::cos(std::numbers::pi * nodes_u(a, m));
      fill_cosine_table(c1, bandwidth,
                        tables.data() + static_cast<std::size_t>(a) * nv);
    }
    const double* t0 = tables.data();
    if constexpr (Forward) {
      cplx acc(0.0, 0.0);
      if (r == 1) {
        for (int i0 = 0; i0 < nv; ++i0) acc += in[i0] * t0[i0];
      } else if (r == 2) {
        const double* t1 = t0 + nv;
        Eigen::Index idx = 0;
        for (int i1 = 0; i1 < nv; ++i1) {
          cplx s(0.0, 0.0);
          for (int i0 = 0; i0 < nv; ++i0) s += in[idx++] * t0[i0];
          acc += s * t1[i1];
        }
      } else {
        const double* t1 = t0 + nv;
        const double* t2 = t1 + nv;
        Eigen::Index idx = 0;
        for (int i2 = 0; i2 < nv; ++i2)
          for (int i1 = 0; i1 < nv; ++i1) {
            cplx s(0.0, 0.0);
            for (int i0 = 0; i0 < nv; ++i0) s += in[idx++] * t0[i0];
            acc += s * (t1[i1] * t2[i2]);
          }
      }
      out[m] += scale * acc;
    } else {
      const cplx y = scale * in[m];
      if (r == 1) {
        for (int i0 = 0; i0 < nv; ++i0) out[i0] += y * t0[i0];
      } else if (r == 2) {
        const double* t1 = t0 + nv;
        Eigen::Index idx = 0;
        for (int i1 = 0; i1 < nv; ++i1) {
          const cplx q = y * t1[i1];
          for (int i0 = 0; i0 < nv; ++i0) out[idx++] += q * t0[i0];
        }
      } else {
        const double* t1 = t0 + nv;
        const double* t2 = t1 + nv;
        Eigen::Index idx = 0;
        for (int i2 = 0; i2 < nv; ++i2)
          for (int i1 = 0; i1 < nv; ++i1) {
            const cplx q = y * (t1[i1] * t2[i2]);
            for (int i0 = 0; i0 < nv; ++i0) out[idx++] += q * t0[i0];
          }
      }
    }
  }
}

// Adjoint specializations for |u| in {2,3} tiled over node blocks: the
// inner sums accumulate a whole block per output entry in registers, so the
// coefficient block is stored once per tile instead of once per node.
constexpr Eigen::Index kAdjointTile = 32;

template <class Scalar>
struct TileTables {
  // layout: axis a, value i, node slot m -> tables[(a * nv + i) * tile + m]
  std::vector<Scalar> data;
};

void run_exponential_adjoint_tiled(const Eigen::MatrixXd& nodes_u,
                                   const Eigen::VectorXcd& in, int bandwidth,
                                   Eigen::VectorXcd& out, const PhaseSeeds* seeds) {
  const int r = static_cast<int>(nodes_u.rows());
  const Eigen::Index node_count = nodes_u.cols();
  const int nv = bandwidth - 1;
  const Eigen::Index tile = kAdjointTile;
  std::vector<cplx> tables(static_cast<std::size_t>(r) * nv * tile);
  std::vector<cplx> q2(static_cast<std::size_t>(tile)), q12(static_cast<std::size_t>(tile));
  for (Eigen::Index base = 0; base < node_count; base += tile) {
    const Eigen::Index block = std::min(tile, node_count - base);
    for (Eigen::Index s = 0; s < block; ++s) {
      const Eigen::Index m = base + s;
      for (int a = 0; a < r; ++a) {
        cplx start, step;
        if (seeds) {
          start = std::conj(seeds->start[static_cast<std::size_t>(a)][m]);
          step = std::conj(seeds->step[static_cast<std::size_t>(a)][m]);
        } else {
          const double x = nodes_u(a, m);
          step = std::polar(1.0, -kTwoPi * x);
          start = std::polar(1.0, -kTwoPi * x * static_cast<double>(-bandwidth / 2));
        }
        cplx z = start;
        std::size_t w = (static_cast<std::size_t>(a) * nv) * tile + s;
        for (int k = -bandwidth / 2; k < bandwidth / 2; ++k) {
          if (k != 0) {
            tables[w] = z;
            w += tile;
          }
          z *= step;
        }
      }
    }
    const cplx* t0 = tables.data();
    const cplx* t1 = t0 + static_cast<std::size_t>(nv) * tile;
    const cplx* t2 = t1 + static_cast<std::size_t>(nv) * tile;
    Eigen::Index idx = 0;
    if (r == 2) {
      for (int i1 = 0; i1 < nv; ++i1) {
        const cplx* t1i = t1 + static_cast<std::size_t>(i1) * tile;
        for (Eigen::Index s = 0; s < block; ++s) q12[s] = in[base + s] * t1i[s];
        for (int i0 = 0; i0 < nv; ++i0) {
          const cplx* t0i = t0 + static_cast<std::size_t>(i0) * tile;
          cplx acc(0.0, 0.0);
          for (Eigen::Index s = 0; s < block; ++s) acc += q12[s] * t0i[s];
          out[idx++] += acc;
        }
      }
    } else {
      for (int i2 = 0; i2 < nv; ++i2) {
        const cplx* t2i = t2 + static_cast<std::size_t>(i2) * tile;
        for (Eigen::Index s = 0; s < block; ++s) q2[s] = in[base + s] * t2i[s];
        for (int i1 = 0; i1 < nv; ++i1) {
          const cplx* t1i = t1 + static_cast<std::size_t>(i1) * tile;
          for (Eigen::Index s = 0; s < block; ++s) q12[s] = q2[s] * t1i[s];
          for (int i0 = 0; i0 < nv; ++i0) {
            const cplx* t0i = t0 + static_cast<std::size_t>(i0) * tile;
            cplx acc(0.0, 0.0);
            for (Eigen::Index s = 0; s < block; ++s) acc += q12[s] * t0i[s];
            out[idx++] += acc;
          }
        }
      }
    }
  }
}

void run_cosine_adjoint_tiled(const Eigen::MatrixXd& nodes_u, const Eigen::VectorXcd& in,
                              int bandwidth, Eigen::VectorXcd& out,
                              const PhaseSeeds* seeds) {
  const int r = static_cast<int>(nodes_u.rows());
  const Eigen::Index node_count = nodes_u.cols();
  const int nv = bandwidth - 1;
  const double scale = std::pow(std::numbers::sqrt2, r);
  const Eigen::Index tile = kAdjointTile;
  std::vector<double> tables(static_cast<std::size_t>(r) * nv * tile);
  std::vector<cplx> q2(static_cast<std::size_t>(tile)), q12(static_cast<std::size_t>(tile));
  for (Eigen::Index base = 0; base < node_count; base += tile) {
    const Eigen::Index block = std::min(tile, node_count - base);
    for (Eigen::Index s = 0; s < block; ++s) {
      const Eigen::Index m = base + s;
      for (int a = 0; a < r; ++a) {
        const double c1 = seeds ? seeds->cosine[static_cast<std::size_t>(a)][m]
                                : std::cos(std::numbers::pi * nodes_u(a, m));
        double prev = 1.0;
        double cur = c1;
        std::size_t w = (static_cast<std::size_t>(a) * nv) * tile + s;
        for (int k = 1; k < bandwidth; ++k) {
          tables[w] = cur;
          w += tile;
          const double next = 2.0 * c1 * cur - prev;
          prev = cur;
          cur = next;
        }
      }
    }
    const double* t0 = tables.data();
    const double* t1 = t0 + static_cast<std::size_t>(nv) * tile;
    const double* t2 = t1 + static_cast<std::size_t>(nv) * tile;
    Eigen::Index idx = 0;
    if (r == 2) {
      for (int i1 = 0; i1 < nv; ++i1) {
        const double* t1i = t1 + static_cast<std::size_t>(i1) * tile;
        for (Eigen::Index s = 0; s < block; ++s) q12[s] = scale * in[base + s] * t1i[s];
        for (int i0 = 0; i0 < nv; ++i0) {
          const double* t0i = t0 + static_cast<std::size_t>(i0) * tile;
          cplx acc(0.0, 0.0);
          for (Eigen::Index s = 0; s < block; ++s) acc += q12[s] * t0i[s];
          out[idx++] += acc;
        }
      }
    } else {
      for (int i2 = 0; i2 < nv; ++i2) {
        const double* t2i = t2 + static_cast<std::size_t>(i2) * tile;
        for (Eigen::Index s = 0; s < block; ++s) q2[s] = scale * in[base + s] * t2i[s];
        for (int i1 = 0; i1 < nv; ++i1) {
          const double* t1i = t1 + static_cast<std::size_t>(i1) * tile;
          for (Eigen::Index s = 0; s < block; ++s) q12[s] = q2[s] * t1i[s];
          for (int i0 = 0; i0 < nv; ++i0) {
            const double* t0i = t0 + static_cast<std::size_t>(i0) * tile;
            cplx acc(0.0, 0.0);
            for (Eigen::Index s = 0; s < block; ++s) acc += q12[s] * t0i[s];
            out[idx++] += acc;
          }
        }
      }
    }
  }
}

// Generic odometer fallback for |u| > 3.
template <bool Forward>
void run_generic(const Eigen::MatrixXd& nodes_u, const Eigen::VectorXcd& in, int bandwidth,
                 Basis basis, Eigen::VectorXcd& out) {
  const int r = static_cast<int>(nodes_u.rows());
  const Eigen::Index node_count = nodes_u.cols();
  const int nv = bandwidth - 1;
  const double sign = Forward ? 1.0 : -1.0;
  const double scale = basis == Basis::cosine ? std::pow(std::numbers::sqrt2, r) : 1.0;
  std::vector<cplx> tables(static_cast<std::size_t>(r) * static_cast<std::size_t>(nv));
  std::vector<double> ctables;
  if (basis == Basis::cosine) ctables.resize(tables.size());
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (Eigen::Index m = 0; m < node_count; ++m) {
    for (int a = 0; a < r; ++a) {
      if (basis == Basis::exponential) {
        const double x = nodes_u(a, m);
        fill_exponential_table(
            std::polar(1.0, sign * kTwoPi * x * static_cast<double>(-bandwidth / 2)),
            std::polar(1.0, sign * kTwoPi * x), bandwidth,
            tables.data() + static_cast<std::size_t>(a) * nv);
      } else {
        fill_cosine_table(std::cos(std::numbers::pi * nodes_u(a, m)), bandwidth,
                          ctables.data() + static_cast<std::size_t>(a) * nv);
        for (int i = 0; i < nv; ++i)
          tables[static_cast<std::size_t>(a) * nv + i] =
              cplx(ctables[static_cast<std::size_t>(a) * nv + i], 0.0);
      }
    }
    std::fill(idx.begin(), idx.end(), 0);
    Eigen::Index flat = 0;
    cplx acc(0.0, 0.0);
    while (true) {
      cplx phase(1.0, 0.0);
      for (int a = 0; a < r; ++a) phase *= tables[static_cast<std::size_t>(a) * nv + idx[a]];
      if constexpr (Forward)
        acc += in[flat] * phase;
      else
        out[flat] += scale * in[m] * phase;
      ++flat;
      int a = 0;
      while (a < r && ++idx[a] == nv) {
        idx[a] = 0;
        ++a;
      }
      if (a == r) break;
    }
    if constexpr (Forward) out[m] += scale * acc;
  }
}

void check_inputs(const Eigen::MatrixXd& nodes_u, int bandwidth, Basis basis) {
  if (nodes_u.rows() < 1)
    throw std::invalid_argument("group kernel: |u| >= 1 required (constant group is handled by the plan)");
  if (bandwidth < 2) throw std::invalid_argument("group kernel: bandwidth must be >= 2");
  if (basis == Basis::exponential && bandwidth % 2 != 0)
    throw std::invalid_argument("group kernel: exponential basis requires even bandwidth");
}

}  // namespace

void direct_group_forward_accumulate(const Eigen::MatrixXd& nodes_u,
                                     const Eigen::VectorXcd& ghat, int bandwidth,
                                     Basis basis, Eigen::VectorXcd& out,
                                     const PhaseSeeds* seeds) {
  check_inputs(nodes_u, bandwidth, basis);
  const int r = static_cast<int>(nodes_u.rows());
  const auto expected =
      static_cast<Eigen::Index>(std::llround(std::pow(double(bandwidth - 1), r)));
  if (ghat.size() != expected)
    throw std::invalid_argument("group kernel: coefficient count != (N-1)^|u|");
  if (out.size() != nodes_u.cols())
    throw std::invalid_argument("group kernel: output length != node count");
  if (r <= 3) {
    if (basis == Basis::exponential)
      run_exponential<true>(nodes_u, ghat, bandwidth, out, seeds);
    else
      run_cosine<true>(nodes_u, ghat, bandwidth, out, seeds);
  } else {
    run_generic<true>(nodes_u, ghat, bandwidth, basis, out);
  }
}

void direct_group_adjoint_accumulate(const Eigen::MatrixXd& nodes_u,
                                     const Eigen::VectorXcd& values, int bandwidth,
                                     Basis basis, Eigen::VectorXcd& ghat,
                                     const PhaseSeeds* seeds) {
  check_inputs(nodes_u, bandwidth, basis);
  const int r = static_cast<int>(nodes_u.rows());
  const auto expected =
      static_cast<Eigen::Index>(std::llround(std::pow(double(bandwidth - 1), r)));
  if (ghat.size() != expected)
    throw std::invalid_argument("group kernel: coefficient count != (N-1)^|u|");
  if (values.size() != nodes_u.cols())
    throw std::invalid_argument("group kernel: value length != node count");
  if (r == 1) {
    if (basis == Basis::exponential)
      run_exponential<false>(nodes_u, values, bandwidth, ghat, seeds);
    else
      run_cosine<false>(nodes_u, values, bandwidth, ghat, seeds);
  } else if (r <= 3) {
    if (basis == Basis::exponential)
      run_exponential_adjoint_tiled(nodes_u, values, bandwidth, ghat, seeds);
    else
      run_cosine_adjoint_tiled(nodes_u, values, bandwidth, ghat, seeds);
  } else {
    run_generic<false>(nodes_u, values, bandwidth, basis, ghat);
  }
}

Eigen::VectorXcd direct_group_forward(const Eigen::MatrixXd& nodes_u,
                                      const Eigen::VectorXcd& ghat, int bandwidth,
                                      Basis basis) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(nodes_u.cols());
  direct_group_forward_accumulate(nodes_u, ghat, bandwidth, basis, out);
  return out;
}

Eigen::VectorXcd direct_group_adjoint(const Eigen::MatrixXd& nodes_u,
                                      const Eigen::VectorXcd& values, int bandwidth,
                                      Basis basis) {
  const int r = static_cast<int>(nodes_u.rows());
  Eigen::VectorXcd ghat = Eigen::VectorXcd::Zero(
      static_cast<Eigen::Index>(std::llround(std::pow(double(bandwidth - 1), r))));
  direct_group_adjoint_accumulate(nodes_u, values, bandwidth, basis, ghat);
  return ghat;
}

}  // namespace ganova
