#pragma once

// Reference computations used only by the tests. None of these route through
// the library's FFT, stencil composition or norm code: they use dense
// matrices, direct sums and enumeration.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "laxlab/grid_space.hpp"
#include "laxlab/schemes.hpp"

namespace oracle {

using laxlab::Index;

/// c_k = (1/N) sum_j u_j exp(-2 pi i k j / N) by direct summation.
inline std::complex<double> dft_coefficient(const Eigen::VectorXd& u, Index k) {
  const Index n = u.size();
  std::complex<double> sum = 0.0;
  for (Index j = 0; j < n; ++j) {
    const double phase = -2.0 * M_PI * double((k * j) % n) / double(n);
    sum += u[j] * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return sum / double(n);
}

/// Dense N x N matrix of a stencil: M(j, (j + o) mod N) += c.
inline Eigen::MatrixXd circulant(const laxlab::StencilSchemed& s, Index n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < s.size(); ++i) {
    const long long o = s.offsets()[std::size_t(i)];
    for (Index j = 0; j < n; ++j) m(j, ((j + o) % n + n) % n) += s.coefficients()[i];
  }
  return m;
}

/// Infinity-norm (max absolute row sum) of a dense matrix: the sup-norm
/// operator norm.
inline double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

/// Dense periodic second difference (without the 1/dx^2 factor).
inline Eigen::MatrixXd second_difference(Index n) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    d(j, j) = -2.0;
    d(j, (j + 1) % n) += 1.0;
    d(j, (j + n - 1) % n) += 1.0;
  }
  return d;
}

/// Full-length convolution of two coefficient arrays (no folding).
inline std::vector<double> convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// The two representable neighbours of x > 0 with `bits` fraction bits,
/// found by flooring the scaled significand; returns the closer one, ties to
/// the one with an even last bit.
inline double nearest_with_bits(double x, int bits) {
  int e = 0;
  const double m = std::frexp(std::abs(x), &e);  // |x| = m 2^e, m in [0.5, 1)
  const double scale = std::ldexp(1.0, bits + 1);
  const double lo_units = std::floor(m * scale);
  const double lo = std::ldexp(lo_units, e - bits - 1);
  const double hi = std::ldexp(lo_units + 1.0, e - bits - 1);
  const double ax = std::abs(x);
  double pick;
  if (ax - lo < hi - ax)
    pick = lo;
  else if (hi - ax < ax - lo)
    pick = hi;
  else
    pick = std::fmod(lo_units, 2.0) == 0.0 ? lo : hi;
  return std::copysign(pick, x);
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, Index n, double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::VectorXd v(n);
  for (Index j = 0; j < n; ++j) v[j] = dist(rng);
  return v;
}

/// Random stencil with `width` consecutive offsets starting at `lo`.
inline laxlab::StencilSchemed random_stencil(std::mt19937_64& rng, int lo, int width, Index period = 0) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<int> offsets;
  Eigen::VectorXd c(width);
  for (int i = 0; i < width; ++i) {
    offsets.push_back(lo + i);
    c[i] = dist(rng);
  }
  return laxlab::StencilSchemed(offsets, c, 0.01, 0.1, "random", period);
}

}  // namespace oracle
