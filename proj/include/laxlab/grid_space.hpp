#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "laxlab/errors.hpp"

namespace laxlab {

using Index = Eigen::Index;

template <typename Scalar>
inline constexpr Scalar kTwoPi = Scalar(2) * std::numbers::pi_v<Scalar>;

/// Samples of a function on the periodic grid x_j = j * L / N, j = 0..N-1.
///
/// Value type: operations return new grid functions and never mutate their
/// inputs. Samples may be non-finite only when a trajectory has diverged;
/// diverged() reports that state and sup_norm() refuses it.
template <typename Scalar>
class GridFunction {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit GridFunction(Vector values, Scalar domain_length = kTwoPi<Scalar>)
      : values_(std::move(values)), domain_length_(domain_length) {
    if (values_.size() < 2) throw InvalidGridError("grid function needs N >= 2 samples");
    if (!(domain_length_ > Scalar(0)) || !std::isfinite(domain_length_))
      throw InvalidGridError("domain length must be positive and finite");
  }

  static GridFunction zero(Index n, Scalar domain_length = kTwoPi<Scalar>) {
    if (n < 2) throw InvalidGridError("grid function needs N >= 2 samples");
    return GridFunction(Vector::Zero(n), domain_length);
  }

  Index size() const { return values_.size(); }
  Scalar domain_length() const { return domain_length_; }
  Scalar dx() const { return domain_length_ / Scalar(values_.size()); }
  Scalar x(Index j) const { return Scalar(j) * domain_length_ / Scalar(values_.size()); }

  const Vector& values() const { return values_; }
  Scalar operator[](Index j) const { return values_[j]; }

  bool diverged() const { return !values_.allFinite(); }

  /// Same grid (N and domain length) as `other`.
  bool same_grid(const GridFunction& other) const {
    return size() == other.size() && domain_length_ == other.domain_length_;
  }

 private:
  Vector values_;
  Scalar domain_length_;
};

using GridFunctiond = GridFunction<double>;

namespace detail {
template <typename Scalar>
void require_same_grid(const GridFunction<Scalar>& a, const GridFunction<Scalar>& b) {
  if (!a.same_grid(b)) throw InvalidGridError("grid functions live on different grids");
}
}  // namespace detail

template <typename Scalar>
GridFunction<Scalar> operator+(const GridFunction<Scalar>& a, const GridFunction<Scalar>& b) {
  detail::require_same_grid(a, b);
  return GridFunction<Scalar>(a.values() + b.values(), a.domain_length());
}

template <typename Scalar>
GridFunction<Scalar> operator-(const GridFunction<Scalar>& a, const GridFunction<Scalar>& b) {
  detail::require_same_grid(a, b);
  return GridFunction<Scalar>(a.values() - b.values(), a.domain_length());
}

template <typename Scalar>
GridFunction<Scalar> operator*(Scalar c, const GridFunction<Scalar>& u) {
  return GridFunction<Scalar>(c * u.values(), u.domain_length());
}

/// max_j |u_j|. Throws DivergedValueError on any non-finite sample.
template <typename Scalar>
Scalar sup_norm(const GridFunction<Scalar>& u) {
  if (u.diverged()) throw DivergedValueError("sup_norm of a grid function with non-finite samples");
  return u.values().cwiseAbs().maxCoeff();
}

/// Cyclic shift: result_j = u_{(j + shift) mod N}.
template <typename Scalar>
GridFunction<Scalar> cyclic_shift(const GridFunction<Scalar>& u, Index shift) {
  const Index n = u.size();
  const Index s = ((shift % n) + n) % n;
  typename GridFunction<Scalar>::Vector out(n);
  out.head(n - s) = u.values().tail(n - s);
  out.tail(s) = u.values().head(s);
  return GridFunction<Scalar>(std::move(out), u.domain_length());
}

// ---------------------------------------------------------------------------
// Closed-form probes

/// One closed-form term. Sums of terms describe probes such as sin(x) + sin(31x).
struct ProbeTerm {
  enum class Kind { sine, cosine, random_uniform, point_mass, constant };
  Kind kind = Kind::constant;
  double weight = 1.0;
  std::int64_t parameter = 0;  // wavenumber, seed or index j0
};

/// A probe descriptor: the weighted sum of its terms.
struct Probe {
  std::vector<ProbeTerm> terms;

  static Probe sine(std::int64_t k, double weight = 1.0);
  static Probe cosine(std::int64_t k, double weight = 1.0);
  static Probe random_uniform(std::uint64_t seed);
  static Probe point_mass(std::int64_t j0);
  static Probe constant(double c);

  Probe operator+(const Probe& other) const;

  /// Parses "sine:1 + sine:31", "0.5*cosine:2", "random:42", "point:0", "const:1".
  /// A bare "random" takes `default_seed`.
  static Probe parse(const std::string& text, std::uint64_t default_seed = 0);
  std::string to_string() const;
};

/// values[j] = f(j * L / N). random_uniform draws i.i.d. U[-1, 1) from a
/// seeded mt19937_64, so reruns with the same seed reproduce the samples.
GridFunctiond sample(const Probe& f, Index n, double domain_length = kTwoPi<double>);

// ---------------------------------------------------------------------------
// Spectral representation

/// Discrete Fourier coefficients c_k, k = -floor(N/2) .. ceil(N/2) - 1, with
/// u_j = sum_k c_k exp(2 pi i k j / N). On the default 2 pi domain this is
/// u_j = sum_k c_k exp(i k x_j).
struct SpectralCoefficients {
  Eigen::VectorXcd values;  // values[k - k_min()]
  double domain_length = kTwoPi<double>;

  Index size() const { return values.size(); }
  Index k_min() const { return -(size() / 2); }
  Index k_max() const { return (size() + 1) / 2 - 1; }
  std::complex<double> at(Index k) const { return values[k - k_min()]; }
  std::complex<double>& at(Index k) { return values[k - k_min()]; }

  /// Physical wavenumber 2 pi k / L of mode k.
  double wavenumber(Index k) const { return kTwoPi<double> * double(k) / domain_length; }
};

SpectralCoefficients spectral_coefficients(const GridFunctiond& u);

/// Inverse of spectral_coefficients; returns the real part of the synthesis.
GridFunctiond from_spectral(const SpectralCoefficients& c);

/// Multiplies each coefficient c_k by multiplier(kappa_k) with kappa_k the
/// physical wavenumber, then synthesizes.
template <typename Multiplier>
GridFunctiond apply_spectral_multiplier(const GridFunctiond& u, Multiplier&& multiplier) {
  SpectralCoefficients c = spectral_coefficients(u);
  for (Index k = c.k_min(); k <= c.k_max(); ++k) c.at(k) *= multiplier(c.wavenumber(k));
  return from_spectral(c);
}

/// True when every mode with |k| > N/4 has magnitude at most
/// rel_tol * max_k |c_k|.
bool is_band_limited(const GridFunctiond& u, double rel_tol = 1e-10);

/// Trigonometric interpolation onto an n-point grid over the same domain.
/// Exact for functions band-limited on both grids. An unpaired Nyquist mode
/// is split evenly between +-N/2 when upsampling.
GridFunctiond resample(const GridFunctiond& u, Index n);

// ---------------------------------------------------------------------------
// Serialization

/// Rows "x_j,value" with 17 significant digits, no header.
void write_csv(std::ostream& os, const GridFunctiond& u);

}  // namespace laxlab
