#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "laxlab/grid_space.hpp"

namespace laxlab {

/// Coefficient magnitudes above this mark an operator power as diverged.
inline constexpr double kDivergenceThreshold = 1e300;

/// A translation-invariant one-step operator on periodic grid functions:
///   (C u)_j = sum_m coefficients[m] * u_{(j + offsets[m]) mod N}.
///
/// With period P > 0 the stencil lives on a fixed P-point grid: offsets are
/// folded to the residues -floor((P-1)/2) .. floor(P/2) and coefficients of
/// coinciding residues are summed. With period 0 the stencil is a plain
/// finite convolution that can be applied on any grid at least as wide.
template <typename Scalar>
class StencilScheme {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  StencilScheme(std::vector<int> offsets, Vector coefficients, Scalar dt, Scalar dx, std::string name,
                Index period = 0)
      : dt_(dt), dx_(dx), name_(std::move(name)), period_(period) {
    if (offsets.empty() || Index(offsets.size()) != coefficients.size())
      throw InvalidGridError("stencil needs one coefficient per offset");
    if (!(dt > Scalar(0)) || !(dx > Scalar(0))) throw DomainError("stencil dt and dx must be positive");
    if (period < 0) throw InvalidGridError("stencil period must be nonnegative");
    if (!coefficients.allFinite()) throw DivergedValueError("stencil coefficients must be finite");

    std::map<int, Scalar> folded;
    for (std::size_t m = 0; m < offsets.size(); ++m) {
      const int o = period_ > 0 ? canonical_offset(offsets[m], period_) : offsets[m];
      auto [it, inserted] = folded.emplace(o, coefficients[Index(m)]);
      if (!inserted) {
        if (period_ == 0) throw InvalidGridError("stencil offsets must be distinct");
        it->second += coefficients[Index(m)];
      }
    }
    offsets_.reserve(folded.size());
    coefficients_.resize(Index(folded.size()));
    Index m = 0;
    for (const auto& [o, c] : folded) {
      offsets_.push_back(o);
      coefficients_[m++] = c;
    }
  }

  const std::vector<int>& offsets() const { return offsets_; }
  const Vector& coefficients() const { return coefficients_; }
  Index size() const { return coefficients_.size(); }
  Scalar dt() const { return dt_; }
  Scalar dx() const { return dx_; }
  /// Mesh ratio dt / dx^2.
  Scalar ratio() const { return dt_ / (dx_ * dx_); }
  const std::string& name() const { return name_; }
  Index period() const { return period_; }
  int min_offset() const { return offsets_.front(); }
  int max_offset() const { return offsets_.back(); }
  Index width() const { return Index(max_offset()) - Index(min_offset()) + 1; }

  /// Coefficient at offset o, zero when o is not part of the stencil.
  Scalar at(int o) const {
    if (period_ > 0) o = canonical_offset(o, period_);
    auto it = std::lower_bound(offsets_.begin(), offsets_.end(), o);
    if (it == offsets_.end() || *it != o) return Scalar(0);
    return coefficients_[Index(it - offsets_.begin())];
  }

  static int canonical_offset(long long o, Index period) {
    const long long p = period;
    long long r = ((o % p) + p) % p;  // 0 .. p-1
    if (r > p / 2) r -= p;
    return int(r);
  }

 private:
  std::vector<int> offsets_;
  Vector coefficients_;
  Scalar dt_;
  Scalar dx_;
  std::string name_;
  Index period_;
};

using StencilSchemed = StencilScheme<double>;

/// Explicit forward-time centred-space heat step: coefficients (r, 1 - 2r, r)
/// on offsets (-1, 0, 1) with r = dt / dx^2.
template <typename Scalar = double>
StencilScheme<Scalar> ftcs_heat(Scalar dt, Scalar dx, Index period = 0) {
  const Scalar r = dt / (dx * dx);
  typename StencilScheme<Scalar>::Vector c(3);
  c << r, Scalar(1) - Scalar(2) * r, r;
  return StencilScheme<Scalar>({-1, 0, 1}, std::move(c), dt, dx, "ftcs", period);
}

/// Implicit heat step (I - dt D2)^{-1} on an N-point periodic grid, stored
/// as the full-period circulant inverse. Throws InternalError if the inverse
/// fails its residual check at 1e-10.
StencilSchemed backward_euler_heat(double dt, double dx, Index grid_n);

/// The identity operator (single coefficient 1 at offset 0).
template <typename Scalar = double>
StencilScheme<Scalar> identity_scheme(Scalar dt, Scalar dx, Index period = 0) {
  typename StencilScheme<Scalar>::Vector c(1);
  c << Scalar(1);
  return StencilScheme<Scalar>({0}, std::move(c), dt, dx, "identity", period);
}

/// v_j = sum_m c_m u_{(j + o_m) mod N}.
template <typename Scalar>
GridFunction<Scalar> apply(const StencilScheme<Scalar>& s, const GridFunction<Scalar>& u) {
  const Index n = u.size();
  if (s.period() > 0 && s.period() != n)
    throw InvalidGridError("stencil built for N=" + std::to_string(s.period()) + " applied on N=" +
                           std::to_string(n));
  if (s.width() > n) throw InvalidGridError("stencil wider than the grid");

  const auto& in = u.values();
  typename GridFunction<Scalar>::Vector out = GridFunction<Scalar>::Vector::Zero(n);
  for (Index m = 0; m < s.size(); ++m) {
    const Scalar c = s.coefficients()[m];
    const Index shift = ((Index(s.offsets()[std::size_t(m)]) % n) + n) % n;
    // out_j += c * in_{(j + shift) mod N}
    out.head(n - shift) += c * in.tail(n - shift);
    if (shift > 0) out.tail(shift) += c * in.head(shift);
  }
  return GridFunction<Scalar>(std::move(out), u.domain_length());
}

/// Operator product a * b (apply b first, then a). Both stencils must share
/// the same period; the result keeps a's dt and dx.
template <typename Scalar>
StencilScheme<Scalar> compose(const StencilScheme<Scalar>& a, const StencilScheme<Scalar>& b) {
  if (a.period() != b.period()) throw InvalidGridError("compose: stencils have different periods");
  const Index period = a.period();
  const long long lo = (long long)a.min_offset() + b.min_offset();
  const long long hi = (long long)a.max_offset() + b.max_offset();
  const Index span = period > 0 ? std::min<Index>(period, Index(hi - lo + 1)) : Index(hi - lo + 1);

  // acc[i] holds offset lo + i (unfolded) or the residue (lo + i) mod P.
  typename StencilScheme<Scalar>::Vector acc = StencilScheme<Scalar>::Vector::Zero(span);
  for (Index i = 0; i < a.size(); ++i) {
    const Scalar ca = a.coefficients()[i];
    if (ca == Scalar(0)) continue;
    for (Index j = 0; j < b.size(); ++j) {
      long long idx = (long long)a.offsets()[std::size_t(i)] + b.offsets()[std::size_t(j)] - lo;
      if (period > 0) idx %= span;
      acc[Index(idx)] += ca * b.coefficients()[j];
    }
  }
  for (Index i = 0; i < span; ++i) {
    const double mag = double(std::abs(acc[i]));
    if (!std::isfinite(mag) || mag > kDivergenceThreshold)
      throw DivergedOperatorError("operator coefficients exceeded " + std::to_string(kDivergenceThreshold));
  }
  std::vector<int> offsets(static_cast<std::size_t>(span));
  for (Index i = 0; i < span; ++i) offsets[std::size_t(i)] = int(lo + i);
  return StencilScheme<Scalar>(std::move(offsets), std::move(acc), a.dt(), a.dx(), a.name(), period);
}

/// n-fold self-composition C^n by binary exponentiation. Throws
/// DivergedOperatorError when a coefficient magnitude passes 1e300.
template <typename Scalar>
StencilScheme<Scalar> power(const StencilScheme<Scalar>& s, long long n) {
  if (n < 1) throw DomainError("power: n must be >= 1");
  std::optional<StencilScheme<Scalar>> result;
  StencilScheme<Scalar> base = s;
  while (true) {
    if (n & 1) result = result ? compose(*result, base) : base;
    n >>= 1;
    if (n == 0) break;
    base = compose(base, base);
  }
  return *result;
}

}  // namespace laxlab
