#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

namespace laxlab::ubp {

/// A real sequence (x_0, x_1, ...) with finitely many nonzero entries, under
/// the sup norm. The space of such sequences is dense in l-infinity but not
/// complete.
class FiniteSequence {
 public:
  FiniteSequence() = default;
  /// Dense prefix (x_0, ..., x_{m-1}, 0, 0, ...).
  FiniteSequence(std::initializer_list<double> prefix);
  static FiniteSequence from_dense(const std::vector<double>& prefix);
  static FiniteSequence from_entries(const std::map<std::size_t, double>& entries);
  /// The unit sequence e_k.
  static FiniteSequence unit(std::size_t k);

  double operator[](std::size_t n) const;
  /// Sets x_n; zero values are not stored.
  void set(std::size_t n, double value);

  /// Smallest m with x_n = 0 for every n >= m (0 for the zero sequence).
  std::size_t support_bound() const;
  const std::map<std::size_t, double>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  friend FiniteSequence operator+(const FiniteSequence& a, const FiniteSequence& b);
  friend FiniteSequence operator-(const FiniteSequence& a, const FiniteSequence& b);
  friend FiniteSequence operator*(double c, const FiniteSequence& x);
  friend bool operator==(const FiniteSequence& a, const FiniteSequence& b) = default;

 private:
  std::map<std::size_t, double> entries_;  // nonzero entries only
};

/// sup_n |x_n|.
double seq_norm(const FiniteSequence& x);

/// T_k x: the single entry k * x_k at index k.
FiniteSequence apply_Tk(std::size_t k, const FiniteSequence& x);

/// ||T_k|| = k.
double norm_Tk(std::size_t k);

struct PointwiseBound {
  double bound = 0.0;
  std::size_t saturating_k = 0;
  bool saturated = false;
};

/// sup_k ||T_k x||. Since T_k x = 0 for k >= support_bound(x), the supremum is
/// the maximum of k |x_k| over k < support_bound(x). Throws
/// InsufficientScanError when k_max < support_bound(x).
PointwiseBound pointwise_bound(const FiniteSequence& x, std::size_t k_max);

struct DemoRow {
  std::size_t k = 0;
  double op_norm = 0.0;
  std::optional<std::size_t> probe_id;  // empty when there are no probes
  double probe_bound = 0.0;
};

/// One row per (k, probe): ||T_k|| grows without bound while every probe's
/// pointwise bound stays fixed.
std::vector<DemoRow> ubp_violation_demo(const std::vector<std::size_t>& k_range,
                                        const std::vector<FiniteSequence>& probes);

/// Header "k,op_norm,probe_id,probe_bound".
void write_csv(std::ostream& os, const std::vector<DemoRow>& rows);

/// x^(m) = (1, 1/2, ..., 1/m, 0, ...): a Cauchy sequence in the space whose
/// pointwise limit (1/(n+1))_n has no finite support.
FiniteSequence harmonic_truncation(std::size_t m);

}  // namespace laxlab::ubp
