#include "laxlab/ubp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "laxlab/csv.hpp"
#include "laxlab/errors.hpp"

namespace laxlab::ubp {

FiniteSequence::FiniteSequence(std::initializer_list<double> prefix) {
  std::size_t n = 0;
  for (double v : prefix) set(n++, v);
}

FiniteSequence FiniteSequence::from_dense(const std::vector<double>& prefix) {
  FiniteSequence x;
  for (std::size_t n = 0; n < prefix.size(); ++n) x.set(n, prefix[n]);
  return x;
}

FiniteSequence FiniteSequence::from_entries(const std::map<std::size_t, double>& entries) {
  FiniteSequence x;
  for (const auto& [n, v] : entries) x.set(n, v);
  return x;
}

FiniteSequence FiniteSequence::unit(std::size_t k) {
  FiniteSequence x;
  x.set(k, 1.0);
  return x;
}

double FiniteSequence::operator[](std::size_t n) const {
  auto it = entries_.find(n);
  return it == entries_.end() ? 0.0 : it->second;
}

void FiniteSequence::set(std::size_t n, double value) {
  if (!std::isfinite(value)) throw DivergedValueError("finite sequence entries must be finite");
  if (value == 0.0)
    entries_.erase(n);
  else
    entries_[n] = value;
}

std::size_t FiniteSequence::support_bound() const {
  return entries_.empty() ? 0 : entries_.rbegin()->first + 1;
}

namespace {
template <typename Op>
FiniteSequence combine(const FiniteSequence& a, const FiniteSequence& b, Op op) {
  FiniteSequence out = a;
  for (const auto& [n, v] : b.entries()) out.set(n, op(a[n], v));
  return out;
}
}  // namespace

FiniteSequence operator+(const FiniteSequence& a, const FiniteSequence& b) {
  return combine(a, b, std::plus<>());
}

FiniteSequence operator-(const FiniteSequence& a, const FiniteSequence& b) {
  return combine(a, b, std::minus<>());
}

FiniteSequence operator*(double c, const FiniteSequence& x) {
  FiniteSequence out;
  for (const auto& [n, v] : x.entries()) out.set(n, c * v);
  return out;
}

double seq_norm(const FiniteSequence& x) {
  double m = 0.0;
  for (const auto& [n, v] : x.entries()) m = std::max(m, std::abs(v));
  return m;
}

FiniteSequence apply_Tk(std::size_t k, const FiniteSequence& x) {
  FiniteSequence y;
  y.set(k, double(k) * x[k]);
  return y;
}

double norm_Tk(std::size_t k) { return double(k); }

PointwiseBound pointwise_bound(const FiniteSequence& x, std::size_t k_max) {
  const std::size_t m = x.support_bound();
  if (k_max < m)
    throw InsufficientScanError("pointwise_bound: k_max=" + std::to_string(k_max) + " is below the support bound " +
                                std::to_string(m));
  PointwiseBound out;
  for (const auto& [k, v] : x.entries()) {
    const double value = double(k) * std::abs(v);
    if (value > out.bound) {
      out.bound = value;
      out.saturating_k = k;
    }
  }
  // Every k >= m gives T_k x = 0, so the scan below m already covers all k.
  out.saturated = true;
  return out;
}

std::vector<DemoRow> ubp_violation_demo(const std::vector<std::size_t>& k_range,
                                        const std::vector<FiniteSequence>& probes) {
  if (k_range.empty()) throw DomainError("ubp_violation_demo: empty k range");
  const std::size_t k_top = *std::max_element(k_range.begin(), k_range.end());
  std::vector<double> bounds;
  for (const auto& x : probes) bounds.push_back(pointwise_bound(x, std::max(k_top, x.support_bound())).bound);

  std::vector<DemoRow> rows;
  for (std::size_t k : k_range) {
    if (probes.empty()) {
      rows.push_back({k, norm_Tk(k), std::nullopt, 0.0});
      continue;
    }
    for (std::size_t p = 0; p < probes.size(); ++p) rows.push_back({k, norm_Tk(k), p, bounds[p]});
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<DemoRow>& rows) {
  csv::write_row(os, {"k", "op_norm", "probe_id", "probe_bound"});
  for (const auto& r : rows) {
    csv::write_row(os, {std::to_string(r.k), csv::format(r.op_norm),
                        r.probe_id ? std::to_string(*r.probe_id) : std::string(),
                        r.probe_id ? csv::format(r.probe_bound) : std::string()});
  }
}

FiniteSequence harmonic_truncation(std::size_t m) {
  FiniteSequence x;
  for (std::size_t n = 0; n < m; ++n) x.set(n, 1.0 / double(n + 1));
  return x;
}

}  // namespace laxlab::ubp
