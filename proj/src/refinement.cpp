#include "laxlab/refinement.hpp"

#include <algorithm>
#include <cmath>

#include "laxlab/csv.hpp"

namespace laxlab {

RefinementPath RefinementPath::power(double c, double p) {
  if (!(c > 0.0) || !(p > 0.0) || !std::isfinite(c) || !std::isfinite(p))
    throw DomainError("power refinement path needs c > 0 and p > 0");
  return RefinementPath(Power{c, p});
}

RefinementPath RefinementPath::table(std::vector<std::pair<double, double>> rows) {
  if (rows.empty()) throw DomainError("table refinement path needs at least one row");
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!(rows[i].first > 0.0) || !(rows[i].second > 0.0))
      throw DomainError("table refinement path needs positive dt and dx");
    if (i > 0 && rows[i].first == rows[i - 1].first) throw DomainError("table refinement path repeats a dt");
    if (i > 0 && rows[i].second < rows[i - 1].second)
      throw DomainError("table refinement path: dx must be nondecreasing in dt");
  }
  return RefinementPath(Table{std::move(rows)});
}

RefinementPath RefinementPath::fixed_ratio(double r) {
  if (!(r > 0.0)) throw DomainError("mesh ratio must be positive");
  return power(1.0 / std::sqrt(r), 0.5);
}

double RefinementPath::dx_for(double dt) const {
  if (!(dt > 0.0)) throw DomainError("refinement path: dt must be positive");
  if (const auto* pw = std::get_if<Power>(&rule_)) return pw->c * std::pow(dt, pw->p);
  const auto& rows = std::get<Table>(rule_).rows;
  for (const auto& [t, x] : rows) {
    if (std::abs(t - dt) <= 1e-12 * dt) return x;
  }
  throw DomainError("refinement table has no row for dt=" + csv::format(dt));
}

std::string RefinementPath::to_string() const {
  if (const auto* pw = std::get_if<Power>(&rule_))
    return "power c=" + csv::shortest(pw->c) + " p=" + csv::shortest(pw->p);
  std::string out = "table";
  for (const auto& [t, x] : std::get<Table>(rule_).rows) out += " " + csv::shortest(t) + ":" + csv::shortest(x);
  return out;
}

Index grid_size_for(double dx_target, double domain_length) {
  if (!(dx_target > 0.0)) throw DomainError("grid_size_for: spacing must be positive");
  const double exact = domain_length / dx_target;
  const auto n = static_cast<Index>(std::floor(exact * (1.0 + 1e-9)));
  if (n < 2) throw InvalidGridError("refinement spacing " + csv::format(dx_target) + " leaves fewer than 2 grid points");
  return n;
}

SchemeKind parse_scheme_kind(const std::string& name) {
  if (name == "ftcs") return SchemeKind::ftcs;
  if (name == "backward_euler") return SchemeKind::backward_euler;
  throw ConfigError("unknown scheme '" + name + "' (expected ftcs or backward_euler)");
}

std::string to_string(SchemeKind kind) {
  return kind == SchemeKind::ftcs ? "ftcs" : "backward_euler";
}

SweepCell SchemeFamily::cell(double dt) const {
  const Index n = grid_size_for(path.dx_for(dt), domain_length);
  const double dx = domain_length / double(n);
  if (kind == SchemeKind::ftcs) return {dt, dx, n, ftcs_heat(dt, dx, n)};
  return {dt, dx, n, backward_euler_heat(dt, dx, n)};
}

}  // namespace laxlab
