#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "laxlab/grid_space.hpp"
#include "laxlab/schemes.hpp"

namespace laxlab {

/// The relation dx = alpha(dt) along which a refinement sweep moves.
class RefinementPath {
 public:
  /// dx = c * dt^p, c > 0, p > 0.
  struct Power {
    double c = 1.0;
    double p = 0.5;
  };
  /// Explicit (dt, dx) rows; dx must be nondecreasing in dt.
  struct Table {
    std::vector<std::pair<double, double>> rows;
  };

  static RefinementPath power(double c, double p);
  static RefinementPath table(std::vector<std::pair<double, double>> rows);
  /// Power path with constant mesh ratio r = dt / dx^2, i.e. dx = sqrt(dt / r).
  static RefinementPath fixed_ratio(double r);

  /// alpha(dt). Table paths only answer for their listed dt values.
  double dx_for(double dt) const;
  std::string to_string() const;
  const std::variant<Power, Table>& rule() const { return rule_; }

 private:
  explicit RefinementPath(std::variant<Power, Table> rule) : rule_(std::move(rule)) {}
  std::variant<Power, Table> rule_;
};

/// Periodic grid size realizing a target spacing: the largest N with
/// L / N >= dx_target (within 1e-9 relative), so the realized dx never
/// falls below alpha(dt).
Index grid_size_for(double dx_target, double domain_length = kTwoPi<double>);

enum class SchemeKind { ftcs, backward_euler };

SchemeKind parse_scheme_kind(const std::string& name);
std::string to_string(SchemeKind kind);

/// One resolved sweep cell: a step size, its grid, and the scheme on it.
struct SweepCell {
  double dt = 0.0;
  double dx = 0.0;
  Index grid_n = 0;
  StencilSchemed scheme;
};

/// dt -> scheme along a refinement path on a fixed-length periodic domain.
struct SchemeFamily {
  SchemeKind kind = SchemeKind::ftcs;
  RefinementPath path = RefinementPath::fixed_ratio(0.5);
  double domain_length = kTwoPi<double>;

  SweepCell cell(double dt) const;
};

}  // namespace laxlab
