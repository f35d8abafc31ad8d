#include "laxlab/csv.hpp"

#include <charconv>
#include <cmath>

namespace laxlab::csv {

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, end);
}

std::string shortest(double value) {
  if (!std::isfinite(value)) return format(value);
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, end);
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

void write_row(std::ostream& os, std::initializer_list<std::string_view> fields) {
  bool first = true;
  for (auto f : fields) {
    if (!first) os << ',';
    os << f;
    first = false;
  }
  os << '\n';
}

}  // namespace laxlab::csv
