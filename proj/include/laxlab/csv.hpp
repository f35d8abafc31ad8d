#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace laxlab::csv {

/// Decimal for a double with 17 significant digits, '.' separator,
/// independent of the global locale. Infinities print as "inf"/"-inf".
std::string format(double value);

/// Shortest decimal that reads back to the same double, for labels.
std::string shortest(double value);

/// Writes `fields` joined by ',' and terminated by '\n'.
void write_row(std::ostream& os, const std::vector<std::string>& fields);
void write_row(std::ostream& os, std::initializer_list<std::string_view> fields);

}  // namespace laxlab::csv
