#include "laxlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace laxlab {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

class Located {
 public:
  Located(std::string source, int line) : prefix_(std::move(source) + ":" + std::to_string(line) + ": ") {}
  [[noreturn]] void fail(const std::string& message) const { throw ConfigError(prefix_ + message); }

  double real(const std::string& key, const std::string& text) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
      fail("key '" + key + "': '" + text + "' is not a number");
    return v;
  }
  double positive(const std::string& key, const std::string& text) const {
    const double v = real(key, text);
    if (!(v > 0.0)) fail("key '" + key + "' must be positive");
    return v;
  }
  long long integer(const std::string& key, const std::string& text) const {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
      fail("key '" + key + "': '" + text + "' is not an integer");
    return v;
  }

 private:
  std::string prefix_;
};

const std::map<ExperimentKind, std::set<std::string>>& allowed_keys() {
  static const std::set<std::string> sweep{"kind", "scheme", "r", "path", "dt", "grid_N", "seed"};
  auto with = [](std::set<std::string> base, std::initializer_list<const char*> extra) {
    for (auto e : extra) base.insert(e);
    return base;
  };
  static const std::map<ExperimentKind, std::set<std::string>> keys{
      {ExperimentKind::stability, with(sweep, {"T", "threshold"})},
      {ExperimentKind::consistency, with(sweep, {"T", "probe", "ts"})},
      {ExperimentKind::convergence, with(sweep, {"T", "probe", "tolerance", "threshold"})},
      {ExperimentKind::roundoff, with(sweep, {"T", "probe", "bits"})},
      {ExperimentKind::ubp_demo, {"kind", "k_min", "k_max", "probes", "seed"}},
  };
  return keys;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> all = [] {
    std::set<std::string> s;
    for (const auto& [kind, keys] : allowed_keys()) s.insert(keys.begin(), keys.end());
    return s;
  }();
  return all;
}

ExperimentKind parse_kind(const Located& at, const std::string& text) {
  if (text == "stability") return ExperimentKind::stability;
  if (text == "consistency") return ExperimentKind::consistency;
  if (text == "convergence") return ExperimentKind::convergence;
  if (text == "roundoff") return ExperimentKind::roundoff;
  if (text == "ubp_demo") return ExperimentKind::ubp_demo;
  at.fail("unknown experiment kind '" + text + "'");
}

RefinementPath parse_path(const Located& at, const std::string& text) {
  std::stringstream ss(text);
  std::string rule;
  ss >> rule;
  try {
    if (rule == "power") {
      std::string c, p, extra;
      if (!(ss >> c >> p) || (ss >> extra)) at.fail("path 'power' expects two numbers: power <c> <p>");
      return RefinementPath::power(at.real("path", c), at.real("path", p));
    }
    if (rule == "table") {
      std::vector<std::pair<double, double>> rows;
      std::string pair;
      while (ss >> pair) {
        const auto colon = pair.find(':');
        if (colon == std::string::npos) at.fail("path table entries are dt:dx pairs, got '" + pair + "'");
        rows.emplace_back(at.real("path", pair.substr(0, colon)), at.real("path", pair.substr(colon + 1)));
      }
      return RefinementPath::table(std::move(rows));
    }
  } catch (const DomainError& e) {
    at.fail(e.what());
  }
  at.fail("path must start with 'power' or 'table'");
}

struct Section {
  ExperimentConfig config;
  std::map<std::string, std::pair<std::string, int>> values;  // key -> (value, line)
};

ExperimentConfig finish(const Section& section, const std::string& source) {
  ExperimentConfig cfg = section.config;
  const Located header(source, cfg.line);
  auto kind_it = section.values.find("kind");
  if (kind_it == section.values.end()) header.fail("section [" + cfg.name + "] has no 'kind'");
  cfg.kind = parse_kind(Located(source, kind_it->second.second), kind_it->second.first);

  const auto& allowed = allowed_keys().at(cfg.kind);
  for (const auto& [key, entry] : section.values) {
    if (!allowed.count(key))
      Located(source, entry.second).fail("key '" + key + "' is not used by kind " + to_string(cfg.kind));
  }

  for (const auto& [key, entry] : section.values) {
    const Located at(source, entry.second);
    const std::string& v = entry.first;
    if (key == "kind") continue;
    if (key == "scheme") {
      try {
        cfg.scheme = parse_scheme_kind(v);
      } catch (const ConfigError& e) {
        at.fail(e.what());
      }
    } else if (key == "r") {
      cfg.ratio = at.positive(key, v);
    } else if (key == "path") {
      cfg.path = parse_path(at, v);
    } else if (key == "dt") {
      for (const auto& item : split(v, ',')) cfg.dts.push_back(at.positive(key, item));
    } else if (key == "grid_N") {
      for (const auto& item : split(v, ',')) {
        const long long n = at.integer(key, item);
        if (n < 3) at.fail("grid_N entries must be >= 3");
        cfg.grid_ns.push_back(n);
      }
    } else if (key == "probe") {
      try {
        Probe::parse(v);
      } catch (const ConfigError& e) {
        at.fail(e.what());
      }
      cfg.probe = v;
    } else if (key == "T") {
      cfg.horizon = at.positive(key, v);
    } else if (key == "bits") {
      for (const auto& item : split(v, ',')) {
        const long long b = at.integer(key, item);
        if (b < 4 || b > 52) at.fail("bits entries must lie in [4, 52]");
        cfg.bits.push_back(int(b));
      }
    } else if (key == "tolerance") {
      cfg.tolerance = at.positive(key, v);
    } else if (key == "threshold") {
      cfg.threshold = at.positive(key, v);
    } else if (key == "ts") {
      cfg.ts.clear();
      for (const auto& item : split(v, ',')) {
        const double t = at.real(key, item);
        if (t < 0.0) at.fail("ts entries must be nonnegative");
        cfg.ts.push_back(t);
      }
    } else if (key == "seed") {
      const long long s = at.integer(key, v);
      if (s < 0) at.fail("seed must be nonnegative");
      cfg.seed = std::uint64_t(s);
    } else if (key == "k_min") {
      const long long k = at.integer(key, v);
      if (k < 0) at.fail("k_min must be nonnegative");
      cfg.k_min = std::size_t(k);
    } else if (key == "k_max") {
      const long long k = at.integer(key, v);
      if (k < 0) at.fail("k_max must be nonnegative");
      cfg.k_max = std::size_t(k);
    } else if (key == "probes") {
      try {
        for (const auto& item : split(v, ';'))
          if (!item.empty()) cfg.probes.push_back(parse_sequence(item));
      } catch (const Error& e) {
        at.fail(e.what());
      }
    }
  }

  if (cfg.kind == ExperimentKind::ubp_demo) {
    if (cfg.k_max < cfg.k_min) header.fail("k_max must be >= k_min");
    return cfg;
  }
  if (!section.values.count("scheme")) header.fail("section [" + cfg.name + "] needs 'scheme'");
  if (cfg.ratio.has_value() == cfg.path.has_value())
    header.fail("section [" + cfg.name + "] needs exactly one of 'r' or 'path'");
  if (cfg.dts.empty() == cfg.grid_ns.empty())
    header.fail("section [" + cfg.name + "] needs exactly one of 'dt' or 'grid_N'");
  if (!cfg.grid_ns.empty() && cfg.path && std::holds_alternative<RefinementPath::Table>(cfg.path->rule()))
    header.fail("grid_N cannot be combined with a table path; list dt values instead");
  if (cfg.kind == ExperimentKind::roundoff && cfg.bits.empty())
    header.fail("section [" + cfg.name + "] needs 'bits'");
  std::vector<double> dts;
  try {
    Probe::parse(cfg.probe, cfg.seed);
    dts = cfg.sweep_dts();
    for (double dt : dts) cfg.refinement_path().dx_for(dt);
  } catch (const ConfigError& e) {
    header.fail(e.what());
  } catch (const DomainError& e) {
    header.fail(e.what());
  }
  for (double dt : dts)
    if (dt > cfg.horizon) header.fail("dt " + std::to_string(dt) + " exceeds T");
  return cfg;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::stability: return "stability";
    case ExperimentKind::consistency: return "consistency";
    case ExperimentKind::convergence: return "convergence";
    case ExperimentKind::roundoff: return "roundoff";
    case ExperimentKind::ubp_demo: return "ubp_demo";
  }
  return "unknown";
}

RefinementPath ExperimentConfig::refinement_path() const {
  if (path) return *path;
  return RefinementPath::fixed_ratio(ratio.value_or(0.5));
}

std::vector<double> ExperimentConfig::sweep_dts() const {
  if (!dts.empty()) return dts;
  std::vector<double> out;
  for (long long n : grid_ns) {
    const double dx = kTwoPi<double> / double(n);
    if (ratio) {
      out.push_back(*ratio * dx * dx);
    } else {
      const auto& pw = std::get<RefinementPath::Power>(path->rule());
      out.push_back(std::pow(dx / pw.c, 1.0 / pw.p));
    }
  }
  return out;
}

ubp::FiniteSequence parse_sequence(const std::string& text) {
  const auto items = split(text, ',');
  const bool sparse = text.find(':') != std::string::npos;
  ubp::FiniteSequence x;
  std::size_t n = 0;
  for (const auto& item : items) {
    std::string value = item;
    std::size_t index = n++;
    if (sparse) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw ConfigError("sequence '" + text + "': mixed dense and sparse entries");
      const std::string idx = trim(item.substr(0, colon));
      long long k = -1;
      auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), k);
      if (ec != std::errc() || p != idx.data() + idx.size() || k < 0)
        throw ConfigError("sequence '" + text + "': bad index '" + idx + "'");
      index = std::size_t(k);
      value = trim(item.substr(colon + 1));
    }
    double v = 0.0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || p != value.data() + value.size() || !std::isfinite(v))
      throw ConfigError("sequence '" + text + "': bad value '" + value + "'");
    x.set(index, v);
  }
  return x;
}

std::vector<ExperimentConfig> parse_config(std::istream& in, const std::string& source) {
  std::vector<Section> sections;
  std::set<std::string> names;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const Located at(source, line_no);
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') at.fail("malformed section header '" + line + "'");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) at.fail("empty section name");
      for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
          at.fail("section names may contain letters, digits, '_' and '-' only");
      if (!names.insert(name).second) at.fail("duplicate section [" + name + "]");
      Section s;
      s.config.name = name;
      s.config.line = line_no;
      sections.push_back(std::move(s));
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) at.fail("expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!known_keys().count(key)) at.fail("unknown key '" + key + "'");
    if (sections.empty()) at.fail("key '" + key + "' appears before any [section]");
    if (value.empty()) at.fail("key '" + key + "' has no value");
    if (!sections.back().values.emplace(key, std::make_pair(value, line_no)).second)
      at.fail("repeated key '" + key + "'");
  }
  if (sections.empty()) throw ConfigError(source + ": no [section] found");

  std::vector<ExperimentConfig> out;
  for (const auto& s : sections) out.push_back(finish(s, source));
  return out;
}

std::vector<ExperimentConfig> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  return parse_config(in, path);
}

}  // namespace laxlab
