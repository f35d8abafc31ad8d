#include "laxlab/grid_space.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "laxlab/csv.hpp"

namespace laxlab {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& s, const std::string& context) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("probe '" + context + "': '" + s + "' is not a number");
  return v;
}

std::int64_t parse_int(const std::string& s, const std::string& context) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("probe '" + context + "': '" + s + "' is not an integer");
  return v;
}

}  // namespace

Probe Probe::sine(std::int64_t k, double weight) {
  return {{{ProbeTerm::Kind::sine, weight, k}}};
}
Probe Probe::cosine(std::int64_t k, double weight) {
  return {{{ProbeTerm::Kind::cosine, weight, k}}};
}
Probe Probe::random_uniform(std::uint64_t seed) {
  return {{{ProbeTerm::Kind::random_uniform, 1.0, static_cast<std::int64_t>(seed)}}};
}
Probe Probe::point_mass(std::int64_t j0) {
  return {{{ProbeTerm::Kind::point_mass, 1.0, j0}}};
}
Probe Probe::constant(double c) {
  return {{{ProbeTerm::Kind::constant, c, 0}}};
}

Probe Probe::operator+(const Probe& other) const {
  Probe out = *this;
  out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
  return out;
}

Probe Probe::parse(const std::string& text, std::uint64_t default_seed) {
  Probe out;
  if (trim(text).empty() || trim(text).back() == '+') throw ConfigError("probe '" + text + "': empty term");
  std::stringstream ss(text);
  std::string raw;
  while (std::getline(ss, raw, '+')) {
    std::string term = trim(raw);
    if (term.empty()) throw ConfigError("probe '" + text + "': empty term");
    double weight = 1.0;
    if (auto star = term.find('*'); star != std::string::npos) {
      weight = parse_double(trim(term.substr(0, star)), text);
      term = trim(term.substr(star + 1));
    }
    std::string name = term;
    std::string arg;
    if (auto colon = term.find(':'); colon != std::string::npos) {
      name = trim(term.substr(0, colon));
      arg = trim(term.substr(colon + 1));
    }
    ProbeTerm t;
    t.weight = weight;
    if (name == "sine" || name == "cosine") {
      if (arg.empty()) throw ConfigError("probe '" + text + "': " + name + " needs a wavenumber");
      t.kind = name == "sine" ? ProbeTerm::Kind::sine : ProbeTerm::Kind::cosine;
      t.parameter = parse_int(arg, text);
    } else if (name == "random") {
      t.kind = ProbeTerm::Kind::random_uniform;
      t.parameter = arg.empty() ? static_cast<std::int64_t>(default_seed) : parse_int(arg, text);
    } else if (name == "point") {
      t.kind = ProbeTerm::Kind::point_mass;
      t.parameter = arg.empty() ? 0 : parse_int(arg, text);
    } else if (name == "const") {
      t.kind = ProbeTerm::Kind::constant;
      t.weight = weight * (arg.empty() ? 1.0 : parse_double(arg, text));
    } else {
      throw ConfigError("probe '" + text + "': unknown term '" + name + "'");
    }
    out.terms.push_back(t);
  }
  if (out.terms.empty()) throw ConfigError("empty probe descriptor");
  return out;
}

std::string Probe::to_string() const {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    if (t.kind == ProbeTerm::Kind::constant) {
      out += "const:" + csv::format(t.weight);
      continue;
    }
    if (t.weight != 1.0) out += csv::format(t.weight) + "*";
    switch (t.kind) {
      case ProbeTerm::Kind::sine: out += "sine:"; break;
      case ProbeTerm::Kind::cosine: out += "cosine:"; break;
      case ProbeTerm::Kind::random_uniform: out += "random:"; break;
      case ProbeTerm::Kind::point_mass: out += "point:"; break;
      case ProbeTerm::Kind::constant: break;
    }
    out += std::to_string(t.parameter);
  }
  return out;
}

GridFunctiond sample(const Probe& f, Index n, double domain_length) {
  if (n < 2) throw InvalidGridError("sample: N must be >= 2, got " + std::to_string(n));
  Eigen::VectorXd values = Eigen::VectorXd::Zero(n);
  const double dx = domain_length / double(n);
  for (const auto& t : f.terms) {
    switch (t.kind) {
      case ProbeTerm::Kind::sine:
        for (Index j = 0; j < n; ++j) values[j] += t.weight * std::sin(double(t.parameter) * (double(j) * dx));
        break;
      case ProbeTerm::Kind::cosine:
        for (Index j = 0; j < n; ++j) values[j] += t.weight * std::cos(double(t.parameter) * (double(j) * dx));
        break;
      case ProbeTerm::Kind::random_uniform: {
        std::mt19937_64 rng(static_cast<std::uint64_t>(t.parameter));
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (Index j = 0; j < n; ++j) values[j] += t.weight * dist(rng);
        break;
      }
      case ProbeTerm::Kind::point_mass:
        values[((t.parameter % n) + n) % n] += t.weight;
        break;
      case ProbeTerm::Kind::constant:
        values.array() += t.weight;
        break;
    }
  }
  return GridFunctiond(std::move(values), domain_length);
}

SpectralCoefficients spectral_coefficients(const GridFunctiond& u) {
  const Index n = u.size();
  Eigen::VectorXcd in = u.values().cast<std::complex<double>>();
  Eigen::VectorXcd out(n);
  Eigen::FFT<double> fft;
  fft.fwd(out, in);

  SpectralCoefficients c;
  c.domain_length = u.domain_length();
  c.values.resize(n);
  for (Index k = c.k_min(); k <= c.k_max(); ++k) c.at(k) = out[((k % n) + n) % n] / double(n);
  return c;
}

GridFunctiond from_spectral(const SpectralCoefficients& c) {
  const Index n = c.size();
  if (n < 2) throw InvalidGridError("from_spectral: need at least two coefficients");
  Eigen::VectorXcd in(n);
  for (Index k = c.k_min(); k <= c.k_max(); ++k) in[((k % n) + n) % n] = c.at(k);
  Eigen::VectorXcd out(n);
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(out, in);
  return GridFunctiond(out.real(), c.domain_length);
}

bool is_band_limited(const GridFunctiond& u, double rel_tol) {
  const SpectralCoefficients c = spectral_coefficients(u);
  const double scale = c.values.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  const Index n = u.size();
  for (Index k = c.k_min(); k <= c.k_max(); ++k) {
    if (4 * std::abs(k) > n && std::abs(c.at(k)) > rel_tol * scale) return false;
  }
  return true;
}

GridFunctiond resample(const GridFunctiond& u, Index n) {
  if (n < 2) throw InvalidGridError("resample: N must be >= 2");
  if (n == u.size()) return u;
  const SpectralCoefficients src = spectral_coefficients(u);
  SpectralCoefficients dst;
  dst.domain_length = src.domain_length;
  dst.values = Eigen::VectorXcd::Zero(n);

  const bool src_unpaired_nyquist = src.size() % 2 == 0;
  for (Index k = src.k_min(); k <= src.k_max(); ++k) {
    const std::complex<double> ck = src.at(k);
    if (src_unpaired_nyquist && k == src.k_min() && n > src.size()) {
      dst.at(k) += 0.5 * ck;
      dst.at(-k) += 0.5 * ck;
    } else if (k >= dst.k_min() && k <= dst.k_max()) {
      dst.at(k) += ck;
    } else if (n % 2 == 0 && k == -dst.k_min()) {
      dst.at(dst.k_min()) += ck;
    }
  }
  return from_spectral(dst);
}

void write_csv(std::ostream& os, const GridFunctiond& u) {
  for (Index j = 0; j < u.size(); ++j) csv::write_row(os, {csv::format(u.x(j)), csv::format(u[j])});
}

}  // namespace laxlab
