#include "doctest.h"

#include <random>
#include <sstream>

#include "laxlab/grid_space.hpp"
#include "oracles.hpp"

using namespace laxlab;

TEST_CASE("sup_norm examples") {
  CHECK(sup_norm(GridFunctiond::zero(8)) == 0.0);

  Eigen::VectorXd v(3);
  v << 1.0, -3.0, 2.0;
  CHECK(sup_norm(GridFunctiond(v)) == 3.0);

  // Enumeration oracle: max_j |sin(2 pi j / 64)|.
  const GridFunctiond s = sample(Probe::sine(1), 64);
  double expected = 0.0;
  for (int j = 0; j < 64; ++j) expected = std::max(expected, std::abs(std::sin(2.0 * M_PI * j / 64.0)));
  CHECK(sup_norm(s) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("sup_norm rejects non-finite samples") {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(4);
  v[2] = std::numeric_limits<double>::infinity();
  const GridFunctiond u(v);
  CHECK(u.diverged());
  CHECK_THROWS_AS(sup_norm(u), DivergedValueError);
}

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(GridFunctiond(Eigen::VectorXd::Zero(1)), InvalidGridError);
  CHECK_THROWS_AS(sample(Probe::sine(1), 1), InvalidGridError);
  const GridFunctiond u = sample(Probe::sine(1), 10);
  CHECK(std::abs(u.dx() * 10 - u.domain_length()) <= 1e-12 * u.domain_length());
  CHECK_THROWS_AS(u + sample(Probe::sine(1), 12), InvalidGridError);
}

TEST_CASE("sample descriptors") {
  const GridFunctiond s = sample(Probe::sine(1), 4);
  const double expected[] = {0.0, 1.0, 0.0, -1.0};
  for (int j = 0; j < 4; ++j) CHECK(std::abs(s[j] - expected[j]) <= 1e-15);

  const GridFunctiond p = sample(Probe::point_mass(0), 4);
  CHECK(p.values() == Eigen::Vector4d(1, 0, 0, 0));

  const GridFunctiond r1 = sample(Probe::random_uniform(42), 8);
  const GridFunctiond r2 = sample(Probe::random_uniform(42), 8);
  CHECK(r1.values() == r2.values());
  CHECK(r1.values() != sample(Probe::random_uniform(43), 8).values());
  CHECK(r1.values().cwiseAbs().maxCoeff() <= 1.0);
}

TEST_CASE("probe descriptors parse") {
  const Probe p = Probe::parse("sine:1 + 0.5*cosine:3 + random:7 + point:2 + const:2");
  REQUIRE(p.terms.size() == 5);
  CHECK(p.terms[1].weight == 0.5);
  CHECK(p.terms[2].parameter == 7);
  CHECK(p.terms[4].weight == 2.0);
  CHECK(Probe::parse("random", 99).terms[0].parameter == 99);
  CHECK(Probe::parse(p.to_string()).to_string() == p.to_string());
  CHECK_THROWS_AS(Probe::parse("sinus:1"), ConfigError);
  CHECK_THROWS_AS(Probe::parse("sine"), ConfigError);
  CHECK_THROWS_AS(Probe::parse("sine:1 +"), ConfigError);
}

TEST_CASE("spectral coefficients examples") {
  const SpectralCoefficients s = spectral_coefficients(sample(Probe::sine(1), 8));
  CHECK(s.k_min() == -4);
  CHECK(s.k_max() == 3);
  for (Index k = s.k_min(); k <= s.k_max(); ++k) {
    std::complex<double> expected = 0.0;
    if (k == 1) expected = {0.0, -0.5};
    if (k == -1) expected = {0.0, 0.5};
    CHECK(std::abs(s.at(k) - expected) <= 1e-12);
  }

  const SpectralCoefficients c = spectral_coefficients(sample(Probe::constant(1.0), 6));
  for (Index k = c.k_min(); k <= c.k_max(); ++k) CHECK(std::abs(c.at(k) - (k == 0 ? 1.0 : 0.0)) <= 1e-12);

  // Direct DFT oracle for the point mass.
  const GridFunctiond pm = sample(Probe::point_mass(0), 4);
  const SpectralCoefficients d = spectral_coefficients(pm);
  for (Index k = d.k_min(); k <= d.k_max(); ++k) {
    CHECK(std::abs(oracle::dft_coefficient(pm.values(), k) - 0.25) <= 1e-15);
    CHECK(std::abs(d.at(k) - 0.25) <= 1e-12);
  }
}

TEST_CASE("spectral coefficients match the direct DFT on random data") {
  std::mt19937_64 rng(5);
  for (Index n : {5, 7, 16, 33}) {
    const GridFunctiond u(oracle::random_vector(rng, n));
    const SpectralCoefficients c = spectral_coefficients(u);
    for (Index k = c.k_min(); k <= c.k_max(); ++k)
      CHECK(std::abs(c.at(k) - oracle::dft_coefficient(u.values(), k)) <= 1e-13);
  }
}

TEST_CASE("property: norm axioms on random grid functions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> scalar(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + Index(rng() % 40);
    const GridFunctiond u(oracle::random_vector(rng, n, 3.0));
    const GridFunctiond v(oracle::random_vector(rng, n, 3.0));
    const double c = scalar(rng);
    CHECK(sup_norm(u) >= 0.0);
    CHECK(sup_norm(c * u) == doctest::Approx(std::abs(c) * sup_norm(u)).epsilon(1e-15));
    CHECK(sup_norm(u + v) <= sup_norm(u) + sup_norm(v) + 1e-15);
    CHECK(sup_norm(u - u) == 0.0);
  }
}

TEST_CASE("property: spectral round trip is the identity") {
  std::mt19937_64 rng(3);
  for (Index n : {4, 8, 16, 64}) {
    for (int trial = 0; trial < 20; ++trial) {
      const GridFunctiond u(oracle::random_vector(rng, n));
      const GridFunctiond back = from_spectral(spectral_coefficients(u));
      CHECK(sup_norm(back - u) <= 1e-12 * sup_norm(u));
    }
  }
}

TEST_CASE("band limit and resampling") {
  CHECK(is_band_limited(sample(Probe::sine(31), 128)));
  CHECK_FALSE(is_band_limited(sample(Probe::sine(40), 128)));
  CHECK_FALSE(is_band_limited(sample(Probe::random_uniform(1), 32)));

  // Band-limited data resamples exactly onto coarser and finer grids, odd or even.
  const Probe f = Probe::sine(1) + Probe::cosine(3, 0.5) + Probe::sine(7, 0.25);
  const GridFunctiond u = sample(f, 40);
  for (Index n : {33, 40, 64, 177}) CHECK(sup_norm(resample(u, n) - sample(f, n)) <= 1e-13);

  // An even-grid Nyquist mode is split symmetrically when upsampling.
  const GridFunctiond nyq = sample(Probe::cosine(4), 8);
  CHECK(sup_norm(resample(nyq, 17) - sample(Probe::cosine(4), 17)) <= 1e-13);
}

TEST_CASE("grid function CSV rows") {
  Eigen::VectorXd v(2);
  v << 0.1, -2.0;
  std::ostringstream os;
  write_csv(os, GridFunctiond(v));
  CHECK(os.str() == "0,0.10000000000000001\n3.1415926535897931,-2\n");
}

TEST_CASE("cyclic shift") {
  Eigen::VectorXd v(4);
  v << 1, 2, 3, 4;
  CHECK(cyclic_shift(GridFunctiond(v), 1).values() == Eigen::Vector4d(2, 3, 4, 1));
  CHECK(cyclic_shift(GridFunctiond(v), -1).values() == Eigen::Vector4d(4, 1, 2, 3));
}
