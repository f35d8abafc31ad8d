#include "doctest.h"

#include <random>
#include <sstream>

#include "laxlab/semigroup.hpp"
#include "oracles.hpp"

using namespace laxlab;

namespace {

// Exact E(t) on a band-limited trigonometric polynomial: each term decays by
// exp(-k^2 t).
GridFunctiond decayed(const Probe& f, Index n, double t) {
  Probe out;
  for (auto term : f.terms) {
    term.weight *= std::exp(-double(term.parameter * term.parameter) * t);
    out.terms.push_back(term);
  }
  return sample(out, n);
}

}  // namespace

TEST_CASE("evolve examples") {
  const HeatSemigroup sg(1.0, 64);
  const GridFunctiond s1 = sample(Probe::sine(1), 64);
  CHECK(sup_norm(evolve(sg, s1, 1.0) - std::exp(-1.0) * s1) <= 1e-14);

  std::mt19937_64 rng(1);
  const GridFunctiond u(oracle::random_vector(rng, 64));
  CHECK(evolve(sg, u, 0.0).values() == u.values());

  const GridFunctiond pm = sample(Probe::point_mass(0), 64);
  CHECK(sup_norm(evolve(sg, pm, 0.1) - evolve(sg, evolve(sg, pm, 0.05), 0.05)) < 1e-10);
}

TEST_CASE("evolve matches closed-form decay of trigonometric polynomials") {
  const Probe f = Probe::sine(2) + Probe::cosine(5, 0.3) + Probe::constant(0.7);
  const HeatSemigroup sg(1.0, 32);
  for (double t : {0.01, 0.2, 0.9}) CHECK(sup_norm(evolve(sg, sample(f, 32), t) - decayed(f, 32, t)) <= 1e-14);
}

TEST_CASE("evolve validates its inputs") {
  const HeatSemigroup sg(1.0, 16);
  CHECK_THROWS_AS(evolve(sg, sample(Probe::sine(1), 8), 0.1), InvalidGridError);
  CHECK_THROWS_AS(evolve(sg, sample(Probe::sine(1), 16), -0.1), DomainError);
  CHECK_THROWS_AS(HeatSemigroup(1.0, 16, 0.5), DomainError);
  CHECK_THROWS_AS(HeatSemigroup(0.0, 16), DomainError);
}

TEST_CASE("extend_evolve examples") {
  const HeatSemigroup sg(1.0, 32);
  const GridFunctiond s1 = sample(Probe::sine(1), 32);
  CHECK(sup_norm(extend_evolve(sg, s1, 2.5) - std::exp(-2.5) * s1) <= 1e-10);

  CHECK(whole_horizons(1.0 + 1e-9, 1.0) == 1);
  CHECK(whole_horizons(2.5, 1.0) == 2);
  CHECK(whole_horizons(2.0, 0.7) == 2);
  CHECK(sup_norm(extend_evolve(sg, s1, 1.0 + 1e-9) - evolve(sg, s1, 1.0 + 1e-9)) <= 1e-12);

  const HeatSemigroup sg7(0.7, 32);
  const GridFunctiond r = sample(Probe::random_uniform(7), 32);
  CHECK(sup_norm(extend_evolve(sg7, r, 2.0) - evolve(sg7, r, 2.0)) <= 1e-10);

  CHECK_THROWS_AS(extend_evolve(sg, s1, 1.0), DomainError);
  CHECK_THROWS_AS(extend_evolve(sg, s1, 0.5), DomainError);
}

TEST_CASE("properly posed check") {
  const HeatSemigroup sg(1.0, 32);
  const auto rep = properly_posed_check(sg, {0.0, 0.5, 1.0},
                                        {sample(Probe::sine(1), 32), sample(Probe::sine(3), 32)});
  CHECK(rep.max_ratio == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rep.pass);
  CHECK(rep.rows.size() == 6);

  const auto constant = properly_posed_check(sg, {0.3}, {sample(Probe::constant(1.0), 32)});
  CHECK(constant.max_ratio == doctest::Approx(1.0).epsilon(1e-15));

  // Enumeration over 20 random probes and random t.
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> tdist(0.0, 1.0);
  std::vector<GridFunctiond> probes;
  for (int i = 0; i < 20; ++i) probes.push_back(GridFunctiond(oracle::random_vector(rng, 32)));
  std::vector<double> ts;
  for (int i = 0; i < 10; ++i) ts.push_back(tdist(rng));
  const auto random_rep = properly_posed_check(sg, ts, probes);
  CHECK(random_rep.max_ratio <= 1.0 + 1e-12);
  CHECK(random_rep.pass);

  CHECK_THROWS_AS(properly_posed_check(sg, {0.1}, {GridFunctiond::zero(32)}), InvalidProbeError);
  CHECK_THROWS_AS(properly_posed_check(sg, {1.5}, probes), DomainError);
  CHECK_THROWS_AS(properly_posed_check(sg, {0.1}, {}), InvalidProbeError);

  std::ostringstream os;
  write_csv(os, rep);
  CHECK(os.str().rfind("t,probe_id,ratio\n0,0,1\n", 0) == 0);
}

TEST_CASE("exact solution residual") {
  const HeatSemigroup sg(1.0, 32);
  const GridFunctiond s1 = sample(Probe::sine(1), 32);
  const auto r = exact_solution_residual(sg, s1, 0.0, {1e-3, 5e-4});
  // Closed form |(e^{-dt} - 1)/dt + 1| * ||sin||.
  const double closed = std::abs(std::expm1(-1e-3) / 1e-3 + 1.0) * sup_norm(s1);
  CHECK(r[0] == doctest::Approx(closed).epsilon(1e-9));
  CHECK(r[0] <= 1e-3 * sup_norm(s1));
  CHECK(r[0] / r[1] == doctest::Approx(2.0).epsilon(0.1));

  const auto c = exact_solution_residual(sg, sample(Probe::constant(1.0), 32), 0.3, {1e-2, 1e-3});
  CHECK(c[0] <= 1e-15);
  CHECK(c[1] <= 1e-15);

  CHECK_THROWS_AS(exact_solution_residual(sg, sample(Probe::random_uniform(1), 32), 0.0, {1e-3}),
                  InvalidProbeError);
}

TEST_CASE("property: semigroup law, strong continuity, contraction") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const HeatSemigroup sg(1.0, 48);
  for (int trial = 0; trial < 50; ++trial) {
    const GridFunctiond u(oracle::random_vector(rng, 48));
    const double t = unit(rng);
    const double s = unit(rng) * (1.0 - t);
    CHECK(sup_norm(evolve(sg, evolve(sg, u, s), t) - evolve(sg, u, t + s)) <= 1e-10 * sup_norm(u));
    CHECK(sup_norm(evolve(sg, u, t)) <= sup_norm(u) * (1.0 + 1e-12));
    const double late = 1.0 + 2.0 * unit(rng) + 1e-6;
    CHECK(sup_norm(extend_evolve(sg, u, late)) <= sup_norm(u) * (1.0 + 1e-12));
  }

  const GridFunctiond u = sample(Probe::random_uniform(4), 48);
  double previous = std::numeric_limits<double>::infinity();
  for (double dt : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double d = sup_norm(evolve(sg, u, dt) - u);
    CHECK(d < previous);
    previous = d;
  }
  CHECK(previous < 1e-3);
}
