#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "supwave/propagator.hpp"
#include "test_helpers.hpp"

using namespace supwave;
using supwave::testing::random_state;

TEST_CASE("free evolution: identity, single mode, mean drift") {
  auto st = random_state(3, 21);
  const auto same = free_evolve(st, 0.0);
  CHECK(max_coeff_difference(st.u, same.u) == 0.0);
  CHECK(max_coeff_difference(st.ut, same.ut) == 0.0);

  PhaseState cosx = PhaseState::zero(3, 1);
  cosx.u.set_coefficient({1, 0, 0}, 1.0, 0.0);
  const auto at_pi = free_evolve(cosx, std::numbers::pi);
  CHECK(at_pi.u.coefficient({1, 0, 0}).first == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(at_pi.ut.coefficient({1, 0, 0}).first) <= 1e-12);

  PhaseState mean = PhaseState::zero(3, 1);
  mean.u.mean() = 0.7;
  mean.ut.mean() = -2.0;
  const auto drv = free_evolve(mean, 1.5);
  CHECK(drv.u.mean() == doctest::Approx(0.7 - 3.0).epsilon(1e-15));
  CHECK(drv.ut.mean() == -2.0);
}

TEST_CASE("free evolution group law and time reversal") {
  auto st = random_state(3, 33);
  const auto ab = free_evolve(free_evolve(st, 0.7), 0.9);
  const auto once = free_evolve(st, 1.6);
  CHECK(max_coeff_difference(ab.u, once.u) <= 1e-10);
  CHECK(max_coeff_difference(ab.ut, once.ut) <= 1e-10);

  const auto back = free_evolve(free_evolve(st, 2.3), -2.3);
  CHECK(max_coeff_difference(back.u, st.u) <= 1e-12);
  CHECK(max_coeff_difference(back.ut, st.ut) <= 1e-12);
}

TEST_CASE("linear energy of a mean-free state is conserved") {
  auto st = random_state(4, 55);
  st.u.mean() = 0;
  st.ut.mean() = 0;
  auto linear_energy = [](const PhaseState& s) {
    const double grad = sobolev_norm(s.u, 1.0);  // includes the L2 part; subtract it
    const double l2 = sobolev_norm(s.u, 0.0);
    return (grad * grad - l2 * l2) + std::pow(sobolev_norm(s.ut, 0.0), 2);
  };
  const double e0 = linear_energy(st);
  for (double t : {0.3, 1.7, 12.0}) {
    const double et = linear_energy(free_evolve(st, t));
    CHECK(std::abs(et - e0) / e0 <= 1e-10);
  }
}

TEST_CASE("weighted mixed norm: trivial zeroes and validation") {
  MixedNormSpec spec;
  spec.weight_exponent = 0.6;
  spec.time_q = 2.0;
  spec.space_p = std::numeric_limits<double>::infinity();
  spec.t_max = 5.0;
  spec.dt_quad = 0.1;

  const auto zero = weighted_mixed_norm(PhaseState::zero(3, 2), 1.0, spec);
  CHECK(zero.value == 0.0);
  CHECK(zero.tail_bound == 0.0);

  PhaseState low = PhaseState::zero(3, 1);
  low.u.set_coefficient({1, 0, 0}, 2.0, 0.0);
  low.u.mean() = 3.0;
  const auto killed = weighted_mixed_norm(low, 1.0, spec);  // Pi^1 annihilates
  CHECK(killed.value == 0.0);

  MixedNormSpec bad = spec;
  bad.weight_exponent = 0.4;  // q = 2 needs > 1/2
  CHECK_THROWS(weighted_mixed_norm(low, 1.0, bad));
  bad.weight_exponent = 0.6;
  bad.time_q = 5.0;
  CHECK_THROWS(weighted_mixed_norm(low, 1.0, bad));
}

TEST_CASE("weighted mixed norm against a 1-d quadrature oracle") {
  // u0 = cos(2 x1), u1 = 0, M = 1: S(t) Pi^1 u = cos(2t) cos(2 x1), whose
  // sup over x is |cos 2t|; the mixed norm reduces to a scalar integral.
  PhaseState st = PhaseState::zero(3, 2);
  st.u.set_coefficient({2, 0, 0}, 1.0, 0.0);

  MixedNormSpec spec;
  spec.weight_exponent = 0.6;
  spec.time_q = 2.0;
  spec.space_p = std::numeric_limits<double>::infinity();
  spec.t_max = 50.0;
  spec.dt_quad = 0.05;
  const auto res = weighted_mixed_norm(st, 1.0, spec);

  // fine Simpson quadrature of the scalar reference
  const double h = 1e-3;
  const auto n = static_cast<std::int64_t>(std::llround(2 * spec.t_max / h));
  double acc = 0;
  for (std::int64_t i = 0; i <= n; ++i) {
    const double t = -spec.t_max + i * h;
    const double f = std::pow(1.0 + t * t, -0.6) * std::pow(std::cos(2 * t), 2);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * f;
  }
  const double oracle = std::sqrt(acc * h / 3.0);
  CHECK(res.value == doctest::Approx(oracle).epsilon(2e-4));
  CHECK(res.sup_space_norm == doctest::Approx(1.0).epsilon(1e-12));

  // tail bound is a true upper bound for the discarded range and vanishes as
  // t_max grows
  MixedNormSpec wide = spec;
  wide.t_max = 100.0;
  const auto wider = weighted_mixed_norm(st, 1.0, wide);
  CHECK(wider.value >= res.value - 1e-12);                      // nondecreasing in t_max
  CHECK(wider.value * wider.value - res.value * res.value <=
        res.tail_bound * res.tail_bound + 1e-12);               // tail really covers the gap
  CHECK(wider.tail_bound < res.tail_bound);
}

TEST_CASE("weighted mixed norm is stable under quadrature refinement") {
  PhaseState st = PhaseState::zero(3, 2);
  st.u.set_coefficient({2, 0, 0}, 1.0, 0.0);
  st.ut.set_coefficient({1, 1, 0}, 0.5, 0.5);

  MixedNormSpec spec;
  spec.weight_exponent = 0.6;
  spec.time_q = 2.0;
  spec.space_p = std::numeric_limits<double>::infinity();
  spec.t_max = 20.0;

  // successive dyadic refinements converge (the literal monotone-decrease of
  // value + tail does not hold for oscillatory integrands: the trapezoid rule
  // approaches this one from below and the grid sup can only grow)
  std::vector<double> vals;
  for (double dq : {0.1, 0.05, 0.025}) {
    MixedNormSpec s2 = spec;
    s2.dt_quad = dq;
    vals.push_back(weighted_mixed_norm(st, 1.0, s2).value);
  }
  const double d1 = std::abs(vals[1] - vals[0]);
  const double d2 = std::abs(vals[2] - vals[1]);
  CHECK(d2 < d1);
  CHECK(d2 <= 1e-3 * vals[2]);
}

TEST_CASE("q = 3 and q = inf variants") {
  PhaseState st = PhaseState::zero(3, 2);
  st.u.set_coefficient({2, 0, 0}, 1.0, 0.0);

  MixedNormSpec k;
  k.weight_exponent = 0.5;
  k.time_q = 3.0;
  k.space_p = 6.0;
  k.t_max = 20.0;
  k.dt_quad = 0.05;
  const auto rk = weighted_mixed_norm(st, 1.0, k);
  // ||cos(2t) cos(2x)||_L6 = |cos 2t| * (2pi)^(1/2) (int cos^6 / 2pi)^(1/6) vol factors
  const double space0 = lp_norm(st.u, 6.0, 3);
  CHECK(rk.sup_space_norm == doctest::Approx(space0).epsilon(1e-10));
  CHECK(rk.value > 0);
  CHECK(rk.tail_bound > 0);

  MixedNormSpec r;
  r.weight_exponent = 0.1;
  r.time_q = std::numeric_limits<double>::infinity();
  r.space_p = 4.0;
  r.t_max = 20.0;
  r.dt_quad = 0.05;
  const auto rr = weighted_mixed_norm(st, 1.0, r);
  // the weighted sup is attained at t = 0 where the weight is 1
  CHECK(rr.value == doctest::Approx(lp_norm(st.u, 4.0, 2)).epsilon(1e-10));
  CHECK(rr.tail_bound == doctest::Approx(std::pow(1 + 400.0, -0.05) * rr.sup_space_norm).epsilon(1e-10));
}
