#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "supwave/field.hpp"
#include "supwave/snapshot.hpp"
#include "supwave/transform.hpp"

using namespace supwave;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

FourierField single_mode(int dim, int cutoff, std::vector<int> n, double b, double c = 0.0) {
  FourierField f(dim, cutoff);
  f.set_coefficient(n, b, c);
  return f;
}

FourierField random_field(int cutoff, std::uint64_t seed, double decay = 1.5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  FourierField f(3, cutoff);
  f.mean() = gauss(rng);
  auto b = f.cosc();
  auto c = f.sinc();
  const auto& n2 = f.basis().norm2s();
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double w = std::pow(1.0 + n2[i], -decay);
    b[i] = w * gauss(rng);
    c[i] = w * gauss(rng);
  }
  return f;
}

// u(x + delta) expressed in coefficients
FourierField shifted(const FourierField& f, const std::vector<double>& delta) {
  FourierField g(f.dim(), f.cutoff());
  g.mean() = f.mean();
  const auto& basis = f.basis();
  auto gb = g.cosc();
  auto gc = g.sinc();
  const auto b = f.cosc(), c = f.sinc();
  for (std::int64_t r = 0; r < basis.num_modes(); ++r) {
    const int* n = basis.mode(r);
    double ph = 0;
    for (int j = 0; j < f.dim(); ++j) ph += n[j] * delta[static_cast<std::size_t>(j)];
    const auto i = static_cast<std::size_t>(r);
    gb[i] = b[i] * std::cos(ph) + c[i] * std::sin(ph);
    gc[i] = c[i] * std::cos(ph) - b[i] * std::sin(ph);
  }
  return g;
}

// independent quadrature oracle: Riemann sum of f(x)^p over a uniform grid,
// evaluated with the slow pointwise series
double riemann_lp(const FourierField& f, double p, int pts) {
  std::vector<double> x(3);
  double s = 0;
  for (int i = 0; i < pts; ++i)
    for (int j = 0; j < pts; ++j)
      for (int k = 0; k < pts; ++k) {
        x[0] = kTwoPi * i / pts;
        x[1] = kTwoPi * j / pts;
        x[2] = kTwoPi * k / pts;
        s += std::pow(std::abs(f(x)), p);
      }
  const double w = std::pow(kTwoPi / pts, 3);
  return std::pow(w * s, 1.0 / p);
}

}  // namespace

TEST_CASE("canonical_index picks the first-positive representative") {
  auto [n1, s1] = canonical_index({1, 0, 0});
  CHECK(n1 == std::vector<int>{1, 0, 0});
  CHECK(s1 == 1);
  auto [n2, s2] = canonical_index({-1, 0, 0});
  CHECK(n2 == std::vector<int>{1, 0, 0});
  CHECK(s2 == -1);
  auto [n3, s3] = canonical_index({0, -2, 1});
  CHECK(n3 == std::vector<int>{0, 2, -1});
  CHECK(s3 == -1);
  CHECK_THROWS(canonical_index({0, 0, 0}));
}

TEST_CASE("canonical basis covers each {n,-n} pair once") {
  auto basis = CanonicalBasis::get(3, 2);
  CHECK(basis->num_modes() == (5 * 5 * 5 - 1) / 2);
  // every mode canonical, lookup of both orientations agrees
  std::vector<int> n(3), m(3);
  for (std::int64_t r = 0; r < basis->num_modes(); ++r) {
    const int* comps = basis->mode(r);
    std::copy(comps, comps + 3, n.begin());
    int lead = 0;
    for (int v : n)
      if (v != 0) {
        lead = v;
        break;
      }
    CHECK(lead > 0);
    auto lk = basis->find(n.data());
    CHECK(lk.rank == r);
    CHECK(lk.sign == 1);
    for (int j = 0; j < 3; ++j) m[static_cast<std::size_t>(j)] = -n[static_cast<std::size_t>(j)];
    auto lk2 = basis->find(m.data());
    CHECK(lk2.rank == r);
    CHECK(lk2.sign == -1);
  }
}

TEST_CASE("coefficient storage is orientation independent") {
  FourierField f(3, 3);
  f.set_coefficient({0, -2, 1}, 0.5, 0.25);  // sin part flips with orientation
  auto [b1, c1] = f.coefficient({0, -2, 1});
  CHECK(b1 == doctest::Approx(0.5));
  CHECK(c1 == doctest::Approx(0.25));
  auto [b2, c2] = f.coefficient({0, 2, -1});
  CHECK(b2 == doctest::Approx(0.5));
  CHECK(c2 == doctest::Approx(-0.25));
  CHECK(f.coefficient({3, 3, 3}).first == 0.0);     // inside box, zero
  CHECK(f.coefficient({4, 0, 0}).first == 0.0);     // outside box -> implicit 0
}

TEST_CASE("sobolev norm: frozen values and quadrature oracle") {
  FourierField zero(3, 2);
  CHECK(sobolev_norm(zero, 0.7) == 0.0);

  auto cosx = single_mode(3, 1, {1, 0, 0}, 1.0);
  const double spectral = sobolev_norm(cosx, 0.0);
  CHECK(spectral == doctest::Approx(11.1366).epsilon(1e-4));
  CHECK(spectral == doctest::Approx(std::sqrt(0.5 * std::pow(kTwoPi, 3))).epsilon(1e-13));
  // independent oracle: grid quadrature of cos^2 over T^3
  CHECK(spectral == doctest::Approx(riemann_lp(cosx, 2.0, 8)).epsilon(1e-12));

  FourierField cst(3, 1);
  cst.mean() = -2.5;
  CHECK(sobolev_norm(cst, 3.0) == doctest::Approx(2.5 * std::pow(kTwoPi, 1.5)).epsilon(1e-13));
}

TEST_CASE("sobolev norms are log-convex in sigma") {
  const double s1 = 1.7, s2 = -0.4;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto f = random_field(3, seed);
    for (double theta : {0.25, 0.5, 0.9}) {
      const double mid = sobolev_norm(f, theta * s1 + (1 - theta) * s2);
      const double bound = std::pow(sobolev_norm(f, s1), theta) * std::pow(sobolev_norm(f, s2), 1 - theta);
      CHECK(mid <= bound * (1 + 1e-12));
    }
  }
  // equality for a single mode
  auto g = single_mode(3, 2, {1, 1, 0}, 0.3, -0.8);
  const double mid = sobolev_norm(g, 0.5 * s1 + 0.5 * s2);
  const double bound = std::sqrt(sobolev_norm(g, s1) * sobolev_norm(g, s2));
  CHECK(mid == doctest::Approx(bound).epsilon(1e-12));
}

TEST_CASE("lp norms: closed forms") {
  auto cosx = single_mode(3, 1, {1, 0, 0}, 1.0);
  CHECK(lp_norm(cosx, 4.0, 2) ==
        doctest::Approx(std::pow(3.0 * std::pow(std::numbers::pi, 3), 0.25)).epsilon(1e-12));
  CHECK(lp_norm(cosx, 4.0, 2) == doctest::Approx(3.1053).epsilon(1e-4));

  FourierField cst(3, 1);
  cst.mean() = 1.7;
  for (double p : {2.0, 3.0, 4.0, 6.0})
    CHECK(lp_norm(cst, p, 1) == doctest::Approx(1.7 * std::pow(kTwoPi, 3.0 / p)).epsilon(1e-13));

  FourierField zero(3, 2);
  CHECK(lp_norm(zero, 4.0, 2) == 0.0);
  CHECK_THROWS(lp_norm(cosx, 5.0, 2));
  CHECK_THROWS(lp_norm(cosx, 4.0, 0));

  // grid quadrature agrees with the slow pointwise oracle on a random field
  auto f = random_field(2, 99);
  CHECK(lp_norm(f, 4.0, 2) == doctest::Approx(riemann_lp(f, 4.0, 24)).epsilon(1e-11));
  const double linf = lp_norm(f, std::numeric_limits<double>::infinity(), 4);
  CHECK(linf <= riemann_lp(f, 64.0, 40) * 1.2);  // crude cross-check of scale
  CHECK(linf > 0);
}

TEST_CASE("projectors") {
  auto f3 = single_mode(3, 3, {3, 0, 0}, 1.0);
  CHECK(max_coeff_difference(project_low(f3, 2.0), FourierField(3, 3)) == 0.0);

  FourierField g(3, 5);
  g.mean() = 0.7;
  g.set_coefficient({1, 0, 0}, 1.0, 0.0);
  g.set_coefficient({0, 5, 0}, 1.0, 0.0);
  auto low = project_low(g, 1.0);
  CHECK(low.mean() == 0.7);
  CHECK(low.coefficient({1, 0, 0}).first == 1.0);
  CHECK(low.coefficient({0, 5, 0}).first == 0.0);

  auto f = random_field(3, 5);
  for (double M : {0.0, 1.0, 2.2, 3.0}) {
    auto lo = project_low(f, M), hi = project_high(f, M);
    CHECK(max_coeff_difference(lo + hi, f) == 0.0);                  // partition
    CHECK(max_coeff_difference(project_low(lo, M), lo) == 0.0);      // idempotent
    CHECK(max_coeff_difference(project_low(hi, M), FourierField(3, 3)) == doctest::Approx(std::abs(hi.mean())));
  }
  // M = 0 keeps exactly the mean
  auto lo0 = project_low(f, 0.0);
  CHECK(lo0.mean() == f.mean());
  CHECK(sobolev_norm(lo0, 0.0) == doctest::Approx(std::abs(f.mean()) * std::pow(kTwoPi, 1.5)));
  CHECK(project_high(f, 0.0).mean() == 0.0);
}

TEST_CASE("smooth filter: profile values and contraction") {
  CHECK(chi_profile(0.0) == 1.0);
  CHECK(chi_profile(0.49) == 1.0);
  CHECK(chi_profile(1.0) == 0.0);
  CHECK(chi_profile(0.75) == doctest::Approx(0.5).epsilon(1e-14));  // psi(1/2) by symmetry

  FilterSpec spec(10.0);
  auto f1 = single_mode(3, 1, {1, 0, 0}, 2.0, -1.0);
  auto g1 = smooth_filter(f1, spec);
  CHECK(g1.coefficient({1, 0, 0}).first == 2.0);
  CHECK(g1.coefficient({1, 0, 0}).second == -1.0);

  auto f10 = single_mode(3, 10, {10, 0, 0}, 1.0);
  CHECK(sobolev_norm(smooth_filter(f10, spec), 0.0) == 0.0);

  auto f75 = single_mode(3, 7, {5, 5, 5}, 1.0);  // |n|^2 = 75
  CHECK(smooth_filter(f75, spec).coefficient({5, 5, 5}).first == doctest::Approx(0.5).epsilon(1e-14));

  auto f = random_field(4, 11);
  for (double sigma : {-1.0, 0.0, 1.5})
    CHECK(sobolev_norm(smooth_filter(f, FilterSpec(3.0)), sigma) <= sobolev_norm(f, sigma));
}

TEST_CASE("smooth filter converges in L2 as N grows") {
  auto f = random_field(4, 17);
  double prev = std::numeric_limits<double>::infinity();
  const double max_n2 = 3.0 * 16.0;
  for (double N : {2.0, 3.0, 5.0, 7.0, 9.0, 12.0}) {
    const double err = sobolev_norm(smooth_filter(f, FilterSpec(N)) - f, 0.0);
    CHECK(err <= prev * (1 + 1e-12));
    prev = err;
    if (N * N >= 2.0 * max_n2) CHECK(err == 0.0);
  }
  const double big = std::sqrt(2.0 * max_n2);
  CHECK(sobolev_norm(smooth_filter(f, FilterSpec(big + 0.01)) - f, 0.0) == 0.0);

  // same statement read through the grid in L4
  prev = std::numeric_limits<double>::infinity();
  for (double N : {2.0, 4.0, 8.0, 12.0}) {
    const double err = lp_norm(smooth_filter(f, FilterSpec(N)) - f, 4.0, 2);
    CHECK(err <= prev * (1 + 1e-12));
    prev = err;
  }
  CHECK(prev == 0.0);
}

TEST_CASE("transform round trip and Parseval") {
  auto f = random_field(4, 23);
  const int G = 4 * 4;
  auto grid = to_physical(f, G);
  auto back = from_physical(grid, f.cutoff());
  CHECK(max_coeff_difference(f, back) <= 1e-12);

  // Parseval: quadrature L2 equals the spectral L2
  const double quad = grid_lp_norm(grid, 2.0);
  const double spec = sobolev_norm(f, 0.0);
  CHECK(std::abs(quad - spec) / spec <= 1e-12);

  // cos(x1) node values on G=8
  auto cosx = single_mode(3, 1, {1, 0, 0}, 1.0);
  auto cg = to_physical(cosx, 8);
  for (int i = 0; i < 8; ++i) {
    // value constant along the trailing axes; probe (i, 0, 0)
    CHECK(cg.values[static_cast<std::size_t>(i) * 64] == doctest::Approx(std::cos(kTwoPi * i / 8)).epsilon(1e-12));
  }
  CHECK_THROWS(to_physical(f, 6));  // below bandwidth
}

TEST_CASE("from_physical truncates above the cutoff box") {
  auto f = random_field(3, 31);
  auto grid = to_physical(f, 16);
  auto trunc = from_physical(grid, 1);
  CHECK(trunc.cutoff() == 1);
  CHECK(std::abs(trunc.mean() - f.mean()) <= 1e-13);
  auto [b, c] = trunc.coefficient({1, 1, 0});
  auto [fb, fc] = f.coefficient({1, 1, 0});
  CHECK(b == doctest::Approx(fb).epsilon(1e-12));
  CHECK(c == doctest::Approx(fc).epsilon(1e-12));
}

TEST_CASE("cubic term: trig identity, edge cases") {
  FilterSpec spec(10.0);
  auto cosx = single_mode(3, 1, {1, 0, 0}, 1.0);
  auto cube = cubic_term(cosx, spec, 4);
  CHECK(cube.coefficient({1, 0, 0}).first == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(cube.coefficient({3, 0, 0}).first == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(cube.mean() == doctest::Approx(0.0));
  CHECK(cube.coefficient({2, 0, 0}).first == doctest::Approx(0.0));

  FourierField zero(3, 2);
  CHECK(sobolev_norm(cubic_term(zero, spec, 2), 0.0) == 0.0);

  FourierField cst(3, 1);
  cst.mean() = -1.5;
  CHECK(cubic_term(cst, spec, 2).mean() == doctest::Approx(-3.375).epsilon(1e-14));

  CHECK_THROWS(cubic_term(cosx, spec, 2));  // cube reaches mode 3; 6-point grid aliases it
}

TEST_CASE("cubic term commutes with lattice shifts") {
  FilterSpec spec(4.0);
  auto f = random_field(3, 71);
  const std::vector<double> delta{2.0 * kTwoPi / 16, 5.0 * kTwoPi / 16, 1.0 * kTwoPi / 16};
  auto a = cubic_term(shifted(f, delta), spec, 3);
  auto b = shifted(cubic_term(f, spec, 3), delta);
  CHECK(max_coeff_difference(a, b) <= 1e-10);
}

TEST_CASE("cubic term of a filtered-band field matches the slow oracle") {
  // small field, compare against pointwise cube + fine-grid analysis
  FilterSpec spec(3.0);
  auto f = random_field(2, 13);
  auto fast = cubic_term(f, spec, 3);
  auto ff = smooth_filter(f, spec);
  auto grid = to_physical(ff, 32);
  for (double& v : grid.values) v = v * v * v;
  auto slow = smooth_filter(from_physical(grid, 6), spec);
  CHECK(max_coeff_difference(fast, slow) <= 1e-12);
}

TEST_CASE("snapshot binary and text round trips") {
  auto f = random_field(3, 41);
  std::ostringstream bos(std::ios::binary);
  write_snapshot(f, bos);
  std::istringstream bis(bos.str(), std::ios::binary);
  auto fb = read_snapshot(bis);
  CHECK(max_coeff_difference(f, fb) == 0.0);
  CHECK(fb.mean() == f.mean());

  std::ostringstream tos;
  write_snapshot_text(f, tos);
  std::istringstream tis(tos.str());
  auto ft = read_snapshot_text(tis);
  CHECK(max_coeff_difference(f, ft) == 0.0);

  std::istringstream bad("XXXXX");
  CHECK_THROWS(read_snapshot(bad));
}
