#pragma once

#include <cstdint>
#include <string>

#include "supwave/field.hpp"

namespace supwave {

// Stateless counter-based randomness: every draw is a pure function of
// (seed, stream, counter), so sampling is order independent and identical
// for any worker count.
namespace rng {
std::uint64_t mix(std::uint64_t x);
std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
double uniform01(std::uint64_t h);     // in (0,1)
double standard_normal(std::uint64_t h);
}  // namespace rng

enum class DistKind { gaussian, rademacher, uniform };

// Mean-zero unit-variance coefficient laws together with the constant c of
// the sub-Gaussian moment bound  E e^(gamma X) <= e^(c gamma^2).
struct DistributionSpec {
  DistKind kind = DistKind::gaussian;
  double subgaussian_c = 0.5;

  static DistributionSpec make(DistKind k);
  static DistributionSpec parse(const std::string& name);
  std::string name() const;

  double draw(std::uint64_t h) const;
  double mgf(double gamma) const;  // closed form E e^(gamma X)
};

struct SubgaussianReport {
  bool ok = true;
  double worst_gamma = 0.0;
  double worst_excess = 0.0;  // max of mgf - e^(c gamma^2) over the grid
};

SubgaussianReport subgaussian_check(const DistributionSpec& dist, const std::vector<double>& gamma_grid);

// Concrete H^s representative with tunable decay margin eta: u0 has cos
// coefficients <n>^-(s + d/2 + eta), u1 has <n>^-(s - 1 + d/2 + eta), both
// with unit mean and empty sin parts, truncated to |n|_inf <= L. The full
// (L = infinity) pair lies in H^sigma exactly for sigma < s + eta.
PhaseState make_base_pair(double s, int dim, double eta, int L);

struct EnsembleSpec {
  PhaseState base;
  DistributionSpec dist;
  std::uint64_t master_seed = 0;

  // provenance echoed into artifacts
  double s = 0.5;
  double eta = 0.01;

  EnsembleSpec(PhaseState base_, DistributionSpec dist_, std::uint64_t seed)
      : base(std::move(base_)), dist(dist_), master_seed(seed) {}
};

// k-th sample of the ensemble: every base coefficient (means included, both
// components) multiplied by an independent draw. Pure in (master_seed, k).
PhaseState sample_pair(const EnsembleSpec& spec, std::uint64_t k);

}  // namespace supwave
