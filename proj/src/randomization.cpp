#include "supwave/randomization.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace supwave {

namespace rng {

std::uint64_t mix(std::uint64_t x) {  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ (0xd1b54a32d192ed03ULL * stream));
  h = mix(h ^ (0x8cb92ba72f3d8dd7ULL * counter));
  return h;
}

double uniform01(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double standard_normal(std::uint64_t h) {
  // Box-Muller from two sub-hashes of the same counter
  const double u1 = uniform01(mix(h ^ 0xa0761d6478bd642fULL));
  const double u2 = uniform01(mix(h ^ 0xe7037ed1a0b428dbULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace rng

DistributionSpec DistributionSpec::make(DistKind k) {
  DistributionSpec d;
  d.kind = k;
  switch (k) {
    case DistKind::gaussian:
    case DistKind::rademacher:
      d.subgaussian_c = 0.5;
      break;
    case DistKind::uniform:
      d.subgaussian_c = 1.5;  // Hoeffding bound for support [-sqrt3, sqrt3]
      break;
  }
  return d;
}

DistributionSpec DistributionSpec::parse(const std::string& name) {
  if (name == "gaussian") return make(DistKind::gaussian);
  if (name == "rademacher") return make(DistKind::rademacher);
  if (name == "uniform") return make(DistKind::uniform);
  throw std::invalid_argument("unknown distribution '" + name +
                              "' (expected gaussian|rademacher|uniform)");
}

std::string DistributionSpec::name() const {
  switch (kind) {
    case DistKind::gaussian: return "gaussian";
    case DistKind::rademacher: return "rademacher";
    case DistKind::uniform: return "uniform";
  }
  return "?";
}

double DistributionSpec::draw(std::uint64_t h) const {
  switch (kind) {
    case DistKind::gaussian:
      return rng::standard_normal(h);
    case DistKind::rademacher:
      return (h >> 63) ? 1.0 : -1.0;
    case DistKind::uniform:
      return (rng::uniform01(h) - 0.5) * 2.0 * std::sqrt(3.0);
  }
  return 0.0;
}

double DistributionSpec::mgf(double gamma) const {
  switch (kind) {
    case DistKind::gaussian:
      return std::exp(0.5 * gamma * gamma);
    case DistKind::rademacher:
      return std::cosh(gamma);
    case DistKind::uniform: {
      const double a = std::sqrt(3.0) * gamma;
      return std::abs(a) < 1e-8 ? 1.0 + a * a / 6.0 : std::sinh(a) / a;
    }
  }
  return 1.0;
}

SubgaussianReport subgaussian_check(const DistributionSpec& dist,
                                    const std::vector<double>& gamma_grid) {
  SubgaussianReport rep;
  for (double g : gamma_grid) {
    const double excess = dist.mgf(g) - std::exp(dist.subgaussian_c * g * g);
    if (excess > rep.worst_excess) {
      rep.worst_excess = excess;
      rep.worst_gamma = g;
      rep.ok = false;
    }
  }
  return rep;
}

PhaseState make_base_pair(double s, int dim, double eta, int L) {
  if (!(eta > 0)) throw std::invalid_argument("make_base_pair: eta must be > 0");
  FourierField u0(dim, L), u1(dim, L);
  u0.mean() = 1.0;
  u1.mean() = 1.0;
  const auto& n2 = u0.basis().norm2s();
  const double e0 = -(s + 0.5 * dim + eta) / 2.0;        // exponent on <n>^2
  const double e1 = -(s - 1.0 + 0.5 * dim + eta) / 2.0;
  auto b0 = u0.cosc();
  auto b1 = u1.cosc();
  for (std::size_t i = 0; i < n2.size(); ++i) {
    const double base = 1.0 + n2[i];
    b0[i] = std::pow(base, e0);
    b1[i] = std::pow(base, e1);
  }
  return PhaseState(std::move(u0), std::move(u1));
}

PhaseState sample_pair(const EnsembleSpec& spec, std::uint64_t k) {
  PhaseState out = spec.base;
  const std::uint64_t stream = rng::mix(spec.master_seed ^ rng::mix(k));
  const auto nm = static_cast<std::uint64_t>(out.u.num_modes());
  // stable coefficient indexing: j * (1 + 2*modes) + {0: mean, 2r+1: b, 2r+2: c}
  for (int j = 0; j < 2; ++j) {
    FourierField& f = (j == 0) ? out.u : out.ut;
    const std::uint64_t off = static_cast<std::uint64_t>(j) * (1 + 2 * nm);
    f.mean() *= spec.dist.draw(rng::derive(spec.master_seed, stream, off));
    auto b = f.cosc();
    auto c = f.sinc();
    for (std::uint64_t r = 0; r < nm; ++r) {
      b[r] *= spec.dist.draw(rng::derive(spec.master_seed, stream, off + 2 * r + 1));
      c[r] *= spec.dist.draw(rng::derive(spec.master_seed, stream, off + 2 * r + 2));
    }
  }
  return out;
}

}  // namespace supwave
