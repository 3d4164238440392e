#include "supwave/propagator.hpp"

#include <cmath>

namespace supwave {

PhaseState free_evolve(const PhaseState& st, double t) {
  PhaseState out = st;
  const auto& n2 = st.u.basis().norm2s();
  auto ub = out.u.cosc();
  auto uc = out.u.sinc();
  auto vb = out.ut.cosc();
  auto vc = out.ut.sinc();
  const auto sub = st.u.cosc(), suc = st.u.sinc();
  const auto svb = st.ut.cosc(), svc = st.ut.sinc();
  for (std::size_t i = 0; i < n2.size(); ++i) {
    const double w = std::sqrt(n2[i]);
    const double cs = std::cos(t * w), sn = std::sin(t * w);
    const double sw = sn / w;
    ub[i] = cs * sub[i] + sw * svb[i];
    uc[i] = cs * suc[i] + sw * svc[i];
    vb[i] = -w * sn * sub[i] + cs * svb[i];
    vc[i] = -w * sn * suc[i] + cs * svc[i];
  }
  out.u.mean() = st.u.mean() + t * st.ut.mean();
  out.ut.mean() = st.ut.mean();
  return out;
}

int recommended_oversample(double p) {
  if (std::isinf(p)) return 4;  // sup norms on a 4x oversampled grid
  if (p == 2.0) return 1;
  if (p == 4.0) return 2;
  if (p == 6.0) return 3;
  if (p == 3.0) return 3;
  throw std::invalid_argument("recommended_oversample: p must be one of {2,3,4,6,inf}");
}

void MixedNormSpec::validate() const {
  const bool qinf = std::isinf(time_q);
  if (!(qinf || time_q == 2.0 || time_q == 3.0))
    throw std::invalid_argument("MixedNormSpec: q must be 2, 3 or inf");
  if (!(std::isinf(space_p) || space_p == 6.0 || space_p == 4.0))
    throw std::invalid_argument("MixedNormSpec: p must be inf, 6 or 4");
  // integrability of <t>^(-q delta) needs q*delta > 1; the q = inf weight
  // only needs a positive exponent
  if (qinf) {
    if (!(weight_exponent > 0))
      throw std::invalid_argument("MixedNormSpec: q = inf requires weight exponent > 0");
  } else if (!(weight_exponent * time_q > 1.0)) {
    throw std::invalid_argument(
        "MixedNormSpec: need weight_exponent > 1/q (1/2 for q=2, 1/3 for q=3)");
  }
  if (!(t_max > 0) || !(dt_quad > 0)) throw std::invalid_argument("MixedNormSpec: t_max, dt_quad > 0");
}

WeightedNormResult weighted_mixed_norm(const PhaseState& state, double M, const MixedNormSpec& spec,
                                       TransformCache* cache) {
  spec.validate();
  TransformCache local;
  TransformCache& tc = cache ? *cache : local;

  const PhaseState high = project_high(state, M);
  WeightedNormResult res;
  const int os = spec.oversample > 0 ? spec.oversample : recommended_oversample(spec.space_p);
  const auto steps = static_cast<std::int64_t>(std::llround(spec.t_max / spec.dt_quad));
  const bool qinf = std::isinf(spec.time_q);

  double acc = 0.0;  // trapezoid accumulation of w(t)^q over [-t_max, t_max]
  double sup_weighted = 0.0;
  for (std::int64_t k = -steps; k <= steps; ++k) {
    const double t = static_cast<double>(k) * spec.dt_quad;
    const double space = lp_norm(free_evolve(high, t).u, spec.space_p, os, &tc);
    res.sup_space_norm = std::max(res.sup_space_norm, space);
    const double weighted = std::pow(1.0 + t * t, -0.5 * spec.weight_exponent) * space;
    if (qinf) {
      sup_weighted = std::max(sup_weighted, weighted);
    } else {
      const double contrib = std::pow(weighted, spec.time_q);
      acc += (k == -steps || k == steps) ? 0.5 * contrib : contrib;
    }
  }

  if (qinf) {
    res.value = sup_weighted;
    // beyond t_max the space norm is bounded by its sup and the weight decays
    res.tail_bound = std::pow(1.0 + spec.t_max * spec.t_max, -0.5 * spec.weight_exponent) *
                     res.sup_space_norm;
  } else {
    res.value = std::pow(acc * spec.dt_quad, 1.0 / spec.time_q);
    // int_{|t|>T} <t>^(-q delta) dt <= 2 T^(1 - q delta) / (q delta - 1)
    const double qd = spec.time_q * spec.weight_exponent;
    const double tail_int = 2.0 * std::pow(spec.t_max, 1.0 - qd) / (qd - 1.0);
    res.tail_bound = res.sup_space_norm * std::pow(tail_int, 1.0 / spec.time_q);
  }
  return res;
}

}  // namespace supwave
