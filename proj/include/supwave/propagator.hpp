#pragma once

#include "supwave/field.hpp"
#include "supwave/transform.hpp"

namespace supwave {

// Free wave group S(t): per nonzero mode a rotation at frequency |n|,
// affine drift on the mean.
PhaseState free_evolve(const PhaseState& st, double t);

// Weighted space-time norm || <t>^-delta S(t) Pi^M (u0,u1) ||_{L^q_t L^p_x}
// truncated to [-t_max, t_max] with composite trapezoid quadrature in time.
struct MixedNormSpec {
  double weight_exponent = 0.6;  // delta / delta-tilde / delta-check
  double time_q = 2.0;           // 2, 3 or inf
  double space_p = std::numeric_limits<double>::infinity();  // inf, 6 or 4
  double t_max = 200.0;
  double dt_quad = 0.05;
  int oversample = 0;  // 0 -> per-p recommendation

  void validate() const;
};

struct WeightedNormResult {
  double value = 0.0;
  double tail_bound = 0.0;  // conservative bound on the |t| > t_max remainder
  double sup_space_norm = 0.0;
};

int recommended_oversample(double p);

WeightedNormResult weighted_mixed_norm(const PhaseState& state, double M, const MixedNormSpec& spec,
                                       TransformCache* cache = nullptr);

}  // namespace supwave
