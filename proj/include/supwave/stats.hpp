#pragma once

#include <string>

#include "supwave/binomial_ci.hpp"
#include "supwave/randomization.hpp"
#include "supwave/solver.hpp"

namespace supwave {

// Exponents of the tail-set / growth analysis and their mutual constraints:
//   0 < eps < s/2
//   (1-s+eps)/(s-2eps) <= (1-s)/s + eps1
//   1/2 < delta < s / (2(s-2eps))      [equivalent to (delta-1/2)s < 2 delta eps]
//   1/3 < delta_tilde < 1,  delta_check > 0
// plus the two side conditions used by the Gronwall argument:
//   -s + eps + delta_tilde (s-2eps) <= 0  and  -s + eps + (delta+1/2)(s-2eps) <= 0.
struct ExponentBundle {
  double s = 0.5;
  double epsilon = 0.1;
  double epsilon1 = 0.0;
  double delta = 0.6;
  double delta_tilde = 0.5;
  double delta_check = 0.1;
  double epsilon0 = 0.25;  // tail-decay probe exponent (reported, not fitted)
};

// Derive the bundle from (s, epsilon): minimal epsilon1, delta at the
// midpoint of its admissible interval, delta_tilde = 1/2, delta_check = 0.1.
// Throws (naming the violated constraint) outside the admissible region.
ExponentBundle validate_exponents(double s, double epsilon);

// Re-validate after user overrides of delta / delta_tilde / delta_check.
void check_bundle(const ExponentBundle& b);

// The five data-set quantities at level M and their thresholds.
struct SetMembershipRecord {
  double M = 1;
  double q_F = 0, q_G = 0, q_H = 0, q_K = 0, q_R = 0;
  double tail_H = 0, tail_K = 0, tail_R = 0;
  double thr_F = 0, thr_G = 0, thr_HKR = 0;
  bool in_F = true, in_G = true, in_H = true, in_K = true, in_R = true;
  bool in_E_M = true;
};

struct SetQuantityOptions {
  double t_max = 200.0;
  double dt_quad = 0.05;
  bool include_time_norms = true;  // q_H, q_K, q_R are expensive; F/G are cheap
};

SetMembershipRecord set_quantities(const PhaseState& sample, double M, const ExponentBundle& b,
                                   const SetQuantityOptions& opts = {},
                                   TransformCache* cache = nullptr);

// Monte Carlo tail estimates mu(F_M^c), ..., mu(E_M^c) with Clopper-Pearson
// intervals. Counting is per-index and therefore worker-count independent.
struct TailCurvePoint {
  std::string set;  // F, G, H, K, R, E
  double M = 1;
  int n = 0;
  int failures = 0;
  double p_hat = 0, lo = 0, hi = 0;
};

struct TailCurveOptions {
  int n_samples = 1000;
  bool include_time_norms = false;  // H/K/R (and E) on the first n_time_samples
  int n_time_samples = 100;
  double t_max = 20.0;
  double dt_quad = 0.1;
  int workers = 0;
};

std::vector<TailCurvePoint> tail_curve(const EnsembleSpec& ens, const ExponentBundle& b,
                                       const std::vector<double>& M_list,
                                       const TailCurveOptions& opts);

// Three-layer Gronwall verification along a w-trajectory (all sides
// computable, no free constants):
//  (i)   |dE_N(w)/dt| <= ||w_t||_L2 * ||(S_N F + S_N w)^3 - (S_N w)^3||_L2
//  (ii)  ||(S_N F + W)^3 - W^3||_L2 <= g~ + f~ ||W||_L4^2, with
//        g~ = ||S_N F||_L6^3 + 3 ||S_N F||_Linf ||S_N F||_L4 ||W||_L4 and
//        f~ = 3 ||S_N F||_Linf
//  (iii) E^{1/2}(w)(t) <= e^{A(t)} (E^{1/2}(w)(0) + B(t)),
//        A = sqrt2 int f~, B = (1/sqrt2) int g~  (trapezoid in the samples)
struct GronwallMargins {
  std::vector<double> times;
  std::vector<double> lhs_i, rhs_i;      // where both neighbors exist; NaN otherwise
  std::vector<double> lhs_ii, rhs_ii;
  std::vector<double> lhs_iii, rhs_iii;
  double min_margin_i = 0, min_margin_ii = 0, min_margin_iii = 0;
};

GronwallMargins gronwall_check(const TrajectoryRecord& w_traj, const PhaseState& base,
                               const FilterSpec& filter, TransformCache* cache = nullptr);

// Least-squares growth exponent of log sup_{tau<=t} ||(w,w_t)||_H1 against
// log(M^s + t) over the tail half of the samples, compared with the admissible
// exponent (1-s)/s + eps1; same for the L4 record against (1-s)/(2s) + eps.
struct GrowthFit {
  double slope_h1 = 0, bound_h1 = 0;
  double slope_l4 = 0, bound_l4 = 0;
  bool pass = true;
};

GrowthFit growth_fit(const TrajectoryRecord& rec, const ExponentBundle& b, double M_abscissa = 0.0);

// Interpolation / time-Hoelder verification on a stored trajectory.
struct HolderReport {
  double max_interp_ratio = 0;  // ||f||_mid / (||f||_s1^th ||f||_s2^(1-th)); <= 1 expected
  double max_chain_ratio = 0;   // difference bound with pinned constant 2; <= 1 expected
  double holder_seminorm = 0;   // sup ||w(t1)-w(t2)||_{H^{1-eps/2}} / |t1-t2|^{eps/2}
  int pairs = 0;
};

HolderReport holder_interp_check(const TrajectoryRecord& traj, double sigma1, double sigma2,
                                 double theta, double eps);

// Plain norm interpolation on one field (used by the fuzz suites).
double interp_ratio(const FourierField& f, double sigma1, double sigma2, double theta);

// Cauchy-in-N differences of the decomposed solutions for a dyadic ladder,
// with the filtered-agreement identity and the truncation residual at t = 1.
struct ConvergenceRow {
  double N_coarse = 0, N_fine = 0;
  double max_w_diff = 0;       // max_t ||w_N - w_2N||_{H^{1-eps}}
  double max_wt_diff = 0;      // max_t ||dt w_N - dt w_2N||_{H^{-eps}}
  double l3_spacetime = 0;     // ||S_N u_N - S_2N u_2N||_{L^3((0,T) x T^d)}
  double agreement_err = 0;    // max over dyadic K <= N_fine - 2 of the S_K identity
  double residual_coarse = 0, residual_fine = 0;  // H^-tau defect at t = 1
};

struct ConvergenceOptions {
  double T = 5.0;
  double dt = 5e-4;
  double eps = 0.1;
  double sample_stride = 0.25;
  int oversample = 2;
  std::uint64_t sample_index = 0;
  int workers = 0;
};

std::vector<ConvergenceRow> convergence_study(const EnsembleSpec& ens,
                                              const std::vector<double>& N_list,
                                              const ConvergenceOptions& opts);

}  // namespace supwave
