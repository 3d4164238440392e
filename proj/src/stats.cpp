#include "supwave/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "supwave/parallel.hpp"

namespace supwave {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;

[[noreturn]] void constraint_error(const std::string& what) {
  throw std::invalid_argument("exponent constraint violated: " + what);
}
}  // namespace

ExponentBundle validate_exponents(double s, double epsilon) {
  if (!(s > 0.0 && s < 1.0)) constraint_error("s must lie in (0,1)");
  if (!(epsilon > 0.0)) constraint_error("epsilon must be positive");
  if (!(epsilon < s / 2.0)) constraint_error("epsilon < s/2");
  ExponentBundle b;
  b.s = s;
  b.epsilon = epsilon;
  b.epsilon1 = (1.0 - s + epsilon) / (s - 2.0 * epsilon) - (1.0 - s) / s;  // minimal choice
  const double delta_hi = s / (2.0 * (s - 2.0 * epsilon));
  b.delta = 0.5 * (0.5 + delta_hi);
  b.delta_tilde = 0.5;
  b.delta_check = 0.1;
  b.epsilon0 = 0.25;
  check_bundle(b);
  return b;
}

void check_bundle(const ExponentBundle& b) {
  const double s = b.s, eps = b.epsilon;
  if (!(s > 0.0 && s < 1.0)) constraint_error("s must lie in (0,1)");
  if (!(eps > 0.0 && eps < s / 2.0)) constraint_error("epsilon < s/2");
  const double lhs = (1.0 - s + eps) / (s - 2.0 * eps);
  if (lhs > (1.0 - s) / s + b.epsilon1 + 1e-12)
    constraint_error("(1-s+eps)/(s-2eps) <= (1-s)/s + eps1");
  if (!(b.delta > 0.5)) constraint_error("delta > 1/2");
  if (!((b.delta - 0.5) * s < 2.0 * b.delta * eps))
    constraint_error("(delta - 1/2) s < 2 delta eps");
  if (!(b.delta_tilde > 1.0 / 3.0 && b.delta_tilde < 1.0))
    constraint_error("delta_tilde in (1/3, 1)");
  if (!(b.delta_check > 0.0)) constraint_error("delta_check > 0");
  if (-s + eps + b.delta_tilde * (s - 2.0 * eps) > 1e-12)
    constraint_error("-s + eps + delta_tilde (s - 2 eps) <= 0");
  if (-s + eps + (b.delta + 0.5) * (s - 2.0 * eps) > 1e-12)
    constraint_error("-s + eps + (delta + 1/2)(s - 2 eps) <= 0");
}

SetMembershipRecord set_quantities(const PhaseState& sample, double M, const ExponentBundle& b,
                                   const SetQuantityOptions& opts, TransformCache* cache) {
  TransformCache local;
  TransformCache& tc = cache ? *cache : local;
  SetMembershipRecord rec;
  rec.M = M;
  rec.thr_F = std::pow(M, 1.0 - b.s + b.epsilon);
  rec.thr_G = std::pow(M, b.epsilon);
  rec.thr_HKR = std::pow(M, b.epsilon - b.s);

  rec.q_F = pair_norm(project_low(sample, M), 1.0);
  rec.q_G = lp_norm(project_low(sample.u, M), 4.0, 2, &tc);

  if (opts.include_time_norms) {
    MixedNormSpec h{b.delta, 2.0, std::numeric_limits<double>::infinity(), opts.t_max,
                    opts.dt_quad};
    MixedNormSpec k{b.delta_tilde, 3.0, 6.0, opts.t_max, opts.dt_quad};
    MixedNormSpec r{b.delta_check, std::numeric_limits<double>::infinity(), 4.0, opts.t_max,
                    opts.dt_quad};
    const auto rh = weighted_mixed_norm(sample, M, h, &tc);
    const auto rk = weighted_mixed_norm(sample, M, k, &tc);
    const auto rr = weighted_mixed_norm(sample, M, r, &tc);
    rec.q_H = rh.value;
    rec.tail_H = rh.tail_bound;
    rec.q_K = rk.value;
    rec.tail_K = rk.tail_bound;
    rec.q_R = rr.value;
    rec.tail_R = rr.tail_bound;
  }
  rec.in_F = rec.q_F <= rec.thr_F;
  rec.in_G = rec.q_G <= rec.thr_G;
  rec.in_H = rec.q_H + rec.tail_H <= rec.thr_HKR;
  rec.in_K = rec.q_K + rec.tail_K <= rec.thr_HKR;
  rec.in_R = rec.q_R + rec.tail_R <= rec.thr_HKR;
  rec.in_E_M = rec.in_F && rec.in_G && rec.in_H && rec.in_K && rec.in_R;
  return rec;
}

std::vector<TailCurvePoint> tail_curve(const EnsembleSpec& ens, const ExponentBundle& b,
                                       const std::vector<double>& M_list,
                                       const TailCurveOptions& opts) {
  if (opts.n_samples < 100) throw std::invalid_argument("tail_curve: need n_samples >= 100");
  const int workers = resolve_workers(opts.workers);
  const std::size_t nm = M_list.size();

  // per-sample membership bits, slot-stored so worker count cannot matter
  struct SampleBits {
    std::vector<std::uint8_t> fail;  // nm * 6 entries: F G H K R E
  };
  std::vector<SampleBits> bits(static_cast<std::size_t>(opts.n_samples));
  std::vector<std::unique_ptr<TransformCache>> caches(static_cast<std::size_t>(workers));
  for (auto& c : caches) c = std::make_unique<TransformCache>();

  SetQuantityOptions sq;
  sq.t_max = opts.t_max;
  sq.dt_quad = opts.dt_quad;

  parallel_for(static_cast<std::size_t>(opts.n_samples), workers, [&](std::size_t i, int w) {
    const bool with_time = opts.include_time_norms &&
                           static_cast<int>(i) < opts.n_time_samples;
    SetQuantityOptions local = sq;
    local.include_time_norms = with_time;
    const PhaseState sample = sample_pair(ens, i);
    auto& out = bits[i].fail;
    out.assign(nm * 6, 0);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      const auto rec = set_quantities(sample, M_list[mi], b, local, caches[static_cast<std::size_t>(w)].get());
      out[mi * 6 + 0] = rec.in_F ? 0 : 1;
      out[mi * 6 + 1] = rec.in_G ? 0 : 1;
      if (with_time) {
        out[mi * 6 + 2] = rec.in_H ? 0 : 1;
        out[mi * 6 + 3] = rec.in_K ? 0 : 1;
        out[mi * 6 + 4] = rec.in_R ? 0 : 1;
        out[mi * 6 + 5] = rec.in_E_M ? 0 : 1;
      }
    }
  });

  const std::array<const char*, 6> names{"F", "G", "H", "K", "R", "E"};
  std::vector<TailCurvePoint> out;
  const int n_sets = opts.include_time_norms ? 6 : 2;
  for (int si = 0; si < n_sets; ++si) {
    const int n = (si < 2) ? opts.n_samples : std::min(opts.n_samples, opts.n_time_samples);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      TailCurvePoint p;
      p.set = names[static_cast<std::size_t>(si)];
      p.M = M_list[mi];
      p.n = n;
      int fails = 0;
      for (int k = 0; k < n; ++k)
        fails += bits[static_cast<std::size_t>(k)].fail[mi * 6 + static_cast<std::size_t>(si)];
      p.failures = fails;
      p.p_hat = static_cast<double>(fails) / n;
      const auto ci = clopper_pearson(fails, n);
      p.lo = ci.lo;
      p.hi = ci.hi;
      out.push_back(std::move(p));
    }
  }
  if (opts.include_time_norms) {
    // E^M: intersection of E_K over the dyadic K >= M available in the list
    // (a finite truncation of the full dyadic intersection)
    const int n = std::min(opts.n_samples, opts.n_time_samples);
    for (std::size_t mi = 0; mi < nm; ++mi) {
      TailCurvePoint p;
      p.set = "Ecap";
      p.M = M_list[mi];
      p.n = n;
      int fails = 0;
      for (int k = 0; k < n; ++k) {
        bool bad = false;
        for (std::size_t kj = mi; kj < nm; ++kj)
          bad = bad || bits[static_cast<std::size_t>(k)].fail[kj * 6 + 5];
        fails += bad ? 1 : 0;
      }
      p.failures = fails;
      p.p_hat = static_cast<double>(fails) / n;
      const auto ci = clopper_pearson(fails, n);
      p.lo = ci.lo;
      p.hi = ci.hi;
      out.push_back(std::move(p));
    }
  }
  return out;
}

namespace {

double trapezoid_increment(double t0, double t1, double f0, double f1) {
  return 0.5 * (t1 - t0) * (f0 + f1);
}

struct GridNorms {
  double l4 = 0, l6 = 0;
};

GridNorms quadrature_norms(const std::vector<double>& vals, double weight) {
  double s4 = 0, s6 = 0;
  for (double v : vals) {
    const double v2 = v * v;
    s4 += v2 * v2;
    s6 += v2 * v2 * v2;
  }
  return {std::pow(weight * s4, 0.25), std::pow(weight * s6, 1.0 / 6.0)};
}

}  // namespace

GronwallMargins gronwall_check(const TrajectoryRecord& w_traj, const PhaseState& base,
                               const FilterSpec& filter, TransformCache* cache) {
  if (!w_traj.has_states())
    throw std::invalid_argument("gronwall_check: trajectory has no states (lean mode)");
  TransformCache local;
  TransformCache& tc = cache ? *cache : local;

  const double M = w_traj.decomposition_M;
  const int dim = w_traj.states.front().dim();
  const int box = w_traj.states.front().cutoff();
  const PhaseState high = project_high(embed(base, box), M);

  const int band = filter.retained_band();
  const int g6 = next_fast_size(6 * band + 1);  // exact for the L2 of a cubic and for L4/L6
  const int ginf = next_fast_size(4 * (2 * band + 1));
  auto& t6 = tc.get(dim, g6);
  auto& tinf = tc.get(dim, ginf);
  const double w6 = std::pow(2.0 * std::numbers::pi / g6, dim);

  const double vol = [&] {
    double v = 1;
    for (int j = 0; j < dim; ++j) v *= 2.0 * std::numbers::pi;
    return v;
  }();

  auto quadratic_energy = [&](const PhaseState& st) {
    const auto& n2 = st.u.basis().norm2s();
    const auto ub = st.u.cosc(), uc = st.u.sinc();
    const auto vb = st.ut.cosc(), vc = st.ut.sinc();
    double grad = 0, kin = 0;
    for (std::size_t i = 0; i < n2.size(); ++i) {
      grad += n2[i] * (ub[i] * ub[i] + uc[i] * uc[i]);
      kin += vb[i] * vb[i] + vc[i] * vc[i];
    }
    return 0.5 * (vol * st.ut.mean() * st.ut.mean() + 0.5 * vol * (kin + grad));
  };
  auto energy_of = [&](const PhaseState& st) {
    const FourierField W = smooth_filter(st.u, filter);
    std::vector<double> vals(static_cast<std::size_t>(t6.real_size()));
    t6.synthesize(W, vals.data());
    double s4 = 0;
    for (double v : vals) {
      const double v2 = v * v;
      s4 += v2 * v2;
    }
    return quadratic_energy(st) + 0.25 * w6 * s4;
  };

  const std::size_t n = w_traj.size();
  GronwallMargins gm;
  gm.times = w_traj.times;
  gm.lhs_i.assign(n, std::numeric_limits<double>::quiet_NaN());
  gm.rhs_i.assign(n, std::numeric_limits<double>::quiet_NaN());
  gm.lhs_ii.resize(n);
  gm.rhs_ii.resize(n);
  gm.lhs_iii.resize(n);
  gm.rhs_iii.resize(n);

  std::vector<double> fvals(static_cast<std::size_t>(t6.real_size()));
  std::vector<double> wvals(static_cast<std::size_t>(t6.real_size()));
  std::vector<double> sup_buf(static_cast<std::size_t>(tinf.real_size()));

  std::vector<double> f_tilde(n), g_tilde(n), energy_sqrt(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = w_traj.times[i];
    const PhaseState& w = w_traj.states[i];
    const FourierField Ff = smooth_filter(free_evolve(high, t).u, filter);
    const FourierField Wf = smooth_filter(w.u, filter);
    t6.synthesize(Ff, fvals.data());
    t6.synthesize(Wf, wvals.data());

    const GridNorms fn = quadrature_norms(fvals, w6);
    const GridNorms wn = quadrature_norms(wvals, w6);
    double s2 = 0, s4w = 0;
    for (std::size_t k = 0; k < fvals.size(); ++k) {
      const double a = fvals[k] + wvals[k];
      const double d = a * a * a - wvals[k] * wvals[k] * wvals[k];
      s2 += d * d;
      const double v2 = wvals[k] * wvals[k];
      s4w += v2 * v2;
    }
    const double cube_diff_l2 = std::sqrt(w6 * s2);

    tinf.synthesize(Ff, sup_buf.data());
    double fsup = 0;
    for (double v : sup_buf) fsup = std::max(fsup, std::abs(v));

    f_tilde[i] = 3.0 * fsup;
    g_tilde[i] = fn.l6 * fn.l6 * fn.l6 + 3.0 * fsup * fn.l4 * wn.l4;

    gm.lhs_ii[i] = cube_diff_l2;
    gm.rhs_ii[i] = g_tilde[i] + f_tilde[i] * wn.l4 * wn.l4;

    const double e_now = quadratic_energy(w) + 0.25 * w6 * s4w;
    energy_sqrt[i] = std::sqrt(std::max(0.0, e_now));

    if (!w_traj.prev_ok.empty() && w_traj.prev_ok[i] && w_traj.next_ok[i]) {
      const double e_prev = energy_of(w_traj.states_prev[i]);
      const double e_next = energy_of(w_traj.states_next[i]);
      gm.lhs_i[i] = std::abs(e_next - e_prev) / (2.0 * w_traj.dt);
      gm.rhs_i[i] = sobolev_norm(w.ut, 0.0) * cube_diff_l2;
    }
  }

  // (iii): cumulative quadratures of f~ and g~
  double A = 0, B = 0;
  gm.lhs_iii[0] = energy_sqrt[0];
  gm.rhs_iii[0] = energy_sqrt[0];
  for (std::size_t i = 1; i < n; ++i) {
    A += kSqrt2 * trapezoid_increment(gm.times[i - 1], gm.times[i], f_tilde[i - 1], f_tilde[i]);
    B += (1.0 / kSqrt2) *
         trapezoid_increment(gm.times[i - 1], gm.times[i], g_tilde[i - 1], g_tilde[i]);
    gm.lhs_iii[i] = energy_sqrt[i];
    gm.rhs_iii[i] = std::exp(A) * (energy_sqrt[0] + B);
  }

  auto min_margin = [](const std::vector<double>& lhs, const std::vector<double>& rhs) {
    double m = std::numeric_limits<double>::infinity();
    bool any = false;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      if (std::isnan(lhs[i])) continue;
      m = std::min(m, rhs[i] - lhs[i]);
      any = true;
    }
    return any ? m : 0.0;
  };
  gm.min_margin_i = min_margin(gm.lhs_i, gm.rhs_i);
  gm.min_margin_ii = min_margin(gm.lhs_ii, gm.rhs_ii);
  gm.min_margin_iii = min_margin(gm.lhs_iii, gm.rhs_iii);
  return gm;
}

GrowthFit growth_fit(const TrajectoryRecord& rec, const ExponentBundle& b, double M_abscissa) {
  if (rec.size() < 10) throw std::invalid_argument("growth_fit: need at least 10 sample times");
  GrowthFit fit;
  fit.bound_h1 = (1.0 - b.s) / b.s + b.epsilon1;
  fit.bound_l4 = (1.0 - b.s) / (2.0 * b.s) + b.epsilon;

  const double m_s = M_abscissa > 0 ? std::pow(M_abscissa, b.s) : 0.0;
  auto tail_slope = [&](const std::vector<double>& ys) {
    std::vector<double> run(ys.size());
    double m = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
      m = std::max(m, ys[i]);
      run[i] = m;
    }
    const std::size_t i0 = ys.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int k = 0;
    for (std::size_t i = i0; i < ys.size(); ++i) {
      if (!(run[i] > 0) || !(m_s + rec.times[i] > 0)) continue;
      const double x = std::log(m_s + rec.times[i]);
      const double y = std::log(run[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++k;
    }
    if (k < 2) return 0.0;
    const double det = k * sxx - sx * sx;
    return det == 0 ? 0.0 : (k * sxy - sx * sy) / det;
  };
  fit.slope_h1 = tail_slope(rec.h1_w);
  fit.slope_l4 = tail_slope(rec.l4_SNu);
  fit.pass = fit.slope_h1 <= fit.bound_h1 + 1e-9 && fit.slope_l4 <= fit.bound_l4 + 1e-9;
  return fit;
}

double interp_ratio(const FourierField& f, double sigma1, double sigma2, double theta) {
  const double mid = sobolev_norm(f, theta * sigma1 + (1.0 - theta) * sigma2);
  const double den =
      std::pow(sobolev_norm(f, sigma1), theta) * std::pow(sobolev_norm(f, sigma2), 1.0 - theta);
  return den > 0 ? mid / den : 0.0;
}

HolderReport holder_interp_check(const TrajectoryRecord& traj, double sigma1, double sigma2,
                                 double theta, double eps) {
  if (!traj.has_states())
    throw std::invalid_argument("holder_interp_check: trajectory has no states");
  if (!(theta > 0 && theta < 1)) throw std::invalid_argument("holder_interp_check: theta in (0,1)");
  HolderReport rep;
  const std::size_t n = traj.size();
  double sup_s1 = 0, sup_s2 = 0, sup_dt_s2 = 0;
  for (const auto& st : traj.states) {
    sup_s1 = std::max(sup_s1, sobolev_norm(st.u, sigma1));
    sup_s2 = std::max(sup_s2, sobolev_norm(st.u, sigma2));
    sup_dt_s2 = std::max(sup_dt_s2, sobolev_norm(st.ut, sigma2));
  }
  const double w1inf = sup_s2 + sup_dt_s2;
  const double mid_sigma = theta * sigma1 + (1.0 - theta) * sigma2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const FourierField diff = traj.states[i].u - traj.states[j].u;
      const double dt = std::abs(traj.times[i] - traj.times[j]);
      rep.max_interp_ratio = std::max(rep.max_interp_ratio, interp_ratio(diff, sigma1, sigma2, theta));
      const double lhs = sobolev_norm(diff, mid_sigma);
      const double chain =
          2.0 * std::pow(dt, 1.0 - theta) * std::pow(sup_s1, theta) * std::pow(w1inf, 1.0 - theta);
      if (chain > 0) rep.max_chain_ratio = std::max(rep.max_chain_ratio, lhs / chain);
      if (dt > 0) {
        const double hq = sobolev_norm(diff, 1.0 - 0.5 * eps) / std::pow(dt, 0.5 * eps);
        rep.holder_seminorm = std::max(rep.holder_seminorm, hq);
      }
      ++rep.pairs;
    }
  }
  return rep;
}

std::vector<ConvergenceRow> convergence_study(const EnsembleSpec& ens,
                                              const std::vector<double>& N_list,
                                              const ConvergenceOptions& opts) {
  if (N_list.size() < 2) throw std::invalid_argument("convergence_study: need at least two N values");
  for (std::size_t i = 0; i + 1 < N_list.size(); ++i) {
    const bool doubles = std::abs(N_list[i + 1] - 2.0 * N_list[i]) <= 1e-9;
    const bool repeats = std::abs(N_list[i + 1] - N_list[i]) <= 1e-9;  // degenerate sanity ladder
    if (!doubles && !repeats)
      throw std::invalid_argument("convergence_study: N_list must be dyadic (each entry doubles)");
  }

  const PhaseState data = sample_pair(ens, opts.sample_index);
  const double n_max = N_list.back();
  const int rb_max = FilterSpec(n_max).retained_band();
  const int grid = [&] {
    const int b = rb_max;
    int g = std::max(opts.oversample * (2 * b + 1), 4 * b + 1);
    return next_fast_size(g);
  }();

  std::vector<double> times = SolverConfig::stride_times(opts.T, opts.sample_stride);
  const double residual_time = std::min(1.0, opts.T);  // defect evaluated here
  if (std::none_of(times.begin(), times.end(),
                   [&](double t) { return std::abs(t - residual_time) < 1e-9; }))
    times.push_back(residual_time);
  std::sort(times.begin(), times.end());

  struct Solve {
    TrajectoryRecord traj;   // full states of u_N
    TrajectoryRecord wrec;   // decomposed states
    std::vector<double> residual;
    double N;
  };
  std::vector<Solve> solves(N_list.size());
  const int workers = resolve_workers(opts.workers);
  parallel_for(N_list.size(), workers, [&](std::size_t i, int) {
    TransformCache tc;
    SolverConfig cfg;
    cfg.filter = FilterSpec(N_list[i]);
    cfg.dt = opts.dt;
    cfg.t_end = opts.T;
    cfg.sample_times = times;
    cfg.oversample = opts.oversample;
    cfg.lean = false;
    cfg.eps_norm = opts.eps;
    cfg.grid_override = grid;
    Solve s;
    s.N = N_list[i];
    s.traj = evolve(data, cfg, &tc);
    s.wrec = nonlinear_component(s.traj, data, 0.0);
    s.residual = residual_untruncated(s.traj, residual_tau(data.dim()), &tc);
    solves[i] = std::move(s);
  });

  std::size_t t1_index = 0;
  for (std::size_t i = 0; i < solves[0].traj.times.size(); ++i)
    if (std::abs(solves[0].traj.times[i] - residual_time) < 1e-9) t1_index = i;

  // filtered-agreement of each solve: S_K(u_N) vs S_K(lin + w_N), and the
  // composed form S_K(S_N(u_N)) vs S_K(u_N), over dyadic K <= N-2
  auto agreement = [&](const Solve& s) {
    const int box = s.traj.states.front().cutoff();
    const PhaseState high0 = project_high(embed(data, box), 0.0);
    const FilterSpec fn(s.N);
    double err = 0;
    for (std::size_t i = 0; i < s.traj.times.size(); ++i) {
      const FourierField& u = s.traj.states[i].u;
      const FourierField recon = free_evolve(high0, s.traj.times[i]).u + s.wrec.states[i].u;
      for (double K = 2; K <= s.N - 2; K *= 2) {
        const FilterSpec fk(K);
        err = std::max(err, max_coeff_difference(smooth_filter(u, fk), smooth_filter(recon, fk)));
        err = std::max(err, max_coeff_difference(smooth_filter(smooth_filter(u, fn), fk),
                                                 smooth_filter(u, fk)));
      }
    }
    return err;
  };

  std::vector<ConvergenceRow> rows;
  TransformCache tc;
  for (std::size_t i = 0; i + 1 < N_list.size(); ++i) {
    const Solve& a = solves[i];
    const Solve& c = solves[i + 1];
    ConvergenceRow row;
    row.N_coarse = a.N;
    row.N_fine = c.N;
    const int box = std::max(a.traj.states.front().cutoff(), c.traj.states.front().cutoff());
    double l3_acc = 0, prev_v3 = 0, prev_t = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const FourierField dw = embed(a.wrec.states[k].u, box) - embed(c.wrec.states[k].u, box);
      const FourierField dwt = embed(a.wrec.states[k].ut, box) - embed(c.wrec.states[k].ut, box);
      row.max_w_diff = std::max(row.max_w_diff, sobolev_norm(dw, 1.0 - opts.eps));
      row.max_wt_diff = std::max(row.max_wt_diff, sobolev_norm(dwt, -opts.eps));
      const FourierField du = embed(smooth_filter(a.traj.states[k].u, FilterSpec(a.N)), box) -
                              embed(smooth_filter(c.traj.states[k].u, FilterSpec(c.N)), box);
      const double v = lp_norm(du, 3.0, 3, &tc);
      const double v3 = v * v * v;
      if (k > 0) l3_acc += trapezoid_increment(prev_t, times[k], prev_v3, v3);
      prev_v3 = v3;
      prev_t = times[k];
    }
    row.l3_spacetime = std::cbrt(l3_acc);
    row.agreement_err = std::max(agreement(a), agreement(c));
    row.residual_coarse = a.residual[t1_index];
    row.residual_fine = c.residual[t1_index];
    rows.push_back(row);
  }
  return rows;
}

}  // namespace supwave
