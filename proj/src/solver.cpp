#include "supwave/solver.hpp"

#include "supwave/snapshot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <cmath>
#include <numbers>
#include <set>

namespace supwave {

namespace {

double volume(int d) {
  double v = 1;
  for (int j = 0; j < d; ++j) v *= 2.0 * std::numbers::pi;
  return v;
}

// grid large enough that (i) the cube of the filtered field cannot alias onto
// any retained mode and (ii) the quartic energy integrand is integrated
// exactly: G >= 3B + K + 1 with K = min(retained band, 3B), and G >= 2K+2 so
// the result is representable
int cubic_grid(int band, int retained, int oversample, int override_pts) {
  const int out = std::min(retained, 3 * band);
  int g = std::max(oversample * (2 * band + 1), 3 * band + out + 1);
  g = std::max(g, 2 * out + 2);
  g = next_fast_size(g);
  if (override_pts > 0) {
    if (override_pts < g) throw std::invalid_argument("evolve: grid_override below the dealiasing bound");
    g = override_pts;
  }
  return g;
}

}  // namespace

FourierField embed(const FourierField& f, int cutoff) {
  if (cutoff < f.cutoff()) throw std::invalid_argument("embed: target box smaller than source");
  if (cutoff == f.cutoff()) return f;
  FourierField g(f.dim(), cutoff);
  g.mean() = f.mean();
  const auto& basis = f.basis();
  const auto& target = g.basis();
  auto gb = g.cosc();
  auto gc = g.sinc();
  const auto b = f.cosc(), c = f.sinc();
  for (std::int64_t r = 0; r < basis.num_modes(); ++r) {
    const auto lk = target.find(basis.mode(r));
    // canonical stays canonical in a larger box
    gb[static_cast<std::size_t>(lk.rank)] = b[static_cast<std::size_t>(r)];
    gc[static_cast<std::size_t>(lk.rank)] = c[static_cast<std::size_t>(r)];
  }
  return g;
}

PhaseState embed(const PhaseState& st, int cutoff) {
  return PhaseState(embed(st.u, cutoff), embed(st.ut, cutoff));
}

std::vector<double> SolverConfig::stride_times(double t_end, double stride) {
  std::vector<double> ts;
  for (double t = 0.0; t <= t_end + 1e-12; t += stride) ts.push_back(std::min(t, t_end));
  return ts;
}

double energy(const PhaseState& state, const FilterSpec& filter, int oversample,
              TransformCache* cache) {
  if (oversample < 2) throw std::invalid_argument("energy: oversample < 2 cannot dealias the quartic");
  const double vol = volume(state.dim());
  const auto& n2 = state.u.basis().norm2s();
  const auto ub = state.u.cosc(), uc = state.u.sinc();
  const auto vb = state.ut.cosc(), vc = state.ut.sinc();
  double grad = 0, kin = 0;
  for (std::size_t i = 0; i < n2.size(); ++i) {
    grad += n2[i] * (ub[i] * ub[i] + uc[i] * uc[i]);
    kin += vb[i] * vb[i] + vc[i] * vc[i];
  }
  const double quad = 0.5 * (vol * state.ut.mean() * state.ut.mean() + 0.5 * vol * kin) +
                      0.5 * (0.5 * vol * grad);
  const double l4 = lp_norm(smooth_filter(state.u, filter), 4.0, oversample, cache);
  return quad + 0.25 * l4 * l4 * l4 * l4;
}

namespace {

// Strang stepper on flat coefficient arrays. The complex scatter/gather maps
// are precomputed for the retained (chi > 0) modes.
class WaveIntegrator {
 public:
  WaveIntegrator(const PhaseState& init, const SolverConfig& cfg, TransformCache& tc)
      : cfg_(cfg), dim_(init.dim()) {
    if (!(cfg.dt > 0)) throw std::invalid_argument("evolve: dt must be positive");
    const int rb = cfg.filter.retained_band();
    box_ = std::max(init.cutoff(), rb);
    const PhaseState st = embed(init, box_);
    basis_ = st.u.basis_ptr();
    const auto nm = static_cast<std::size_t>(basis_->num_modes());
    ub_.assign(st.u.cosc().begin(), st.u.cosc().end());
    uc_.assign(st.u.sinc().begin(), st.u.sinc().end());
    vb_.assign(st.ut.cosc().begin(), st.ut.cosc().end());
    vc_.assign(st.ut.sinc().begin(), st.ut.sinc().end());
    m0_ = st.u.mean();
    m1_ = st.ut.mean();

    const auto& n2 = basis_->norm2s();
    cosf_.resize(nm);
    sincf_.resize(nm);
    msinf_.resize(nm);
    for (std::size_t i = 0; i < nm; ++i) {
      const double w = std::sqrt(n2[i]);
      cosf_[i] = std::cos(cfg.dt * w);
      const double sn = std::sin(cfg.dt * w);
      sincf_[i] = sn / w;
      msinf_[i] = -w * sn;
    }

    // retained modes and their spectral cells
    int band = 0;
    for (std::size_t i = 0; i < nm; ++i) {
      const double chi = cfg.filter.multiplier_norm2(n2[i]);
      if (chi > 0.0) {
        const int* n = basis_->mode(static_cast<std::int64_t>(i));
        for (int j = 0; j < dim_; ++j) band = std::max(band, std::abs(n[j]));
        ret_.push_back(static_cast<std::int64_t>(i));
        chi_.push_back(chi);
      }
    }
    grid_ = cubic_grid(band, rb, cfg.oversample, cfg.grid_override);
    transform_ = &tc.get(dim_, grid_);
    cells_.reserve(ret_.size());
    for (std::size_t k = 0; k < ret_.size(); ++k) {
      const int* n = basis_->mode(ret_[k]);
      bool conj;
      int w;
      Cell cell;
      cell.primary = transform_->cell_of(n, conj, w);
      cell.conj = conj;
      cell.mirror = -1;
      if (n[dim_ - 1] == 0) {
        std::vector<int> neg(static_cast<std::size_t>(dim_));
        for (int j = 0; j < dim_; ++j) neg[static_cast<std::size_t>(j)] = -n[j];
        cell.mirror = transform_->cell_of(neg.data(), conj, w);
      }
      cells_.push_back(cell);
    }
  }

  int box() const { return box_; }
  int grid() const { return grid_; }

  // scatter S_N u into the transform's complex buffer
  void load_filtered_u() {
    auto* cplx = transform_->cplx_data();
    std::fill(cplx, cplx + transform_->cplx_size(), std::complex<double>(0.0, 0.0));
    cplx[0] = m0_;  // chi(0) = 1
    for (std::size_t k = 0; k < ret_.size(); ++k) {
      const auto i = static_cast<std::size_t>(ret_[k]);
      const std::complex<double> uhat(0.5 * chi_[k] * ub_[i], -0.5 * chi_[k] * uc_[i]);
      const Cell& cell = cells_[k];
      if (cell.conj) {
        cplx[cell.primary] = std::conj(uhat);
      } else {
        cplx[cell.primary] = uhat;
        if (cell.mirror >= 0) cplx[cell.mirror] = std::conj(uhat);
      }
    }
  }

  void drift() {
    const std::size_t nm = ub_.size();
    for (std::size_t i = 0; i < nm; ++i) {
      const double b = ub_[i], c = uc_[i], db = vb_[i], dc = vc_[i];
      ub_[i] = cosf_[i] * b + sincf_[i] * db;
      uc_[i] = cosf_[i] * c + sincf_[i] * dc;
      vb_[i] = msinf_[i] * b + cosf_[i] * db;
      vc_[i] = msinf_[i] * c + cosf_[i] * dc;
    }
    m0_ += cfg_.dt * m1_;
  }

  void half_kick() { kick_impl(0.5 * cfg_.dt); }
  void kick() { kick_impl(cfg_.dt); }

  void kick_impl(double dt) {
    load_filtered_u();
    transform_->execute_c2r();
    auto* v = transform_->real_data();
    const std::int64_t n = transform_->real_size();
    for (std::int64_t i = 0; i < n; ++i) v[i] = v[i] * v[i] * v[i];
    transform_->execute_r2c();
    const auto* cplx = transform_->cplx_data();
    const double scale = dt / static_cast<double>(n);
    for (std::size_t k = 0; k < ret_.size(); ++k) {
      const auto i = static_cast<std::size_t>(ret_[k]);
      const Cell& cell = cells_[k];
      std::complex<double> uhat = cplx[cell.primary];
      if (cell.conj) uhat = std::conj(uhat);
      vb_[i] -= scale * chi_[k] * 2.0 * uhat.real();
      vc_[i] -= scale * chi_[k] * -2.0 * uhat.imag();
    }
    m1_ -= scale * cplx[0].real();
  }

  // m consecutive Strang steps (kick-drift-kick) with interior half-kicks
  // fused: B(h) [A B(dt)]^(m-1) A B(h). The fusion is exact: the kick leaves
  // u untouched, so two adjacent half-kicks equal one full kick.
  void run_steps(std::int64_t m) {
    if (m <= 0) return;
    half_kick();
    for (std::int64_t j = 0; j < m; ++j) {
      drift();
      if (j + 1 < m)
        kick();
      else
        half_kick();
    }
  }

  PhaseState state() const {
    PhaseState st = PhaseState::zero(dim_, box_);
    std::copy(ub_.begin(), ub_.end(), st.u.cosc().begin());
    std::copy(uc_.begin(), uc_.end(), st.u.sinc().begin());
    std::copy(vb_.begin(), vb_.end(), st.ut.cosc().begin());
    std::copy(vc_.begin(), vc_.end(), st.ut.sinc().begin());
    st.u.mean() = m0_;
    st.ut.mean() = m1_;
    return st;
  }

  // quadratic energy (spectral) + quartic term via one grid pass; the grid
  // values also give ||S_N u||_L4
  std::pair<double, double> energy_and_l4() {
    const double vol = volume(dim_);
    const auto& n2 = basis_->norm2s();
    double grad = 0, kin = 0;
    for (std::size_t i = 0; i < ub_.size(); ++i) {
      grad += n2[i] * (ub_[i] * ub_[i] + uc_[i] * uc_[i]);
      kin += vb_[i] * vb_[i] + vc_[i] * vc_[i];
    }
    load_filtered_u();
    transform_->execute_c2r();
    const auto* v = transform_->real_data();
    const std::int64_t n = transform_->real_size();
    double q = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double v2 = v[i] * v[i];
      q += v2 * v2;
    }
    const double w = std::pow(2.0 * std::numbers::pi / grid_, dim_);
    const double quartic = w * q;
    const double e = 0.5 * (vol * m1_ * m1_ + 0.5 * vol * (kin + grad)) + 0.25 * quartic;
    return {e, std::pow(quartic, 0.25)};
  }

  // w = state - S(t) Pi^M(init data); returns (||(w,w_t)||_H1, ||w||_H(1-eps))
  std::pair<double, double> w_norms(const PhaseState& data, double M, double t, double eps) const {
    const double vol = volume(dim_);
    const auto& n2 = basis_->norm2s();
    const auto db = data.u.cosc(), dc = data.u.sinc();
    const auto eb = data.ut.cosc(), ec = data.ut.sinc();
    const double m2 = M * M;
    double h1u = 0, h1v = 0, hme = 0;
    for (std::size_t i = 0; i < ub_.size(); ++i) {
      double wb = ub_[i], wc = uc_[i], wdb = vb_[i], wdc = vc_[i];
      if (n2[i] > m2) {
        const double w = std::sqrt(n2[i]);
        const double cs = std::cos(t * w), sn = std::sin(t * w);
        wb -= cs * db[i] + sn / w * eb[i];
        wc -= cs * dc[i] + sn / w * ec[i];
        wdb -= -w * sn * db[i] + cs * eb[i];
        wdc -= -w * sn * dc[i] + cs * ec[i];
      }
      const double pu = wb * wb + wc * wc, pv = wdb * wdb + wdc * wdc;
      h1u += (1.0 + n2[i]) * pu;
      h1v += pv;
      hme += std::pow(1.0 + n2[i], 1.0 - eps) * pu;
    }
    const double h1 = std::sqrt(vol * m0_ * m0_ + 0.5 * vol * h1u + vol * m1_ * m1_ + 0.5 * vol * h1v);
    const double h1me = std::sqrt(vol * m0_ * m0_ + 0.5 * vol * hme);
    return {h1, h1me};
  }

 private:
  struct Cell {
    std::int64_t primary;
    std::int64_t mirror;
    bool conj;
  };

  SolverConfig cfg_;
  int dim_, box_, grid_;
  std::shared_ptr<const CanonicalBasis> basis_;
  std::vector<double> ub_, uc_, vb_, vc_;
  double m0_ = 0, m1_ = 0;
  std::vector<double> cosf_, sincf_, msinf_;
  std::vector<std::int64_t> ret_;
  std::vector<double> chi_;
  std::vector<Cell> cells_;
  SpectralTransform* transform_;
};

}  // namespace

TrajectoryRecord evolve(const PhaseState& init, const SolverConfig& cfg, TransformCache* cache) {
  TransformCache local;
  TransformCache& tc = cache ? *cache : local;

  const auto n_steps = static_cast<std::int64_t>(std::llround(cfg.t_end / cfg.dt));
  if (std::abs(n_steps * cfg.dt - cfg.t_end) > 1e-9 * std::max(1.0, cfg.t_end))
    throw std::invalid_argument("evolve: t_end must be a whole number of steps");

  std::vector<double> wanted = cfg.sample_times.empty() ? std::vector<double>{cfg.t_end}
                                                        : cfg.sample_times;
  std::set<std::int64_t> sample_steps;
  for (double t : wanted) {
    if (t < -1e-12 || t > cfg.t_end + 1e-12)
      throw std::invalid_argument("evolve: sample time outside [0, t_end]");
    sample_steps.insert(std::clamp<std::int64_t>(std::llround(t / cfg.dt), 0, n_steps));
  }

  WaveIntegrator integ(init, cfg, tc);
  const PhaseState data = embed(init, integ.box());

  TrajectoryRecord rec;
  rec.filter_N = cfg.filter.N;
  rec.dt = cfg.dt;
  rec.oversample = cfg.oversample;
  rec.decomposition_M = cfg.decomposition_M;
  rec.eps_norm = cfg.eps_norm;
  rec.lean = cfg.lean;

  // stop points: steps where the state must be materialized
  std::set<std::int64_t> stops = sample_steps;
  if (!cfg.lean && cfg.record_neighbors) {
    for (std::int64_t k : sample_steps) {
      if (k - 1 >= 0) stops.insert(k - 1);
      if (k + 1 <= n_steps) stops.insert(k + 1);
    }
  }
  stops.insert(0);
  stops.insert(n_steps);

  std::optional<PhaseState> prev_state;
  std::int64_t prev_stop = 0;
  std::int64_t pending_next = -1;  // record index waiting for its t+dt state

  for (std::int64_t k : stops) {
    integ.run_steps(k - prev_stop);
    prev_stop = k;
    const bool sampled = sample_steps.count(k) > 0;
    if (!cfg.lean && cfg.record_neighbors && pending_next >= 0) {
      rec.states_next[static_cast<std::size_t>(pending_next)] = integ.state();
      rec.next_ok[static_cast<std::size_t>(pending_next)] = 1;
      pending_next = -1;
    }
    if (sampled) {
      const double t = static_cast<double>(k) * cfg.dt;
      rec.times.push_back(t);
      auto [e, l4] = integ.energy_and_l4();
      rec.energies.push_back(e);
      rec.l4_SNu.push_back(l4);
      auto [h1, h1me] = integ.w_norms(data, cfg.decomposition_M, t, cfg.eps_norm);
      rec.h1_w.push_back(h1);
      rec.h1me_w.push_back(h1me);
      if (!cfg.lean) {
        rec.states.push_back(integ.state());
        if (cfg.record_neighbors) {
          const bool has_prev = prev_state.has_value();
          rec.states_prev.push_back(has_prev ? *prev_state : rec.states.back());
          rec.prev_ok.push_back(has_prev ? 1 : 0);
          rec.states_next.push_back(rec.states.back());
          rec.next_ok.push_back(0);
          if (k < n_steps) pending_next = static_cast<std::int64_t>(rec.times.size()) - 1;
        }
      }
    }
    if (!cfg.lean && cfg.record_neighbors && sample_steps.count(k + 1) > 0)
      prev_state = integ.state();
    else
      prev_state.reset();
  }
  return rec;
}

TrajectoryRecord nonlinear_component(const TrajectoryRecord& traj, const PhaseState& base,
                                     double M) {
  if (!traj.has_states())
    throw std::invalid_argument("nonlinear_component: trajectory has no states (lean mode)");
  TrajectoryRecord out = traj;
  out.decomposition_M = M;
  out.states.clear();
  out.states_prev.clear();
  out.states_next.clear();
  const PhaseState big = embed(base, traj.states.front().cutoff());
  const PhaseState high = project_high(big, M);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const double t = traj.times[i];
    auto subtract_lin = [&](const PhaseState& st, double at) {
      const PhaseState lin = free_evolve(high, at);
      return PhaseState(st.u - lin.u, st.ut - lin.ut);
    };
    PhaseState w = subtract_lin(traj.states[i], t);
    out.h1_w[i] = pair_norm(w, 1.0);
    out.h1me_w[i] = sobolev_norm(w.u, 1.0 - traj.eps_norm);
    out.states.push_back(std::move(w));
    if (!traj.states_prev.empty()) {
      out.states_prev.push_back(subtract_lin(traj.states_prev[i], t - traj.dt));
      out.states_next.push_back(subtract_lin(traj.states_next[i], t + traj.dt));
    }
  }
  return out;
}

std::vector<double> residual_untruncated(const TrajectoryRecord& traj, double tau,
                                         TransformCache* cache) {
  if (!traj.has_states())
    throw std::invalid_argument("residual_untruncated: trajectory has no states (lean mode)");
  TransformCache local;
  TransformCache& tc = cache ? *cache : local;
  const FilterSpec filter(traj.filter_N);
  std::vector<double> out;
  out.reserve(traj.size());
  const int dim = traj.states.front().dim();
  const double vol = volume(dim);
  std::vector<int> m(static_cast<std::size_t>(dim));
  for (const PhaseState& st : traj.states) {
    const FourierField& u = st.u;
    // grid exact for every mode of u^3 (band 3L)
    const int g3 = next_fast_size(6 * u.cutoff() + 1);
    auto& t = tc.get(dim, g3);
    std::vector<double> vals(static_cast<std::size_t>(t.real_size()));
    t.synthesize(u, vals.data());
    for (double& v : vals) v = v * v * v;
    const auto* spec = t.forward_raw(vals.data());
    // oversample 3 always resolves the full cube of the filtered field
    const FourierField cub = cubic_term(u, filter, std::max(3, traj.oversample), &tc);
    double acc = 0;
    for (std::int64_t cell = 0; cell < t.cplx_size(); ++cell) {
      int weight;
      t.frequency_of_cell(cell, m.data(), weight);
      std::complex<double> d = spec[cell];
      bool zero = true;
      double n2 = 0;
      for (int j = 0; j < dim; ++j) {
        if (m[static_cast<std::size_t>(j)] != 0) zero = false;
        n2 += static_cast<double>(m[static_cast<std::size_t>(j)]) * m[static_cast<std::size_t>(j)];
      }
      if (zero) {
        d -= cub.mean();
      } else {
        const auto [b, c] = cub.coefficient(m);
        d -= std::complex<double>(0.5 * b, -0.5 * c);
      }
      acc += weight * std::norm(d) * std::pow(1.0 + n2, -tau);
    }
    out.push_back(std::sqrt(vol * acc));
  }
  return out;
}

void write_trajectory_csv(const TrajectoryRecord& rec, std::ostream& os,
                          const std::vector<double>* residuals) {
  if (residuals && residuals->size() != rec.size())
    throw std::invalid_argument("write_trajectory_csv: residual column length mismatch");
  os << "t,energy,h1_w,h1me_w,l4_SNu" << (residuals ? ",residual" : "") << "\n";
  char buf[256];
  for (std::size_t i = 0; i < rec.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g", rec.times[i],
                  rec.energies[i], rec.h1_w[i], rec.h1me_w[i], rec.l4_SNu[i]);
    os << buf;
    if (residuals) {
      std::snprintf(buf, sizeof buf, ",%.17g", (*residuals)[i]);
      os << buf;
    }
    os << "\n";
  }
}

void write_state_snapshots(const TrajectoryRecord& rec, const std::string& prefix) {
  if (!rec.has_states())
    throw std::invalid_argument("write_state_snapshots: trajectory has no states (lean mode)");
  for (std::size_t i = 0; i < rec.states.size(); ++i) {
    write_snapshot(rec.states[i].u, prefix + "_" + std::to_string(i) + "_u.spwv");
    write_snapshot(rec.states[i].ut, prefix + "_" + std::to_string(i) + "_ut.spwv");
  }
}

}  // namespace supwave
