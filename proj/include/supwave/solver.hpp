#pragma once

#include <iosfwd>
#include <optional>

#include "supwave/propagator.hpp"
#include "supwave/transform.hpp"

namespace supwave {

struct SolverConfig {
  FilterSpec filter{16.0};
  double dt = 1e-3;
  double t_end = 1.0;
  std::vector<double> sample_times;  // snapped to step boundaries; empty -> {t_end}
  int oversample = 2;                // grid factor over (2B+1), B = filtered band
  bool lean = true;                  // norms only; full mode stores states
  bool record_neighbors = false;     // also keep states at t -+ dt per sample
  double decomposition_M = 0.0;      // level for the tracked w = u - S(t) Pi^M(data)
  double eps_norm = 0.1;             // epsilon in the recorded H^(1-eps) norm
  int grid_override = 0;             // force the FFT grid (convergence studies)

  static std::vector<double> stride_times(double t_end, double stride);
};

struct TrajectoryRecord {
  // resolved solve parameters, echoed for downstream consumers
  double filter_N = 0;
  double dt = 0;
  int oversample = 2;
  double decomposition_M = 0;
  double eps_norm = 0.1;
  bool lean = true;

  std::vector<double> times;
  std::vector<double> energies;  // E_N of the full state
  std::vector<double> h1_w;      // ||(w, dt w)||_{H^1}
  std::vector<double> h1me_w;    // ||w||_{H^(1-eps)}
  std::vector<double> l4_SNu;    // ||S_N u||_{L^4}

  std::vector<PhaseState> states;
  std::vector<PhaseState> states_prev;  // t - dt neighbors (full mode + neighbors)
  std::vector<PhaseState> states_next;  // t + dt
  std::vector<char> prev_ok, next_ok;

  std::size_t size() const { return times.size(); }
  bool has_states() const { return !states.empty(); }
};

// Conserved functional of the truncated flow:
// E_N = 1/2 (||u_t||_L2^2 + ||grad u||_L2^2) + 1/4 ||S_N u||_L4^4.
double energy(const PhaseState& state, const FilterSpec& filter, int oversample,
              TransformCache* cache = nullptr);

// Integrate d^2_t u = Lap u - S_N((S_N u)^3) by Strang splitting with the
// exact linear propagator; modes outside the filter support evolve exactly
// linearly. Second order, time reversible.
TrajectoryRecord evolve(const PhaseState& init, const SolverConfig& cfg,
                        TransformCache* cache = nullptr);

// Decompose a full-mode trajectory: w(t) = u(t) - S(t) Pi^M (base).
// The returned record holds the w states (and neighbors, when present)
// with refreshed H^1 / H^(1-eps) norms.
TrajectoryRecord nonlinear_component(const TrajectoryRecord& traj, const PhaseState& base,
                                     double M);

// || S_N((S_N u)^3) - u^3 ||_{H^-tau} per sample time: the defect between the
// truncated equation and the plain cubic wave equation along the trajectory.
std::vector<double> residual_untruncated(const TrajectoryRecord& traj, double tau,
                                         TransformCache* cache = nullptr);

inline double residual_tau(int dim) { return std::max(0.25 * dim, 1.0); }

// Embed a field/state into a larger storage box (coefficients preserved).
FourierField embed(const FourierField& f, int cutoff);
PhaseState embed(const PhaseState& st, int cutoff);

// Plain trajectory serialization: columns t, energy, h1_w, h1me_w, l4_SNu
// (+ residual when given). Values printed with %.17g.
void write_trajectory_csv(const TrajectoryRecord& rec, std::ostream& os,
                          const std::vector<double>* residuals = nullptr);

// Full states as field snapshots: <prefix>_<k>_u.spwv / <prefix>_<k>_ut.spwv.
void write_state_snapshots(const TrajectoryRecord& rec, const std::string& prefix);

}  // namespace supwave
