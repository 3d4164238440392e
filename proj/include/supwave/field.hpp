#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "supwave/lattice.hpp"

namespace supwave {

// Smooth cutoff profile: chi(r) = psi(2|r| - 1) with psi the standard
// exponential bump transition, so chi == 1 on [-1/2, 1/2], chi == 0 outside
// (-1, 1), smooth and monotone in between.
double chi_profile(double r);

struct FilterSpec {
  double N = 1.0;
  FilterSpec() = default;
  explicit FilterSpec(double cutoff) : N(cutoff) {
    if (!(N > 0)) throw std::invalid_argument("FilterSpec: N must be positive");
  }
  // multiplier chi(|n|^2 / N^2) from the squared Euclidean frequency
  double multiplier_norm2(double norm2) const { return chi_profile(norm2 / (N * N)); }
  // largest per-component frequency the filter lets through
  int retained_band() const {
    int b = static_cast<int>(std::ceil(N)) - 1;
    while (static_cast<double>(b + 1) * (b + 1) < N * N) ++b;  // |n|^2 < N^2 survives
    return b < 0 ? 0 : b;
  }
};

// Real trigonometric series on T^d: mean + sum over canonical half-lattice
// indices of b_n cos(n.x) + c_n sin(n.x). Dense storage over the box
// |n|_inf <= cutoff; treated as immutable by all operations (they return new
// fields), so fields are safe to share across workers.
class FourierField {
 public:
  FourierField(int dim, int cutoff)
      : basis_(CanonicalBasis::get(dim, cutoff)),
        mean_(0.0),
        b_(static_cast<std::size_t>(basis_->num_modes()), 0.0),
        c_(static_cast<std::size_t>(basis_->num_modes()), 0.0) {
    if (dim < 3) throw std::invalid_argument("FourierField: dim must be >= 3");
  }

  int dim() const { return basis_->dim(); }
  int cutoff() const { return basis_->box(); }
  const CanonicalBasis& basis() const { return *basis_; }
  std::shared_ptr<const CanonicalBasis> basis_ptr() const { return basis_; }
  std::int64_t num_modes() const { return basis_->num_modes(); }

  double mean() const { return mean_; }
  double& mean() { return mean_; }
  std::span<const double> cosc() const { return b_; }
  std::span<const double> sinc() const { return c_; }
  std::span<double> cosc() { return b_; }
  std::span<double> sinc() { return c_; }

  // (b, c) of an arbitrary nonzero integer vector; zero outside the box.
  std::pair<double, double> coefficient(const std::vector<int>& n) const;
  void set_coefficient(const std::vector<int>& n, double b, double c);

  // pointwise evaluation (slow; for tests and small fields)
  double operator()(const std::vector<double>& x) const;

  FourierField& operator+=(const FourierField& o);
  FourierField& operator-=(const FourierField& o);
  FourierField& operator*=(double a);

 private:
  std::shared_ptr<const CanonicalBasis> basis_;
  double mean_;
  std::vector<double> b_, c_;
};

FourierField operator+(FourierField a, const FourierField& b);
FourierField operator-(FourierField a, const FourierField& b);
FourierField operator*(double a, FourierField f);

// max |coefficient difference| over the union of supports (storage-order and
// box-size agnostic)
double max_coeff_difference(const FourierField& a, const FourierField& b);

// A phase-space point (u, du/dt) of the wave flow.
struct PhaseState {
  FourierField u;
  FourierField ut;
  PhaseState(FourierField u_, FourierField ut_) : u(std::move(u_)), ut(std::move(ut_)) {
    if (u.dim() != ut.dim() || u.cutoff() != ut.cutoff())
      throw std::invalid_argument("PhaseState: components must share dim and cutoff");
  }
  static PhaseState zero(int dim, int cutoff) {
    return PhaseState(FourierField(dim, cutoff), FourierField(dim, cutoff));
  }
  int dim() const { return u.dim(); }
  int cutoff() const { return u.cutoff(); }
};

// H^sigma norm with the physical Lebesgue normalization on (R/2piZ)^d:
// ||f||^2 = (2pi)^d a^2 + (2pi)^d/2 * sum <n>^(2 sigma) (b^2 + c^2).
double sobolev_norm(const FourierField& f, double sigma);

// Product norm on H^s x H^(s-1) pairs.
double pair_norm(const PhaseState& st, double s);

// Sharp projectors: project_low keeps the mean and Euclidean |n| <= M,
// project_high is its complement (removes the mean).
FourierField project_low(const FourierField& f, double M);
FourierField project_high(const FourierField& f, double M);
PhaseState project_low(const PhaseState& st, double M);
PhaseState project_high(const PhaseState& st, double M);

// Smooth filter: multiplies each nonzero mode by chi(|n|^2/N^2), mean intact.
FourierField smooth_filter(const FourierField& f, const FilterSpec& spec);
PhaseState smooth_filter(const PhaseState& st, const FilterSpec& spec);

}  // namespace supwave
