#include "supwave/field.hpp"

#include <algorithm>
#include <numbers>

namespace supwave {

namespace {
double bump(double t) {  // exp(-1/t) extended by 0
  return t > 0 ? std::exp(-1.0 / t) : 0.0;
}
}  // namespace

double chi_profile(double r) {
  const double t = 2.0 * std::abs(r) - 1.0;
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double h = bump(t), g = bump(1.0 - t);
  return g / (h + g);
}

std::pair<double, double> FourierField::coefficient(const std::vector<int>& n) const {
  if (static_cast<int>(n.size()) != dim())
    throw std::invalid_argument("coefficient: index dimension mismatch");
  const auto lk = basis_->find(n.data());
  if (lk.rank < 0) return {0.0, 0.0};
  const auto r = static_cast<std::size_t>(lk.rank);
  return {b_[r], lk.sign * c_[r]};
}

void FourierField::set_coefficient(const std::vector<int>& n, double b, double c) {
  if (static_cast<int>(n.size()) != dim())
    throw std::invalid_argument("set_coefficient: index dimension mismatch");
  const auto lk = basis_->find(n.data());
  if (lk.rank < 0) throw std::out_of_range("set_coefficient: index outside the storage box");
  const auto r = static_cast<std::size_t>(lk.rank);
  b_[r] = b;
  c_[r] = lk.sign * c;
}

double FourierField::operator()(const std::vector<double>& x) const {
  double v = mean_;
  const std::int64_t m = num_modes();
  for (std::int64_t r = 0; r < m; ++r) {
    const int* n = basis_->mode(r);
    double phase = 0;
    for (int j = 0; j < dim(); ++j) phase += n[j] * x[static_cast<std::size_t>(j)];
    const auto idx = static_cast<std::size_t>(r);
    v += b_[idx] * std::cos(phase) + c_[idx] * std::sin(phase);
  }
  return v;
}

FourierField& FourierField::operator+=(const FourierField& o) {
  if (o.basis_ != basis_) throw std::invalid_argument("field +=: basis mismatch");
  mean_ += o.mean_;
  for (std::size_t i = 0; i < b_.size(); ++i) {
    b_[i] += o.b_[i];
    c_[i] += o.c_[i];
  }
  return *this;
}

FourierField& FourierField::operator-=(const FourierField& o) {
  if (o.basis_ != basis_) throw std::invalid_argument("field -=: basis mismatch");
  mean_ -= o.mean_;
  for (std::size_t i = 0; i < b_.size(); ++i) {
    b_[i] -= o.b_[i];
    c_[i] -= o.c_[i];
  }
  return *this;
}

FourierField& FourierField::operator*=(double a) {
  mean_ *= a;
  for (std::size_t i = 0; i < b_.size(); ++i) {
    b_[i] *= a;
    c_[i] *= a;
  }
  return *this;
}

FourierField operator+(FourierField a, const FourierField& b) { return a += b; }
FourierField operator-(FourierField a, const FourierField& b) { return a -= b; }
FourierField operator*(double a, FourierField f) { return f *= a; }

double max_coeff_difference(const FourierField& a, const FourierField& b) {
  double m = std::abs(a.mean() - b.mean());
  const FourierField* big = &a;
  const FourierField* small = &b;
  if (small->cutoff() > big->cutoff()) std::swap(big, small);
  const auto& basis = big->basis();
  std::vector<int> n(static_cast<std::size_t>(big->dim()));
  for (std::int64_t r = 0; r < basis.num_modes(); ++r) {
    const int* comps = basis.mode(r);
    std::copy(comps, comps + big->dim(), n.begin());
    const auto [bb, bc] = big->coefficient(n);
    const auto [sb, sc] = small->coefficient(n);
    m = std::max(m, std::abs(bb - sb));
    m = std::max(m, std::abs(bc - sc));
  }
  return m;
}

namespace {
double two_pi_pow(int d) {
  double v = 1;
  for (int j = 0; j < d; ++j) v *= 2.0 * std::numbers::pi;
  return v;
}
}  // namespace

double sobolev_norm(const FourierField& f, double sigma) {
  const double vol = two_pi_pow(f.dim());
  double s = 0.0;
  const auto& n2 = f.basis().norm2s();
  const auto b = f.cosc(), c = f.sinc();
  for (std::size_t i = 0; i < n2.size(); ++i) {
    const double w = std::pow(1.0 + n2[i], sigma);
    s += w * (b[i] * b[i] + c[i] * c[i]);
  }
  return std::sqrt(vol * f.mean() * f.mean() + 0.5 * vol * s);
}

double pair_norm(const PhaseState& st, double s) {
  const double a = sobolev_norm(st.u, s);
  const double b = sobolev_norm(st.ut, s - 1.0);
  return std::sqrt(a * a + b * b);
}

FourierField project_low(const FourierField& f, double M) {
  if (M < 0) throw std::invalid_argument("project_low: M must be >= 0");
  FourierField g(f.dim(), f.cutoff());
  g.mean() = f.mean();
  const auto& n2 = f.basis().norm2s();
  const double m2 = M * M;
  auto gb = g.cosc();
  auto gc = g.sinc();
  const auto b = f.cosc(), c = f.sinc();
  for (std::size_t i = 0; i < n2.size(); ++i) {
    if (n2[i] <= m2) {
      gb[i] = b[i];
      gc[i] = c[i];
    }
  }
  return g;
}

FourierField project_high(const FourierField& f, double M) {
  if (M < 0) throw std::invalid_argument("project_high: M must be >= 0");
  FourierField g(f.dim(), f.cutoff());
  const auto& n2 = f.basis().norm2s();
  const double m2 = M * M;
  auto gb = g.cosc();
  auto gc = g.sinc();
  const auto b = f.cosc(), c = f.sinc();
  for (std::size_t i = 0; i < n2.size(); ++i) {
    if (n2[i] > m2) {
      gb[i] = b[i];
      gc[i] = c[i];
    }
  }
  return g;
}

PhaseState project_low(const PhaseState& st, double M) {
  return PhaseState(project_low(st.u, M), project_low(st.ut, M));
}
PhaseState project_high(const PhaseState& st, double M) {
  return PhaseState(project_high(st.u, M), project_high(st.ut, M));
}

FourierField smooth_filter(const FourierField& f, const FilterSpec& spec) {
  FourierField g(f.dim(), f.cutoff());
  g.mean() = f.mean();  // chi(0) = 1
  const auto& n2 = f.basis().norm2s();
  auto gb = g.cosc();
  auto gc = g.sinc();
  const auto b = f.cosc(), c = f.sinc();
  for (std::size_t i = 0; i < n2.size(); ++i) {
    const double m = spec.multiplier_norm2(n2[i]);
    if (m != 0.0) {
      gb[i] = m * b[i];
      gc[i] = m * c[i];
    }
  }
  return g;
}

PhaseState smooth_filter(const PhaseState& st, const FilterSpec& spec) {
  return PhaseState(smooth_filter(st.u, spec), smooth_filter(st.ut, spec));
}

}  // namespace supwave
