#include "supwave/transform.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <numbers>

namespace supwave {

namespace {
// FFTW's planner (create/destroy) is not reentrant
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}

int effective_band(const FourierField& f) {
  int band = 0;
  const auto& basis = f.basis();
  const auto b = f.cosc(), c = f.sinc();
  for (std::int64_t r = 0; r < basis.num_modes(); ++r) {
    const auto i = static_cast<std::size_t>(r);
    if (b[i] == 0.0 && c[i] == 0.0) continue;
    const int* n = basis.mode(r);
    for (int j = 0; j < f.dim(); ++j) band = std::max(band, std::abs(n[j]));
  }
  return band;
}
}  // namespace

double PhysicalGrid::quadrature_weight() const {
  double w = 1.0;
  for (int j = 0; j < dim; ++j) w *= 2.0 * std::numbers::pi / points;
  return w;
}

int next_fast_size(int n) {
  if (n < 1) n = 1;
  for (;; ++n) {
    int m = n;
    for (int p : {2, 3, 5, 7})
      while (m % p == 0) m /= p;
    if (m == 1) return n;
  }
}

SpectralTransform::SpectralTransform(int dim, int points) : dim_(dim), points_(points) {
  if (dim < 1 || dim > 6) throw std::invalid_argument("SpectralTransform: dim must be in [1,6]");
  if (points < 2) throw std::invalid_argument("SpectralTransform: need at least 2 points per dim");
  real_size_ = 1;
  for (int j = 0; j < dim; ++j) real_size_ *= points;
  cplx_size_ = real_size_ / points * (points / 2 + 1);

  std::lock_guard<std::mutex> lock(planner_mutex());
  real_ = fftw_alloc_real(static_cast<std::size_t>(real_size_));
  cplx_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(static_cast<std::size_t>(cplx_size_)));
  if (!real_ || !cplx_) throw std::bad_alloc();
  std::vector<int> n(static_cast<std::size_t>(dim), points);
  plan_c2r_ = fftw_plan_dft_c2r(dim, n.data(), reinterpret_cast<fftw_complex*>(cplx_), real_, FFTW_MEASURE);
  plan_r2c_ = fftw_plan_dft_r2c(dim, n.data(), real_, reinterpret_cast<fftw_complex*>(cplx_), FFTW_MEASURE);
  if (!plan_c2r_ || !plan_r2c_) throw std::runtime_error("SpectralTransform: FFTW planning failed");
}

SpectralTransform::~SpectralTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_c2r_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_r2c_));
  fftw_free(real_);
  fftw_free(cplx_);
}

std::int64_t SpectralTransform::cell_of(const int* m, bool& conjugate, int& count_weight) const {
  const int last = m[dim_ - 1];
  conjugate = last < 0;
  std::int64_t cell = 0;
  for (int j = 0; j < dim_ - 1; ++j) {
    int mj = conjugate ? -m[j] : m[j];
    cell = cell * points_ + (mj >= 0 ? mj : points_ + mj);
  }
  const int klast = conjugate ? -last : last;
  cell = cell * (points_ / 2 + 1) + klast;
  const bool self_mirrored = (klast == 0) || (points_ % 2 == 0 && klast == points_ / 2);
  count_weight = self_mirrored ? 1 : 2;
  return cell;
}

void SpectralTransform::frequency_of_cell(std::int64_t cell, int* m_out, int& count_weight) const {
  const int half = points_ / 2 + 1;
  const int klast = static_cast<int>(cell % half);
  cell /= half;
  for (int j = dim_ - 2; j >= 0; --j) {
    int k = static_cast<int>(cell % points_);
    cell /= points_;
    m_out[j] = (2 * k <= points_) ? k : k - points_;
  }
  m_out[dim_ - 1] = klast;
  const bool self_mirrored = (klast == 0) || (points_ % 2 == 0 && klast == points_ / 2);
  count_weight = self_mirrored ? 1 : 2;
}

void SpectralTransform::synthesize(const FourierField& f, double* out) {
  if (f.dim() != dim_) throw std::invalid_argument("synthesize: dimension mismatch");
  if (effective_band(f) > grid_band(points_))
    throw std::invalid_argument("synthesize: grid below the field bandwidth");

  std::fill(cplx_, cplx_ + cplx_size_, std::complex<double>(0.0, 0.0));
  cplx_[0] = f.mean();
  const auto& basis = f.basis();
  const auto b = f.cosc(), c = f.sinc();
  for (std::int64_t r = 0; r < basis.num_modes(); ++r) {
    const auto i = static_cast<std::size_t>(r);
    if (b[i] == 0.0 && c[i] == 0.0) continue;
    const int* n = basis.mode(r);
    const std::complex<double> uhat(0.5 * b[i], -0.5 * c[i]);
    bool conj;
    int w;
    const std::int64_t cell = cell_of(n, conj, w);
    cplx_[cell] = conj ? std::conj(uhat) : uhat;
    if (n[dim_ - 1] == 0) {
      // the mirrored lattice point sits in the same k_last = 0 hyperplane and
      // must be filled for Hermitian consistency
      std::vector<int> neg(static_cast<std::size_t>(dim_));
      for (int j = 0; j < dim_; ++j) neg[static_cast<std::size_t>(j)] = -n[j];
      const std::int64_t mcell = cell_of(neg.data(), conj, w);
      cplx_[mcell] = conj ? uhat : std::conj(uhat);
    }
  }
  fftw_execute(static_cast<fftw_plan>(plan_c2r_));
  if (out != real_) std::memcpy(out, real_, sizeof(double) * static_cast<std::size_t>(real_size_));
}

void SpectralTransform::execute_c2r() { fftw_execute(static_cast<fftw_plan>(plan_c2r_)); }
void SpectralTransform::execute_r2c() { fftw_execute(static_cast<fftw_plan>(plan_r2c_)); }

const std::complex<double>* SpectralTransform::forward_raw(const double* values) {
  if (values != real_)
    std::memcpy(real_, values, sizeof(double) * static_cast<std::size_t>(real_size_));
  fftw_execute(static_cast<fftw_plan>(plan_r2c_));
  const double scale = 1.0 / static_cast<double>(real_size_);
  for (std::int64_t i = 0; i < cplx_size_; ++i) cplx_[i] *= scale;
  return cplx_;
}

FourierField SpectralTransform::analyze(const double* values, int cutoff) {
  if (cutoff > grid_band(points_))
    throw std::invalid_argument("analyze: cutoff box exceeds the grid Nyquist limit");
  forward_raw(values);
  FourierField f(dim_, cutoff);
  f.mean() = cplx_[0].real();
  const auto& basis = f.basis();
  auto b = f.cosc();
  auto c = f.sinc();
  for (std::int64_t r = 0; r < basis.num_modes(); ++r) {
    bool conj;
    int w;
    const std::int64_t cell = cell_of(basis.mode(r), conj, w);
    const std::complex<double> uhat = conj ? std::conj(cplx_[cell]) : cplx_[cell];
    const auto i = static_cast<std::size_t>(r);
    b[i] = 2.0 * uhat.real();
    c[i] = -2.0 * uhat.imag();
  }
  return f;
}

SpectralTransform& TransformCache::get(int dim, int points) {
  auto& slot = cache_[{dim, points}];
  if (!slot) slot = std::make_unique<SpectralTransform>(dim, points);
  return *slot;
}

PhysicalGrid to_physical(const FourierField& f, int points, TransformCache* cache) {
  PhysicalGrid g;
  g.dim = f.dim();
  g.points = points;
  TransformCache local;
  auto& t = (cache ? *cache : local).get(f.dim(), points);
  g.values.resize(static_cast<std::size_t>(t.real_size()));
  t.synthesize(f, g.values.data());
  return g;
}

FourierField from_physical(const PhysicalGrid& g, int cutoff, TransformCache* cache) {
  TransformCache local;
  auto& t = (cache ? *cache : local).get(g.dim, g.points);
  if (g.size() != t.real_size()) throw std::invalid_argument("from_physical: value array size mismatch");
  return t.analyze(g.values.data(), cutoff);
}

double grid_lp_norm(const PhysicalGrid& g, double p) {
  if (std::isinf(p)) {
    double m = 0;
    for (double v : g.values) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0;
  if (p == 2.0) {
    for (double v : g.values) s += v * v;
  } else if (p == 4.0) {
    for (double v : g.values) {
      const double v2 = v * v;
      s += v2 * v2;
    }
  } else if (p == 6.0) {
    for (double v : g.values) {
      const double v2 = v * v;
      s += v2 * v2 * v2;
    }
  } else if (p == 3.0) {
    for (double v : g.values) s += std::abs(v) * v * v;
  } else {
    throw std::invalid_argument("grid_lp_norm: p must be one of {2,3,4,6,inf}");
  }
  return std::pow(g.quadrature_weight() * s, 1.0 / p);
}

double lp_norm(const FourierField& f, double p, int oversample, TransformCache* cache) {
  if (oversample < 1) throw std::invalid_argument("lp_norm: oversample must be >= 1");
  if (!(std::isinf(p) || p == 2.0 || p == 3.0 || p == 4.0 || p == 6.0))
    throw std::invalid_argument("lp_norm: p must be one of {2,3,4,6,inf}");
  const int band = effective_band(f);
  if (band == 0) {  // constant field: |a| * (2pi)^(d/p)
    const double a = std::abs(f.mean());
    if (std::isinf(p)) return a;
    double vol = 1.0;
    for (int j = 0; j < f.dim(); ++j) vol *= 2.0 * std::numbers::pi;
    return a * std::pow(vol, 1.0 / p);
  }
  const int g = next_fast_size(oversample * (2 * band + 1));
  return grid_lp_norm(to_physical(f, g, cache), p);
}

FourierField cubic_term(const FourierField& f, const FilterSpec& spec, int oversample,
                        TransformCache* cache) {
  FourierField ff = smooth_filter(f, spec);
  const int band = effective_band(ff);
  const int out_cut = std::min(spec.retained_band(), 3 * band);
  if (band == 0) {
    FourierField r(f.dim(), 0);
    r.mean() = ff.mean() * ff.mean() * ff.mean();
    return r;
  }
  const int g = next_fast_size(oversample * (2 * band + 1));
  // alias-free condition: a frequency of the cube (<= 3B) may not wrap onto a
  // retained output frequency (<= out_cut)
  if (g < 3 * band + out_cut + 1 || grid_band(g) < out_cut)
    throw std::invalid_argument(
        "cubic_term: grid too small to dealias the cube (raise oversample): G = " +
        std::to_string(g) + " < " + std::to_string(3 * band + out_cut + 1) +
        " for source band " + std::to_string(band) + ", retained band " + std::to_string(out_cut));
  TransformCache local;
  auto& t = (cache ? *cache : local).get(f.dim(), g);
  std::vector<double> values(static_cast<std::size_t>(t.real_size()));
  t.synthesize(ff, values.data());
  for (double& v : values) v = v * v * v;
  return smooth_filter(t.analyze(values.data(), out_cut), spec);
}

}  // namespace supwave
