#pragma once

#include <complex>
#include <map>
#include <memory>

#include "supwave/field.hpp"

namespace supwave {

// Values of a field at the uniform nodes x_k = 2 pi k / G, row-major over
// the d axes. Quadrature weight (2pi/G)^d per node.
struct PhysicalGrid {
  int dim = 0;
  int points = 0;  // per dimension
  std::vector<double> values;

  std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
  double quadrature_weight() const;
};

// Largest representable per-component frequency on a G-point axis (Nyquist
// row excluded for even G: it cannot carry a cos/sin pair unambiguously).
inline int grid_band(int points) { return points % 2 == 1 ? (points - 1) / 2 : points / 2 - 1; }

// smallest size >= n whose factors are all in {2,3,5,7}
int next_fast_size(int n);

// FFTW-backed synthesis/analysis between coefficient and grid space for one
// (dim, points). Planning is serialized internally; execution is not thread
// safe, so use one instance per worker.
class SpectralTransform {
 public:
  SpectralTransform(int dim, int points);
  ~SpectralTransform();
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  int dim() const { return dim_; }
  int points() const { return points_; }
  std::int64_t real_size() const { return real_size_; }
  std::int64_t cplx_size() const { return cplx_size_; }

  // coefficients -> node values (writes real_size() doubles)
  void synthesize(const FourierField& f, double* out);
  // node values -> coefficients, truncated to the |n|_inf <= cutoff box
  FourierField analyze(const double* values, int cutoff);

  // raw spectrum access for analyses that never materialize a field:
  // fills the half-spectrum with the DFT of `values` scaled to unit
  // coefficients (u_hat), valid until the next call on this object.
  const std::complex<double>* forward_raw(const double* values);
  // half-spectrum cell of an integer frequency vector (last component taken
  // nonnegative by conjugation); count_weight is 1 or 2 = how many lattice
  // points the cell represents in a sum over Z^d.
  std::int64_t cell_of(const int* m, bool& conjugate, int& count_weight) const;
  void frequency_of_cell(std::int64_t cell, int* m_out, int& count_weight) const;

  // low-level buffer access for hot loops that scatter/gather spectra
  // directly (the integrator); execute_c2r consumes the complex buffer,
  // execute_r2c leaves an unnormalized spectrum in it
  std::complex<double>* cplx_data() { return cplx_; }
  double* real_data() { return real_; }
  void execute_c2r();
  void execute_r2c();

 private:
  int dim_, points_;
  std::int64_t real_size_, cplx_size_;
  double* real_;
  std::complex<double>* cplx_;
  void* plan_c2r_;
  void* plan_r2c_;
};

// Convenience entry points (plan-cached per call site via TransformCache).
class TransformCache {
 public:
  SpectralTransform& get(int dim, int points);

 private:
  std::map<std::pair<int, int>, std::unique_ptr<SpectralTransform>> cache_;
};

// Evaluate f at G nodes per dimension. G must support the field's bandwidth.
PhysicalGrid to_physical(const FourierField& f, int points, TransformCache* cache = nullptr);

// Trigonometric interpolation coefficients of grid data, truncated to the
// cutoff box. Exact when the underlying signal is bandlimited below Nyquist.
FourierField from_physical(const PhysicalGrid& g, int cutoff, TransformCache* cache = nullptr);

// Quadrature L^p norm on the grid (p = inf -> node maximum).
double grid_lp_norm(const PhysicalGrid& g, double p);

// L^p norm of a field, p in {2, 3, 4, 6, inf}, on a grid with
// G >= oversample * (2 max|n|_inf + 1) nodes per dimension (rounded up to an
// FFT-friendly size). Exact for p in {2,4,6} once G exceeds the bandwidth of
// f^p; for p = inf this is a grid maximum and therefore a slight
// underestimate of the true sup.
double lp_norm(const FourierField& f, double p, int oversample, TransformCache* cache = nullptr);

// S_N((S_N f)^3) with no aliasing onto any retained mode. The grid uses
// G = oversample * (2B+1) nodes per dimension, B the filtered bandwidth;
// oversample >= 2 guarantees G > 4B, which is exactly the alias-free
// condition for a cubic of a B-bandlimited field observed below B.
FourierField cubic_term(const FourierField& f, const FilterSpec& spec, int oversample,
                        TransformCache* cache = nullptr);

}  // namespace supwave
