#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace supwave {

// Canonical representative of a {n, -n} pair in Z^d_* : the one whose first
// nonzero component is positive. Returns (representative, sin_sign) where
// sin_sign = -1 iff the input was flipped (cos is even, sin is odd).
std::pair<std::vector<int>, int> canonical_index(const std::vector<int>& n);

// Enumeration of the canonical half-lattice inside the box |n|_inf <= L,
// in lexicographic order of the component tuple. Shared immutable object;
// fields with equal (dim, box) share one instance.
class CanonicalBasis {
 public:
  static std::shared_ptr<const CanonicalBasis> get(int dim, int box);

  int dim() const { return dim_; }
  int box() const { return box_; }
  std::int64_t num_modes() const { return static_cast<std::int64_t>(norm2_.size()); }

  // components of mode r, r in [0, num_modes)
  const int* mode(std::int64_t r) const { return comps_.data() + static_cast<std::size_t>(r) * dim_; }
  double norm2(std::int64_t r) const { return norm2_[static_cast<std::size_t>(r)]; }
  const std::vector<double>& norm2s() const { return norm2_; }

  // Rank of an arbitrary nonzero vector's canonical representative, plus the
  // sin sign; returns rank = -1 if the vector falls outside the box.
  struct Lookup {
    std::int64_t rank;
    int sign;
  };
  Lookup find(const int* n) const;

 private:
  CanonicalBasis(int dim, int box);

  int dim_;
  int box_;
  std::vector<int> comps_;        // num_modes * dim
  std::vector<double> norm2_;     // |n|^2
  std::vector<std::int32_t> cell_;  // full box -> +-(rank+1), 0 for the origin
};

}  // namespace supwave
