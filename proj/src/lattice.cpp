#include "supwave/lattice.hpp"

#include <map>
#include <mutex>

namespace supwave {

std::pair<std::vector<int>, int> canonical_index(const std::vector<int>& n) {
  int lead = 0;
  for (int v : n) {
    if (v != 0) {
      lead = v;
      break;
    }
  }
  if (lead == 0) throw std::invalid_argument("canonical_index: zero vector has no canonical form");
  if (lead > 0) return {n, +1};
  std::vector<int> m(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) m[i] = -n[i];
  return {m, -1};
}

CanonicalBasis::CanonicalBasis(int dim, int box) : dim_(dim), box_(box) {
  if (dim < 1 || dim > 6) throw std::invalid_argument("CanonicalBasis: dim must be in [1,6]");
  if (box < 0) throw std::invalid_argument("CanonicalBasis: box cutoff must be >= 0");

  const int side = 2 * box + 1;
  std::int64_t cells = 1;
  for (int j = 0; j < dim; ++j) cells *= side;
  cell_.assign(static_cast<std::size_t>(cells), 0);

  // lexicographic sweep of the full box; canonical = first nonzero positive
  std::vector<int> n(dim, -box);
  std::int32_t rank = 0;
  for (std::int64_t c = 0; c < cells; ++c) {
    int lead = 0;
    for (int j = 0; j < dim; ++j) {
      if (n[j] != 0) {
        lead = n[j];
        break;
      }
    }
    if (lead > 0) {
      comps_.insert(comps_.end(), n.begin(), n.end());
      double r2 = 0;
      for (int j = 0; j < dim; ++j) r2 += static_cast<double>(n[j]) * n[j];
      norm2_.push_back(r2);
      cell_[static_cast<std::size_t>(c)] = rank + 1;
      ++rank;
    }
    for (int j = dim - 1; j >= 0; --j) {
      if (++n[j] <= box) break;
      n[j] = -box;
    }
  }
  // the mirrored half is resolved arithmetically in find()
}

CanonicalBasis::Lookup CanonicalBasis::find(const int* n) const {
  int lead = 0;
  for (int j = 0; j < dim_; ++j) {
    if (n[j] != 0) {
      lead = n[j];
      break;
    }
  }
  if (lead == 0) return {-1, 0};
  const int side = 2 * box_ + 1;
  std::int64_t c = 0;
  if (lead > 0) {
    for (int j = 0; j < dim_; ++j) {
      if (n[j] < -box_ || n[j] > box_) return {-1, 0};
      c = c * side + (n[j] + box_);
    }
    const std::int32_t v = cell_[static_cast<std::size_t>(c)];
    return {v - 1, +1};
  }
  for (int j = 0; j < dim_; ++j) {
    if (n[j] < -box_ || n[j] > box_) return {-1, 0};
    c = c * side + (-n[j] + box_);
  }
  const std::int32_t v = cell_[static_cast<std::size_t>(c)];
  return {v - 1, -1};
}

std::shared_ptr<const CanonicalBasis> CanonicalBasis::get(int dim, int box) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::weak_ptr<const CanonicalBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{dim, box}];
  if (auto sp = slot.lock()) return sp;
  std::shared_ptr<const CanonicalBasis> sp(new CanonicalBasis(dim, box));
  slot = sp;
  return sp;
}

}  // namespace supwave
