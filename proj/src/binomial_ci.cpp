#include "supwave/binomial_ci.hpp"

#include <boost/math/distributions/beta.hpp>

#include <stdexcept>

namespace supwave {

BinomialCI clopper_pearson(int k, int n, double alpha) {
  if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("clopper_pearson: need 0 <= k <= n, n > 0");
  BinomialCI ci{0.0, 1.0};
  using boost::math::beta_distribution;
  if (k > 0) ci.lo = quantile(beta_distribution<double>(k, n - k + 1), alpha / 2);
  if (k < n) ci.hi = quantile(beta_distribution<double>(k + 1, n - k), 1.0 - alpha / 2);
  return ci;
}

}  // namespace supwave
