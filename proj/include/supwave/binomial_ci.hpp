#pragma once

namespace supwave {

// Exact (Clopper-Pearson) two-sided confidence interval for a binomial
// proportion: k successes in n trials at confidence level 1 - alpha.
struct BinomialCI {
  double lo;
  double hi;
};

BinomialCI clopper_pearson(int k, int n, double alpha = 0.05);

}  // namespace supwave
