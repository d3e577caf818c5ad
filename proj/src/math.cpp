#include "smcmix/math.hpp"

#include <algorithm>
#include <cmath>

namespace smcmix {

double invert_increasing_cdf(const std::function<double(double)>& cdf,
                             double target, double lo, double hi,
                             const std::function<double(double)>& density) {
  double flo = cdf(lo) - target;
  double fhi = cdf(hi) - target;
  if (flo > 0.0 || fhi < 0.0) {
    // Caller's bracket is stale (e.g. tail target); expand the upper end.
    int guard = 0;
    while (fhi < 0.0 && guard++ < 200) {
      lo = hi;
      hi = 2.0 * hi + 1.0;
      fhi = cdf(hi) - target;
    }
  }
  double mid = 0.5 * (lo + hi);
  while (hi - lo > 1e-12 * std::max(1.0, std::fabs(mid))) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point resolution
    if (cdf(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double y = 0.5 * (lo + hi);
  if (density) {
    for (int i = 0; i < 2; ++i) {
      const double f = density(y);
      if (f <= 0.0) break;
      const double step = (cdf(y) - target) / f;
      const double next = y - step;
      if (next <= 0.0) break;
      y = next;
    }
  }
  return y;
}

}  // namespace smcmix
