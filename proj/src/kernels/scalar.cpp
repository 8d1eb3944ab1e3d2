#include <limits>

#include "ugkms/kernels.hpp"

namespace ugkms::kernels::scalar {

void matvec(const double* a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = a + i * n;
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void ratio_bounds(const double* y, const double* x, std::size_t n, double* lo, double* hi) {
  double l = std::numeric_limits<double>::infinity();
  double h = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0)) continue;
    double r = y[i] / x[i];
    if (r < l) l = r;
    if (r > h) h = r;
  }
  *lo = l;
  *hi = h;
}

}  // namespace ugkms::kernels::scalar
