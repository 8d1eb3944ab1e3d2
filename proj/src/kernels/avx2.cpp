#include <immintrin.h>

#include <limits>

#include "ugkms/kernels.hpp"

namespace ugkms::kernels::avx2 {

namespace {

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double hmin(__m256d v) {
  __m128d m = _mm_min_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

double hmax(__m256d v) {
  __m128d m = _mm_max_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

}  // namespace

void matvec(const double* a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = a + i * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j), acc);
    double s = hsum(acc);
    for (; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void ratio_bounds(const double* y, const double* x, std::size_t n, double* lo, double* hi) {
  const double inf = std::numeric_limits<double>::infinity();
  __m256d vlo = _mm256_set1_pd(inf);
  __m256d vhi = _mm256_set1_pd(-inf);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vx = _mm256_loadu_pd(x + i);
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d pos = _mm256_cmp_pd(vx, zero, _CMP_GT_OQ);
    __m256d r = _mm256_div_pd(vy, _mm256_blendv_pd(_mm256_set1_pd(1.0), vx, pos));
    vlo = _mm256_min_pd(vlo, _mm256_blendv_pd(_mm256_set1_pd(inf), r, pos));
    vhi = _mm256_max_pd(vhi, _mm256_blendv_pd(_mm256_set1_pd(-inf), r, pos));
  }
  double l = hmin(vlo);
  double h = hmax(vhi);
  for (; i < n; ++i) {
    if (!(x[i] > 0)) continue;
    double r = y[i] / x[i];
    if (r < l) l = r;
    if (r > h) h = r;
  }
  *lo = l;
  *hi = h;
}

}  // namespace ugkms::kernels::avx2
