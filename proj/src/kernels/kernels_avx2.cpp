#include <immintrin.h>

#include "kernels_detail.hpp"

namespace besselsum::kernels::detail {

namespace {

inline void two_sum4(__m256d a, __m256d b, __m256d& s, __m256d& e) {
  s = _mm256_add_pd(a, b);
  const __m256d bp = _mm256_sub_pd(s, a);
  e = _mm256_add_pd(_mm256_sub_pd(a, _mm256_sub_pd(s, bp)), _mm256_sub_pd(b, bp));
}

// Folds the four lanes in lane order, carrying every rounding error.
Sum2 fold(__m256d hi, __m256d lo) {
  alignas(32) double h[4];
  alignas(32) double l[4];
  _mm256_store_pd(h, hi);
  _mm256_store_pd(l, lo);
  double s = h[0];
  double c = l[0];
  for (int i = 1; i < 4; ++i) {
    double t, e;
    two_sum(s, h[i], t, e);
    s = t;
    c += e + l[i];
  }
  return {s, c};
}

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

}  // namespace

Sum2 compensated_sum_avx2(const double* x, std::size_t n) {
  __m256d hi = _mm256_setzero_pd();
  __m256d lo = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s, e;
    two_sum4(hi, _mm256_loadu_pd(x + i), s, e);
    hi = s;
    lo = _mm256_add_pd(lo, e);
  }
  Sum2 r = fold(hi, lo);
  for (; i < n; ++i) {
    double s, e;
    two_sum(r.hi, x[i], s, e);
    r.hi = s;
    r.lo += e;
  }
  return r;
}

Sum2 compensated_dot_avx2(const double* x, const double* w, std::size_t n) {
  __m256d hi = _mm256_setzero_pd();
  __m256d lo = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(x + i);
    const __m256d b = _mm256_loadu_pd(w + i);
    const __m256d p = _mm256_mul_pd(a, b);
    const __m256d pe = _mm256_fmsub_pd(a, b, p);
    __m256d s, e;
    two_sum4(hi, p, s, e);
    hi = s;
    lo = _mm256_add_pd(lo, _mm256_add_pd(e, pe));
  }
  Sum2 r = fold(hi, lo);
  for (; i < n; ++i) {
    const double p = x[i] * w[i];
    const double pe = __builtin_fma(x[i], w[i], -p);
    double s, e;
    two_sum(r.hi, p, s, e);
    r.hi = s;
    r.lo += e + pe;
  }
  return r;
}

void multiply_avx2(double* inout, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(inout + i, _mm256_mul_pd(_mm256_loadu_pd(inout + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) inout[i] *= x[i];
}

double sum_abs_avx2(const double* x, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), mask));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] < 0 ? -x[i] : x[i];
  return s;
}

double sum_squares_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

}  // namespace besselsum::kernels::detail
