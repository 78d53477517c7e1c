#pragma once

// Raw entry points shared by the dispatch table. Kept free of standard
// library headers so the AVX2 translation unit emits no inline library code
// that could be merged into non-AVX callers.

#include <cstddef>

namespace besselsum::kernels::detail {

struct Sum2 {
  double hi;
  double lo;
};

inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bp = s - a;
  e = (a - (s - bp)) + (b - bp);
}

#if defined(BESSELSUM_HAVE_AVX2)
Sum2 compensated_sum_avx2(const double* x, std::size_t n);
Sum2 compensated_dot_avx2(const double* x, const double* w, std::size_t n);
void multiply_avx2(double* inout, const double* x, std::size_t n);
double sum_abs_avx2(const double* x, std::size_t n);
double sum_squares_avx2(const double* x, std::size_t n);
#endif

}  // namespace besselsum::kernels::detail
