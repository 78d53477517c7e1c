#include "besselsum/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "kernels_detail.hpp"

namespace besselsum::kernels {

namespace {

using detail::two_sum;

Compensated compensated_sum_scalar(const double* x, std::size_t n) {
  double hi = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s, e;
    two_sum(hi, x[i], s, e);
    hi = s;
    lo += e;
  }
  return {hi, lo};
}

Compensated compensated_dot_scalar(const double* x, const double* w, std::size_t n) {
  double hi = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = x[i] * w[i];
    const double pe = std::fma(x[i], w[i], -p);
    double s, e;
    two_sum(hi, p, s, e);
    hi = s;
    lo += e + pe;
  }
  return {hi, lo};
}

void multiply_scalar(double* inout, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) inout[i] *= x[i];
}

double sum_abs_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::fabs(x[i]);
  return s;
}

double sum_squares_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

constexpr KernelTable kScalar{Isa::Scalar,          "scalar",       compensated_sum_scalar,
                              compensated_dot_scalar, multiply_scalar, sum_abs_scalar,
                              sum_squares_scalar};

#if defined(BESSELSUM_HAVE_AVX2)
Compensated compensated_sum_avx2(const double* x, std::size_t n) {
  const auto r = detail::compensated_sum_avx2(x, n);
  return {r.hi, r.lo};
}

Compensated compensated_dot_avx2(const double* x, const double* w, std::size_t n) {
  const auto r = detail::compensated_dot_avx2(x, w, n);
  return {r.hi, r.lo};
}

constexpr KernelTable kAvx2{Isa::Avx2,           "avx2",
                            compensated_sum_avx2, compensated_dot_avx2,
                            detail::multiply_avx2, detail::sum_abs_avx2,
                            detail::sum_squares_avx2};
#endif

const KernelTable& select() noexcept {
  const char* env = std::getenv("BESSELSUM_KERNELS");
  const std::string choice = env ? env : "auto";
  const KernelTable* avx2 = avx2_table();
  if (choice == "scalar") return kScalar;
  if (avx2 && cpu_supports_avx2()) return *avx2;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(BESSELSUM_HAVE_AVX2)
  return &kAvx2;
#else
  return nullptr;
#endif
}

bool cpu_supports_avx2() noexcept {
#if defined(BESSELSUM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

Compensated combine(Compensated a, Compensated b) noexcept {
  double s, e;
  two_sum(a.hi, b.hi, s, e);
  return {s, a.lo + b.lo + e};
}

}  // namespace besselsum::kernels
