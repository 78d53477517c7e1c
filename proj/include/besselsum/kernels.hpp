#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference variant and,
// on x86-64, an AVX2+FMA variant; the table used by the library is chosen
// once at first use from the CPU features, and can be forced with the
// BESSELSUM_KERNELS environment variable ("scalar", "avx2" or "auto").

#include <cstddef>
#include <span>
#include <string_view>

namespace besselsum::kernels {

enum class Isa { Scalar, Avx2 };

/// Unevaluated sum hi + lo produced by error-free transformations.
struct Compensated {
  double hi = 0.0;
  double lo = 0.0;
  double value() const noexcept { return hi + lo; }
};

struct KernelTable {
  Isa isa;
  std::string_view name;
  /// sum x[i], compensated (TwoSum per lane).
  Compensated (*compensated_sum)(const double* x, std::size_t n);
  /// sum x[i] * w[i], compensated (TwoProduct via FMA + TwoSum).
  Compensated (*compensated_dot)(const double* x, const double* w, std::size_t n);
  /// inout[i] *= x[i].
  void (*multiply)(double* inout, const double* x, std::size_t n);
  /// sum |x[i]|.
  double (*sum_abs)(const double* x, std::size_t n);
  /// sum x[i]^2.
  double (*sum_squares)(const double* x, std::size_t n);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the AVX2 variants were not compiled in.
const KernelTable* avx2_table() noexcept;

bool cpu_supports_avx2() noexcept;

/// The table selected for this process.
const KernelTable& active() noexcept;

inline Compensated compensated_sum(std::span<const double> x) {
  return active().compensated_sum(x.data(), x.size());
}

inline Compensated compensated_dot(std::span<const double> x, std::span<const double> w) {
  return active().compensated_dot(x.data(), w.data(), x.size() < w.size() ? x.size() : w.size());
}

inline void multiply(std::span<double> inout, std::span<const double> x) {
  active().multiply(inout.data(), x.data(), inout.size() < x.size() ? inout.size() : x.size());
}

inline double sum_abs(std::span<const double> x) { return active().sum_abs(x.data(), x.size()); }

inline double sum_squares(std::span<const double> x) {
  return active().sum_squares(x.data(), x.size());
}

/// Merges b into a with a TwoSum on the leading parts.
Compensated combine(Compensated a, Compensated b) noexcept;

}  // namespace besselsum::kernels
