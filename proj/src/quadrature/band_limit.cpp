#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include "besselsum/kernels.hpp"
#include "besselsum/quadrature.hpp"

namespace besselsum::quadrature {

namespace {

// Kaiser shape parameter; side lobes sit far below the 1e-6 energy threshold.
constexpr double kKaiserBeta = 20.0;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffers {
  double* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan plan = nullptr;
  FftwBuffers(std::size_t L) {
    in = fftw_alloc_real(L);
    out = fftw_alloc_complex(L / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(L), in, out, FFTW_ESTIMATE);
  }
  ~FftwBuffers() {
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
  }
  FftwBuffers(const FftwBuffers&) = delete;
  FftwBuffers& operator=(const FftwBuffers&) = delete;
};

}  // namespace

double default_sample_step(const identity::Integrand& f) { return std::numbers::pi / (2.0 * f.sum_scales()); }

double band_limit_check(const identity::Integrand& f, std::size_t n_samples, double sample_step) {
  if (n_samples < 4096 || (n_samples & (n_samples - 1)) != 0) {
    throw ConfigError("n_samples must be a power of two >= 4096");
  }
  if (!(sample_step > 0.0) || !std::isfinite(sample_step)) throw ConfigError("sample_step must be positive");
  const double cutoff = 1.05 * f.sum_scales() / (2.0 * std::numbers::pi);
  if (cutoff >= 0.5 / sample_step) throw ConfigError("sample_step too coarse: cutoff above Nyquist");

  const std::size_t n = n_samples;
  const std::size_t L = 2 * n;
  std::vector<double> t(n + 1), g(n + 1);
  for (std::size_t j = 0; j <= n; ++j) t[j] = static_cast<double>(j) * sample_step;
  f.evaluate(t, g);

  FftwBuffers buf(L);
  const double i0_beta = specfun::bessel_i_scaled(0.0, kKaiserBeta);
  std::vector<double> window(L);
  for (std::size_t j = 0; j < L; ++j) {
    const double r = (static_cast<double>(j) - static_cast<double>(n)) / static_cast<double>(n);
    const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
    window[j] = specfun::bessel_i_scaled(0.0, kKaiserBeta * s) / i0_beta * std::exp(kKaiserBeta * (s - 1.0));
    buf.in[j] = g[j >= n ? j - n : n - j];
  }
  kernels::multiply(std::span<double>(buf.in, L), window);
  fftw_execute(buf.plan);

  const double* spec = reinterpret_cast<const double*>(buf.out);
  auto power = [&](std::size_t k) { return spec[2 * k] * spec[2 * k] + spec[2 * k + 1] * spec[2 * k + 1]; };
  // One-sided spectrum: interior bins stand for +f and -f.
  const double all = kernels::sum_squares(std::span<const double>(spec, 2 * (n + 1)));
  const double total = 2.0 * all - power(0) - power(n);
  auto kc = static_cast<std::size_t>(std::floor(cutoff * static_cast<double>(L) * sample_step)) + 1;
  if (kc > n) return 0.0;
  const double above_all = kernels::sum_squares(std::span<const double>(spec + 2 * kc, 2 * (n + 1 - kc)));
  const double above = 2.0 * above_all - power(n);
  return total > 0.0 ? above / total : 0.0;
}

double band_limit_check(const BesselProductSpec& spec, std::size_t n_samples, double sample_step) {
  auto report = identity::check_validity(spec);
  if (!report.valid) throw identity::InvalidSpec(std::move(report));
  return band_limit_check(identity::Integrand(spec), n_samples, sample_step);
}

}  // namespace besselsum::quadrature
