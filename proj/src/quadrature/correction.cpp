#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "../specfun/pi_trig.hpp"
#include "besselsum/quadrature.hpp"

namespace besselsum::quadrature {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// y^{-lambda} prod I_nu(a y) / (e^{2 pi y} - 1), in log-scaled form.
double damped_product(const identity::Integrand& f, double y) {
  double log_mag = -f.lambda() * std::log(y) - kTwoPi * y - std::log(-std::expm1(-kTwoPi * y));
  double sign = 1.0;
  for (const auto& x : f.factors()) {
    const double v = specfun::bessel_i_scaled(x.nu, x.a * y);
    if (v == 0.0) return 0.0;
    if (v < 0.0) sign = -sign;
    log_mag += std::log(std::fabs(v)) + x.a * y;
  }
  return sign * std::exp(log_mag);
}

struct Interval {
  double lo, hi;
  int depth;
};

double adaptive(const identity::Integrand& f, double lo, double hi) {
  static const GaussLegendre g10 = gauss_legendre(10);
  static const GaussLegendre g20 = gauss_legendre(20);
  auto apply = [&](const GaussLegendre& g, double a, double b) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      s += g.weights[i] * damped_product(f, 0.5 * (a + b) + 0.5 * (b - a) * g.nodes[i]);
    }
    return 0.5 * (b - a) * s;
  };
  double sum = 0.0, comp = 0.0;
  std::vector<Interval> stack{{lo, hi, 0}};
  while (!stack.empty()) {
    const Interval iv = stack.back();
    stack.pop_back();
    const double fine = apply(g20, iv.lo, iv.hi);
    const double coarse = apply(g10, iv.lo, iv.hi);
    if (std::fabs(fine - coarse) <= 1e-13 * std::fabs(fine) || iv.depth >= 40) {
      const double t = sum + fine;
      comp += std::fabs(sum) >= std::fabs(fine) ? (sum - t) + fine : (fine - t) + sum;
      sum = t;
    } else {
      const double mid = 0.5 * (iv.lo + iv.hi);
      // Push the upper half first so intervals are accumulated in ascending order.
      stack.push_back({mid, iv.hi, iv.depth + 1});
      stack.push_back({iv.lo, mid, iv.depth + 1});
    }
  }
  return sum + comp;
}

}  // namespace

double correction_term(const identity::Integrand& f, double y_max) {
  if (f.sum_scales() >= kTwoPi) throw DampingError("correction term needs sum a_j < 2pi");
  if (!(y_max >= 0.0) || !std::isfinite(y_max)) throw ConfigError("y_max must be non-negative and finite");
  if (y_max == 0.0) return 0.0;

  // Phase of f(iy): e^{-i pi lambda / 2} prod_j e^{i pi nu_j / 2}.
  const double half_lambda = -0.5 * f.lambda();
  std::complex<double> phase(specfun::detail::cospi(half_lambda), specfun::detail::sinpi(half_lambda));
  for (const auto& x : f.factors()) {
    const double u = 0.5 * x.nu.value();
    phase *= std::complex<double>(specfun::detail::cospi(u), specfun::detail::sinpi(u));
  }
  const double s = phase.imag();
  if (s == 0.0) return 0.0;

  // Geometric breakpoints towards y = 0, then unit panels.
  double integral = 0.0;
  const double y1 = std::min(1.0, y_max);
  double lo = 0.0;
  for (int j = 40; j >= 0; --j) {
    const double hi = std::ldexp(y1, -j);
    integral += adaptive(f, lo, hi);
    lo = hi;
  }
  for (double a = y1; a < y_max; a += 1.0) integral += adaptive(f, a, std::min(a + 1.0, y_max));
  return -2.0 * s * integral;
}

double correction_term(const BesselProductSpec& spec, double y_max) {
  if (spec.sum_scales() >= kTwoPi) throw DampingError("correction term needs sum a_j < 2pi");
  auto report = identity::check_validity(spec);
  if (!report.valid) throw identity::InvalidSpec(std::move(report));
  return correction_term(identity::Integrand(spec), y_max);
}

}  // namespace besselsum::quadrature
