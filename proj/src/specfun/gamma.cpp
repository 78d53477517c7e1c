#include <array>
#include <cmath>
#include <numbers>

#include "besselsum/errors.hpp"
#include "besselsum/specfun.hpp"
#include "pi_trig.hpp"

namespace besselsum::specfun {

namespace {

// Lanczos approximation, g = 7, nine terms (Godfrey's coefficients).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(double z) { return z <= 0.0 && z == std::nearbyint(z); }

// Series part A(z) for Gamma(z + 1) = sqrt(2 pi) t^{z + 1/2} e^{-t} A(z).
double lanczos_sum(double z) {
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (z + static_cast<double>(i));
  }
  return sum;
}

// Gamma(z) for z >= 0.5.
double gamma_right(double z) {
  const double zm = z - 1.0;
  const double t = zm + kLanczosG + 0.5;
  const double a = lanczos_sum(zm);
  // Split the power so t^{zm + 1/2} does not overflow before e^{-t} applies.
  const double half_power = std::pow(t, 0.5 * (zm + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (std::exp(-t) * half_power) * a;
}

double log_gamma_right(double z) {
  const double zm = z - 1.0;
  const double t = zm + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (zm + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(zm));
}

}  // namespace

double gamma(double z) {
  if (std::isnan(z)) throw DomainError("gamma: NaN argument");
  if (is_pole(z)) throw DomainError("gamma: pole at non-positive integer");
  if (z < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::numbers::pi / (detail::sinpi(z) * gamma_right(1.0 - z));
  }
  if (z > 171.7) return HUGE_VAL;
  return gamma_right(z);
}

double log_abs_gamma(double z) {
  if (std::isnan(z)) throw DomainError("log_abs_gamma: NaN argument");
  if (is_pole(z)) throw DomainError("log_abs_gamma: pole at non-positive integer");
  if (z < 0.5) {
    return std::log(std::numbers::pi / std::fabs(detail::sinpi(z))) - log_gamma_right(1.0 - z);
  }
  return log_gamma_right(z);
}

double reciprocal_gamma(double z) {
  if (std::isnan(z)) throw DomainError("reciprocal_gamma: NaN argument");
  if (is_pole(z)) return 0.0;
  if (z < 0.5) return detail::sinpi(z) * gamma_right(1.0 - z) / std::numbers::pi;
  if (z > 171.0) return std::exp(-log_gamma_right(z));
  return 1.0 / gamma_right(z);
}

}  // namespace besselsum::specfun
