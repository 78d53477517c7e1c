// Evaluation strategy for J_nu (nu >= 0 after reflection):
//   ascending series        x <= 2 or x^2 <= 12 (nu + 1)
//   Hankel expansion        x >= max(25, nu^2/16); terminates for half-integer
//                           nu, which is used from x >= max(2, nu^2)
//   Steed / CF1 + CF2       everything in between (also yields Y_nu)
// Negative non-integer orders use the series below x = 2 and
// J_{-nu} = cos(nu pi) J_nu - sin(nu pi) Y_nu above it.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "besselsum/errors.hpp"
#include "besselsum/specfun.hpp"
#include "pi_trig.hpp"

namespace besselsum::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesEps = 1e-17;
constexpr double kHankelMin = 25.0;
constexpr double kScaledAsymptoticMin = 30.0;

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

// (x/2)^nu / Gamma(nu + 1), optionally times e^{-shift}.
double leading_power_term(double nu, double x, double shift) {
  const double half = 0.5 * x;
  const double log_power = nu * std::log(half);
  if (std::fabs(log_power) < 600.0 && shift < 600.0 && nu + 1.0 < 170.0) {
    return std::pow(half, nu) * reciprocal_gamma(nu + 1.0) * std::exp(-shift);
  }
  const double rg = reciprocal_gamma(nu + 1.0);
  if (rg == 0.0) return 0.0;
  const double sign = rg < 0.0 ? -1.0 : 1.0;
  return sign * std::exp(log_power - shift - log_abs_gamma(nu + 1.0));
}

// Ascending series: sum_k (sign x^2/4)^k / (k! (nu+1)_k) times the lead.
double ascending_series(double nu, double x, double sign, double shift) {
  const double lead = leading_power_term(nu, x, shift);
  if (lead == 0.0) return 0.0;
  const double q = sign * 0.25 * x * x;
  Neumaier acc;
  acc.add(lead);
  double term = lead;
  for (int k = 1; k < 100000; ++k) {
    const double denom = static_cast<double>(k) * (nu + k);
    term *= q / denom;
    acc.add(term);
    const bool decreasing = std::fabs(denom) > std::fabs(q) && nu + k > 0.0;
    if (decreasing && std::fabs(term) <= kSeriesEps * std::fabs(acc.sum)) break;
    if (term == 0.0) break;
  }
  return acc.value();
}

struct HankelSums {
  double p;
  double q;
};

// Hankel P and Q sums; empty if the asymptotic series starts diverging
// before reaching full precision.
std::optional<HankelSums> hankel_sums(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    const double magnitude = std::fabs(term);
    if (magnitude == 0.0) return HankelSums{p, q};
    // Terms may grow until (2k-1)^2 passes 4 nu^2; divergence only after that.
    if (odd * odd > mu && magnitude > previous) return std::nullopt;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (magnitude < kSeriesEps * (std::fabs(p) + std::fabs(q))) return HankelSums{p, q};
    previous = magnitude;
  }
  return std::nullopt;
}

std::optional<BesselPair> hankel(double nu, double x) {
  const auto sums = hankel_sums(nu, x);
  if (!sums) return std::nullopt;
  // chi = x - (nu/2 + 1/4) pi, expanded so x itself is never rounded.
  const double phase = 0.5 * nu + 0.25;
  const double cp = detail::cospi(phase);
  const double sp = detail::sinpi(phase);
  const double cx = std::cos(x);
  const double sx = std::sin(x);
  const double cos_chi = cx * cp + sx * sp;
  const double sin_chi = sx * cp - cx * sp;
  const double amp = std::sqrt(2.0 / (kPi * x));
  return BesselPair{amp * (sums->p * cos_chi - sums->q * sin_chi),
                    amp * (sums->p * sin_chi + sums->q * cos_chi)};
}

// Steed's method: CF1 for J'/J, CF2 for p + iq, Wronskian normalisation.
// Requires nu >= 0 and x >= 2.
BesselPair steed(double nu, double x) {
  constexpr double eps = 1e-16;
  constexpr double fpmin = 1e-300;
  constexpr int max_iter = 1000000;

  const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
  const double xmu = nu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  const double w = xi2 / kPi;

  int isign = 1;
  double h = std::max(nu * xi, fpmin);
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  int i = 1;
  for (; i <= max_iter; ++i) {
    b += xi2;
    d = b - d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b - 1.0 / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (d < 0.0) isign = -isign;
    if (std::fabs(del - 1.0) < eps) break;
  }
  if (i > max_iter) throw DomainError("bessel_j: continued fraction CF1 failed to converge");

  // Downward recurrence from an arbitrary seed; only the ratio matters.
  constexpr double seed = 1e-30;
  double rjl = isign * seed;
  double rjpl = h * rjl;
  const double rjl1 = rjl;
  double fact = nu * xi;
  for (int l = nl; l >= 1; --l) {
    const double rjtemp = fact * rjl + rjpl;
    fact -= xi;
    rjpl = fact * rjtemp - rjl;
    rjl = rjtemp;
  }
  if (rjl == 0.0) rjl = eps;
  const double f = rjpl / rjl;

  double a = 0.25 - xmu2;
  double p = -0.5 * xi;
  double q = 1.0;
  const double br = 2.0 * x;
  double bi = 2.0;
  fact = a * xi / (p * p + q * q);
  double cr = br + q * fact;
  double ci = bi + p * fact;
  double den = br * br + bi * bi;
  double dr = br / den;
  double di = -bi / den;
  double dlr = cr * dr - ci * di;
  double dli = cr * di + ci * dr;
  double temp = p * dlr - q * dli;
  q = p * dli + q * dlr;
  p = temp;
  for (i = 2; i <= max_iter; ++i) {
    a += 2.0 * (i - 1);
    bi += 2.0;
    dr = a * dr + br;
    di = a * di + bi;
    if (std::fabs(dr) + std::fabs(di) < fpmin) dr = fpmin;
    fact = a / (cr * cr + ci * ci);
    cr = br + cr * fact;
    ci = bi - ci * fact;
    if (std::fabs(cr) + std::fabs(ci) < fpmin) cr = fpmin;
    den = dr * dr + di * di;
    dr /= den;
    di /= -den;
    dlr = cr * dr - ci * di;
    dli = cr * di + ci * dr;
    temp = p * dlr - q * dli;
    q = p * dli + q * dlr;
    p = temp;
    if (std::fabs(dlr - 1.0) + std::fabs(dli) < eps) break;
  }
  if (i > max_iter) throw DomainError("bessel_j: continued fraction CF2 failed to converge");

  const double gam = (p - f) / q;
  double rjmu = std::sqrt(w / ((p - f) * gam + q));
  rjmu = std::copysign(rjmu, rjl);
  double rymu = rjmu * gam;
  const double rymup = rymu * (p + q / gam);
  double ry1 = xmu * xi * rymu - rymup;

  const double j = rjl1 * (rjmu / rjl);
  for (int l = 1; l <= nl; ++l) {
    const double rytemp = (xmu + l) * xi2 * ry1 - rymu;
    rymu = ry1;
    ry1 = rytemp;
  }
  return BesselPair{j, rymu};
}

bool hankel_regime(double nu, double x) { return x >= std::max(kHankelMin, 0.0625 * nu * nu); }

bool terminating_hankel_regime(const Order& nu, double x) {
  const double v = nu.value();
  return nu.is_half_integer() && x >= std::max(2.0, v * v);
}

void check_argument(double x, const char* who) {
  if (!(x >= 0.0) || std::isinf(x)) {
    throw DomainError(std::string(who) + ": argument must be finite and non-negative");
  }
}

bool is_odd(std::int64_t n) { return (n % 2) != 0; }

// e^{-x} I_nu(x) for x > 0 and nu not a negative integer.
double i_scaled_positive_x(double nu, double x) {
  if (x >= std::max(kScaledAsymptoticMin, nu * nu)) {
    const double mu = 4.0 * nu * nu;
    Neumaier acc;
    acc.add(1.0);
    double term = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int k = 1; k < 400; ++k) {
      const double odd = 2.0 * k - 1.0;
      term *= -(mu - odd * odd) / (8.0 * k * x);
      const double magnitude = std::fabs(term);
      if (magnitude == 0.0 || magnitude < kSeriesEps * std::fabs(acc.sum)) {
        converged = true;
        break;
      }
      if (magnitude > previous) break;
      acc.add(term);
      previous = magnitude;
    }
    if (converged) return acc.value() / std::sqrt(2.0 * kPi * x);
  }
  return ascending_series(nu, x, +1.0, x);
}

}  // namespace

Order::Order(double value) : value_(value), kind_(OrderKind::Generic) {
  if (!std::isfinite(value)) throw DomainError("Order: value must be finite");
  const double rounded = std::nearbyint(value);
  if (std::fabs(value - rounded) <= kOrderTolerance) {
    value_ = rounded;
    integer_ = static_cast<std::int64_t>(rounded);
    kind_ = integer_ < 0 ? OrderKind::NegativeInteger : OrderKind::NonNegativeInteger;
    return;
  }
  const double twice = std::nearbyint(2.0 * value);
  if (std::fabs(2.0 * value - twice) <= 2.0 * kOrderTolerance) {
    value_ = 0.5 * twice;
    kind_ = OrderKind::HalfInteger;
  }
}

BesselPair bessel_jy(double nu, double x) {
  if (!(nu >= 0.0)) throw DomainError("bessel_jy: order must be non-negative");
  if (!(x >= 2.0) || std::isinf(x)) throw DomainError("bessel_jy: requires finite x >= 2");
  const Order order(nu);
  if (terminating_hankel_regime(order, x) || hankel_regime(nu, x)) {
    if (auto r = hankel(order.value(), x)) return *r;
  }
  return steed(order.value(), x);
}

double bessel_j(Order nu, double x) {
  check_argument(x, "bessel_j");
  if (nu.is_negative_integer()) {
    const double r = bessel_j(Order(static_cast<double>(-nu.as_integer())), x);
    return is_odd(nu.as_integer()) ? -r : r;
  }
  const double v = nu.value();
  if (x == 0.0) {
    if (v == 0.0) return 1.0;
    if (v > 0.0) return 0.0;
    throw DivergentAtZero("bessel_j: J_nu(0) diverges for negative non-integer nu");
  }
  if (terminating_hankel_regime(nu, x) || hankel_regime(v, x)) {
    if (auto r = hankel(v, x)) return r->j;
  }
  if (v >= 0.0) {
    if (x <= 2.0 || x * x <= 12.0 * (v + 1.0)) return ascending_series(v, x, -1.0, 0.0);
    return steed(v, x).j;
  }
  if (x < 2.0) return ascending_series(v, x, -1.0, 0.0);
  const double av = -v;
  const BesselPair jy = bessel_jy(av, x);
  return detail::cospi(av) * jy.j - detail::sinpi(av) * jy.y;
}

double bessel_i_scaled(Order nu, double x) {
  check_argument(x, "bessel_i");
  if (nu.is_negative_integer()) {
    return bessel_i_scaled(Order(static_cast<double>(-nu.as_integer())), x);
  }
  const double v = nu.value();
  if (x == 0.0) {
    if (v == 0.0) return 1.0;
    if (v > 0.0) return 0.0;
    throw DivergentAtZero("bessel_i: I_nu(0) diverges for negative non-integer nu");
  }
  return i_scaled_positive_x(v, x);
}

double bessel_i(Order nu, double x) {
  check_argument(x, "bessel_i");
  if (nu.is_negative_integer()) {
    return bessel_i(Order(static_cast<double>(-nu.as_integer())), x);
  }
  const double v = nu.value();
  if (x == 0.0) return bessel_i_scaled(nu, x);
  if (x < 700.0 && x < std::max(kScaledAsymptoticMin, v * v)) {
    return ascending_series(v, x, +1.0, 0.0);
  }
  const double scaled = bessel_i_scaled(nu, x);
  if (scaled == 0.0) return 0.0;
  const double log_value = std::log(std::fabs(scaled)) + x;
  if (log_value > std::log(std::numeric_limits<double>::max())) {
    throw OverflowError("bessel_i: result exceeds double range; use bessel_i_scaled");
  }
  const double half = std::exp(0.5 * x);
  return scaled * half * half;
}

double spherical_j(int ell, double x) {
  if (ell < 0) throw DomainError("spherical_j: order must be non-negative");
  check_argument(x, "spherical_j");
  if (x == 0.0) return ell == 0 ? 1.0 : 0.0;
  return std::sqrt(kPi / (2.0 * x)) * bessel_j(Order(ell + 0.5), x);
}

}  // namespace besselsum::specfun
