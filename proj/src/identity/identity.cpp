#include "besselsum/identity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <utility>

#include "besselsum/kernels.hpp"

namespace besselsum {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

BesselProductSpec::BesselProductSpec(std::int64_t k, std::vector<Factor> factors)
    : k_(k), factors_(std::move(factors)) {
  if (factors_.empty()) throw SizeError("a Bessel product needs at least one factor");
  for (const auto& f : factors_) {
    if (!std::isfinite(f.a) || f.a <= 0.0) {
      throw DomainError("scale a = " + fmt(f.a) + " must be finite and positive");
    }
  }
}

BesselProductSpec BesselProductSpec::from_lists(std::int64_t k, std::span<const double> nu,
                                                std::span<const double> a) {
  if (nu.size() != a.size()) throw SizeError("order and scale lists differ in length");
  std::vector<Factor> factors;
  factors.reserve(nu.size());
  for (std::size_t j = 0; j < nu.size(); ++j) factors.push_back({specfun::Order(nu[j]), a[j]});
  return BesselProductSpec(k, std::move(factors));
}

double BesselProductSpec::sum_orders() const noexcept {
  double s = 0.0;
  for (const auto& f : factors_) s += f.nu.value();
  return s;
}

double BesselProductSpec::sum_scales() const noexcept {
  double s = 0.0;
  for (const auto& f : factors_) s += f.a;
  return s;
}

std::vector<double> BesselProductSpec::scales() const {
  std::vector<double> a;
  a.reserve(factors_.size());
  for (const auto& f : factors_) a.push_back(f.a);
  return a;
}

BesselProductSpec BesselProductSpec::with_scale(std::size_t index, double a) const {
  if (index >= factors_.size()) throw SizeError("factor index out of range");
  auto factors = factors_;
  factors[index].a = a;
  return BesselProductSpec(k_, std::move(factors));
}

namespace identity {

const char* to_string(ConvergenceClass c) noexcept {
  switch (c) {
    case ConvergenceClass::Absolute: return "absolute";
    case ConvergenceClass::Conditional: return "conditional";
    case ConvergenceClass::Invalid: return "invalid";
  }
  return "invalid";
}

namespace {

std::string failure_summary(const ValidityReport& r) {
  std::string msg = "invalid spec:";
  for (const auto& rule : r.triggered_rules) {
    if (!rule.satisfied) msg += " [" + rule.id + "] " + rule.text + ";";
  }
  return msg;
}

void check_scales(std::span<const double> a, std::size_t limit) {
  if (a.empty()) throw SizeError("no scales given");
  if (a.size() > limit) {
    throw SizeError("beat enumeration limited to " + std::to_string(limit) + " factors");
  }
  for (double x : a) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("scales must be finite and positive");
  }
}

// Sign vector from a mask over indices [1, n): bit j-1 set means s_j = -1.
std::vector<int> signs_from_mask(std::uint64_t mask, std::size_t n) {
  std::vector<int> s(n, 1);
  for (std::size_t j = 1; j < n; ++j) s[j] = (mask >> (j - 1)) & 1u ? -1 : 1;
  return s;
}

double signed_sum(std::span<const double> a, std::uint64_t mask) {
  double s = a[0];
  for (std::size_t j = 1; j < a.size(); ++j) s += (mask >> (j - 1)) & 1u ? -a[j] : a[j];
  return s;
}

std::optional<std::vector<int>> beat_direct(std::span<const double> a, double tol) {
  const std::uint64_t patterns = std::uint64_t{1} << (a.size() - 1);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    if (std::fabs(signed_sum(a, mask)) <= tol) return signs_from_mask(mask, a.size());
  }
  return std::nullopt;
}

// Meet in the middle: left half carries s_1 = +1, right half is free.
std::optional<std::vector<int>> beat_split(std::span<const double> a, double tol) {
  const std::size_t n = a.size();
  const std::size_t h = n / 2;
  const auto left = a.subspan(0, h);
  const auto right = a.subspan(h);

  std::vector<std::pair<double, std::uint64_t>> rsums;
  const std::uint64_t rcount = std::uint64_t{1} << right.size();
  rsums.reserve(rcount);
  for (std::uint64_t mask = 0; mask < rcount; ++mask) {
    double s = 0.0;
    for (std::size_t j = 0; j < right.size(); ++j) s += (mask >> j) & 1u ? -right[j] : right[j];
    rsums.emplace_back(s, mask);
  }
  std::sort(rsums.begin(), rsums.end());

  const std::uint64_t lcount = std::uint64_t{1} << (h - 1);
  for (std::uint64_t lmask = 0; lmask < lcount; ++lmask) {
    const double l = signed_sum(left, lmask);
    auto it = std::lower_bound(rsums.begin(), rsums.end(), std::make_pair(-l - tol, std::uint64_t{0}));
    if (it != rsums.end() && it->first <= -l + tol && std::fabs(l + it->first) <= tol) {
      auto s = signs_from_mask(lmask, h);
      for (std::size_t j = 0; j < right.size(); ++j) s.push_back((it->second >> j) & 1u ? -1 : 1);
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace

InvalidSpec::InvalidSpec(ValidityReport report)
    : Error(failure_summary(report)), report_(std::move(report)) {}

double lambda_of(const BesselProductSpec& spec) {
  return spec.sum_orders() - 2.0 * static_cast<double>(spec.k());
}

std::optional<std::vector<int>> beat_exists(std::span<const double> a) {
  check_scales(a, kMaxBeatFactors);
  const double total = std::accumulate(a.begin(), a.end(), 0.0);
  const double tol = kBeatTolerance * total;
  if (a.size() == 1) return std::nullopt;
  if (a.size() <= 20) return beat_direct(a, tol);
  return beat_split(a, tol);
}

double slowest_beat(std::span<const double> a, bool aliased) {
  check_scales(a, 24);
  const std::uint64_t patterns = std::uint64_t{1} << (a.size() - 1);
  double best = INFINITY;
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    double f = std::fabs(signed_sum(a, mask));
    if (aliased) {
      f = std::fmod(f, kTwoPi);
      f = std::min(f, kTwoPi - f);
    }
    best = std::min(best, f);
  }
  return best;
}

ValidityReport check_validity(const BesselProductSpec& spec) {
  ValidityReport r;
  const double n = static_cast<double>(spec.size());
  const double k = static_cast<double>(spec.k());
  const double sum_nu = spec.sum_orders();
  const double sum_a = spec.sum_scales();
  const double r3_bound = 2.0 * k - n / 2.0;
  const double strict_bound = r3_bound + 1.0;

  double neg_total = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const auto& nu = spec.factors()[j].nu;
    if (nu.is_negative_integer()) {
      r.negative_integer_set.push_back(j);
      neg_total += std::fabs(nu.value());
    }
  }

  if (r.negative_integer_set.empty()) {
    r.triggered_rules.push_back({"R1", spec.k() >= 0, "k = " + std::to_string(spec.k()) + " >= 0"});
  } else {
    r.triggered_rules.push_back(
        {"R1-ext", k >= -neg_total,
         "negative-integer extension applied: k = " + std::to_string(spec.k()) +
             " >= -sum|nu_j| over negative-integer orders = " + fmt(-neg_total)});
  }

  const bool within = sum_a <= kTwoPi * (1.0 + kBoundaryTolerance);
  const bool boundary = std::fabs(sum_a - kTwoPi) <= kBoundaryTolerance * kTwoPi;
  r.needs_rescale = !within;
  r.triggered_rules.push_back({"R2", within,
                               "sum|a_j| = " + fmt(sum_a) + (within ? " <= 2pi" : " > 2pi (rescale required)")});

  r.triggered_rules.push_back(
      {"R3", sum_nu > r3_bound, "sum nu_j = " + fmt(sum_nu) + " > 2k - N/2 = " + fmt(r3_bound)});

  const auto scales = spec.scales();
  bool beat_known = true;
  if (scales.size() <= kMaxBeatFactors) {
    r.beat_witness = beat_exists(scales);
  } else {
    beat_known = false;
  }
  if (!beat_known) {
    r.triggered_rules.push_back(
        {"R4", false, "beat detection unavailable for more than 30 factors"});
  } else if (boundary || r.beat_witness) {
    std::string why = boundary ? "sum|a_j| on the 2pi boundary" : "";
    if (r.beat_witness) why += std::string(why.empty() ? "" : " and ") + "zero beat frequency";
    r.triggered_rules.push_back({"R4", sum_nu > strict_bound,
                                 why + ": sum nu_j = " + fmt(sum_nu) + " > 2k - N/2 + 1 = " +
                                     fmt(strict_bound)});
  }

  r.valid = std::all_of(r.triggered_rules.begin(), r.triggered_rules.end(),
                        [](const Rule& rule) { return rule.satisfied; });
  if (!r.valid) {
    r.convergence_class = ConvergenceClass::Invalid;
  } else if (sum_nu > strict_bound) {
    r.convergence_class = ConvergenceClass::Absolute;
    r.triggered_rules.push_back({"class", true,
                                 "absolutely convergent: sum nu_j > 2k - N/2 + 1 = " + fmt(strict_bound)});
  } else {
    r.convergence_class = ConvergenceClass::Conditional;
    r.triggered_rules.push_back({"class", true,
                                 "conditionally convergent: sum nu_j <= 2k - N/2 + 1 = " + fmt(strict_bound)});
  }
  return r;
}

Rescaled rescale(const BesselProductSpec& spec) {
  const double sum_a = spec.sum_scales();
  if (sum_a <= kTwoPi * (1.0 + kBoundaryTolerance)) return {spec, 1.0, 1.0};
  const double A = sum_a / kTwoPi;
  std::vector<Factor> factors = spec.factors();
  for (auto& f : factors) f.a /= A;
  const double exponent = spec.sum_orders() - 1.0 - 2.0 * static_cast<double>(spec.k());
  return {BesselProductSpec(spec.k(), std::move(factors)), std::pow(A, exponent), A};
}

namespace {

const Integrand& validated(const BesselProductSpec& spec, std::optional<Integrand>& slot) {
  auto report = check_validity(spec);
  if (!report.valid) throw InvalidSpec(std::move(report));
  slot.emplace(spec);
  return *slot;
}

}  // namespace

double summand(const BesselProductSpec& spec, std::int64_t m) {
  if (m < 0) throw DomainError("summand index must be non-negative");
  std::optional<Integrand> f;
  const double weight = m == 0 ? 0.5 : 1.0;
  return weight * validated(spec, f)(static_cast<double>(m));
}

double integrand(const BesselProductSpec& spec, double t) {
  std::optional<Integrand> f;
  return validated(spec, f)(t);
}

Integrand::Integrand(double power, std::vector<Factor> factors)
    : power_(power), factors_(std::move(factors)) {
  if (factors_.empty()) throw SizeError("a Bessel product needs at least one factor");
  double neg = 0.0;
  for (const auto& f : factors_) {
    if (!(f.a > 0.0) || !std::isfinite(f.a)) throw DomainError("scales must be finite and positive");
    sum_nu_ += f.nu.value();
    sum_a_ += f.a;
    if (f.nu.is_negative_integer()) neg += std::fabs(f.nu.value());
  }
  zero_exponent_ = power_ + 2.0 * neg;
}

Integrand::Integrand(const BesselProductSpec& spec)
    : Integrand(2.0 * static_cast<double>(spec.k()), spec.factors()) {}

double Integrand::decay_exponent() const noexcept {
  return lambda() + 0.5 * static_cast<double>(factors_.size());
}

double Integrand::envelope_constant() const noexcept {
  double c = 1.0;
  for (const auto& f : factors_) c *= 2.0 * std::sqrt(2.0 / (std::numbers::pi * f.a));
  return c;
}

double Integrand::at_zero() const {
  if (zero_exponent_ < 0.0) {
    throw DomainError("integrand diverges at t = 0 (net exponent " + fmt(zero_exponent_) + ")");
  }
  if (zero_exponent_ > 0.0) return 0.0;
  double c = 1.0;
  for (const auto& f : factors_) {
    const double nu = f.nu.value();
    if (f.nu.is_negative_integer()) {
      const double n = -nu;
      const double sign = (f.nu.as_integer() % 2 == 0) ? 1.0 : -1.0;
      c *= sign * std::pow(0.5 * f.a, n) / specfun::gamma(n + 1.0);
    } else {
      c *= std::pow(0.5 * f.a, nu) * specfun::reciprocal_gamma(nu + 1.0);
    }
  }
  return c;
}

double Integrand::operator()(double t) const {
  if (!(t >= 0.0)) throw DomainError("integrand argument must be non-negative");
  if (t == 0.0) return at_zero();
  double prod = 1.0;
  for (const auto& f : factors_) {
    const double term = std::pow(t, -f.nu.value()) * specfun::bessel_j(f.nu, f.a * t);
    prod *= term;
  }
  prod *= std::pow(t, power_);
  return prod;
}

void Integrand::evaluate(std::span<const double> t, std::span<double> out) const {
  const std::size_t n = std::min(t.size(), out.size());
  std::vector<double> buf(n);
  bool has_zero = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t[i] >= 0.0)) throw DomainError("integrand argument must be non-negative");
    has_zero = has_zero || t[i] == 0.0;
    out[i] = 1.0;
  }
  const std::span<double> o = out.first(n);
  for (const auto& f : factors_) {
    for (std::size_t i = 0; i < n; ++i) {
      buf[i] = t[i] == 0.0 ? 1.0 : std::pow(t[i], -f.nu.value()) * specfun::bessel_j(f.nu, f.a * t[i]);
    }
    kernels::multiply(o, buf);
  }
  for (std::size_t i = 0; i < n; ++i) buf[i] = t[i] == 0.0 ? 1.0 : std::pow(t[i], power_);
  kernels::multiply(o, buf);
  if (has_zero) {
    const double z = at_zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i] == 0.0) o[i] = z;
    }
  }
}

}  // namespace identity
}  // namespace besselsum
