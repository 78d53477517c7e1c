#pragma once

// Problem specification for the sum identity
//
//   int_0^inf t^{2k} prod_j [t^{-nu_j} J_{nu_j}(a_j t)] dt
//     = sum_{m>=0} eps_m m^{2k} prod_j [m^{-nu_j} J_{nu_j}(a_j m)],
//
// with eps_0 = 1/2 and eps_m = 1 otherwise, together with the validity
// rules under which it holds.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "besselsum/errors.hpp"
#include "besselsum/specfun.hpp"

namespace besselsum {

struct Factor {
  specfun::Order nu;
  double a;
};

class BesselProductSpec {
 public:
  /// Throws SizeError when factors is empty and DomainError unless every
  /// scale is finite and positive.
  BesselProductSpec(std::int64_t k, std::vector<Factor> factors);

  /// Convenience form with parallel order and scale lists.
  static BesselProductSpec from_lists(std::int64_t k, std::span<const double> nu,
                                      std::span<const double> a);

  std::int64_t k() const noexcept { return k_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }

  double sum_orders() const noexcept;
  double sum_scales() const noexcept;
  std::vector<double> scales() const;

  /// Copy with factor `index` rescaled to `a`.
  BesselProductSpec with_scale(std::size_t index, double a) const;

 private:
  std::int64_t k_;
  std::vector<Factor> factors_;
};

namespace identity {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kBoundaryTolerance = 1e-12;
inline constexpr double kBeatTolerance = 1e-12;
inline constexpr std::size_t kMaxBeatFactors = 30;

enum class ConvergenceClass { Absolute, Conditional, Invalid };

const char* to_string(ConvergenceClass c) noexcept;

struct Rule {
  std::string id;
  bool satisfied;
  std::string text;
};

struct ValidityReport {
  bool valid = false;
  ConvergenceClass convergence_class = ConvergenceClass::Invalid;
  bool needs_rescale = false;
  std::optional<std::vector<int>> beat_witness;
  std::vector<std::size_t> negative_integer_set;
  std::vector<Rule> triggered_rules;
};

class InvalidSpec : public Error {
 public:
  explicit InvalidSpec(ValidityReport report);
  const ValidityReport& report() const noexcept { return report_; }

 private:
  ValidityReport report_;
};

/// sum nu_j - 2k.
double lambda_of(const BesselProductSpec& spec);

/// A sign vector s (s_1 = +1) with |sum s_j a_j| <= 1e-12 sum a_j, if any.
/// Throws SizeError for more than 30 scales, DomainError for a_j <= 0.
std::optional<std::vector<int>> beat_exists(std::span<const double> a);

ValidityReport check_validity(const BesselProductSpec& spec);

struct Rescaled {
  BesselProductSpec spec;
  double prefactor;
  double A;
};

/// Maps sum a_j > 2pi back onto the boundary via t -> A t.
Rescaled rescale(const BesselProductSpec& spec);

/// eps_m * integrand(spec, m). Throws InvalidSpec unless the spec is valid.
double summand(const BesselProductSpec& spec, std::int64_t m);

/// t^{2k} prod_j t^{-nu_j} J_{nu_j}(a_j t), continuous at t = 0.
double integrand(const BesselProductSpec& spec, double t);

/// The integrand family with a free power of t,
///   f(t) = t^power prod_j t^{-nu_j} J_{nu_j}(a_j t),
/// evaluated without validity checks. power = 2k recovers the spec form;
/// other powers give the odd-parity functions needed by the correction term.
class Integrand {
 public:
  Integrand(double power, std::vector<Factor> factors);
  explicit Integrand(const BesselProductSpec& spec);

  double power() const noexcept { return power_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  double sum_orders() const noexcept { return sum_nu_; }
  double sum_scales() const noexcept { return sum_a_; }

  /// sum nu_j - power.
  double lambda() const noexcept { return sum_nu_ - power_; }
  /// Large-t decay power of the envelope: lambda + N/2.
  double decay_exponent() const noexcept;
  /// Net power of t near the origin: power + 2 sum_{nu_j in Z^-} |nu_j|.
  double zero_exponent() const noexcept { return zero_exponent_; }
  /// prod_j sqrt(2/(pi a_j)) * 2^N.
  double envelope_constant() const noexcept;

  /// Limit t -> 0. DomainError when the zero exponent is negative.
  double at_zero() const;
  double operator()(double t) const;
  /// out[i] = f(t[i]); bitwise identical to calling operator() per point.
  void evaluate(std::span<const double> t, std::span<double> out) const;

 private:
  double power_;
  std::vector<Factor> factors_;
  double sum_nu_ = 0.0;
  double sum_a_ = 0.0;
  double zero_exponent_ = 0.0;
};

/// Distinct beat frequencies |sum s_j a_j| over sign vectors (s_1 = +1).
/// When `aliased`, each is first reduced to its distance from 2pi Z, which is
/// the frequency seen by integer sampling. Returns the minimum over all
/// patterns; SizeError for more than 24 scales.
double slowest_beat(std::span<const double> a, bool aliased);

}  // namespace identity
}  // namespace besselsum
