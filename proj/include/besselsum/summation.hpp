#pragma once

// Truncated evaluation of the sum side of the identity, with a priori
// truncation bounds and tail acceleration for conditionally convergent sums.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "besselsum/identity.hpp"

namespace besselsum::summation {

using identity::ConvergenceClass;

inline constexpr std::size_t kBlockSize = 4096;
inline constexpr std::int64_t kMinBoundTerms = 10;

struct FixedTerms {
  std::int64_t M;
};

struct Tolerance {
  double tol;
  std::int64_t max_terms = 1'000'000;
};

using Target = std::variant<FixedTerms, Tolerance>;

struct Options {
  bool accelerate = true;
};

struct SummationResult {
  double value = 0.0;
  std::int64_t terms_used = 0;
  double error_bound = 0.0;
  ConvergenceClass convergence_class = ConvergenceClass::Invalid;
  bool accelerated = false;
  bool rescaled = false;
  double rescale_A = 1.0;
  double prefactor = 1.0;
};

/// Raw compensated sum: value and sum of |terms|.
struct RawSum {
  double value;
  double abs_sum;
};

/// sum_{m=0}^{M} eps_m f(m), reduced per block of kBlockSize terms in
/// ascending order. No validity check.
RawSum sum_terms(const identity::Integrand& f, std::int64_t M);

/// Partial sums S_n for n = from .. M (inclusive).
std::vector<double> partial_sums(const identity::Integrand& f, std::int64_t from, std::int64_t M);

/// Throws InvalidSpec unless check_validity passes.
double sum_truncated(const BesselProductSpec& spec, std::int64_t M);

/// A priori bound on |S_inf - S_M|. ConfigError for M < 10, InvalidSpec for
/// invalid specs.
double truncation_bound(const BesselProductSpec& spec, std::int64_t M);

/// The bound formula for an already classified integrand, any M >= 1.
double bound_formula(const identity::Integrand& f, ConvergenceClass cls, std::int64_t M);

/// Smallest M >= 10 with bound_formula <= tol, or -1 if beyond max_terms.
std::int64_t terms_for_tolerance(const identity::Integrand& f, ConvergenceClass cls, double tol,
                                 std::int64_t max_terms);

struct Acceleration {
  bool applied = false;
  double value = 0.0;
  double increment = 0.0;
  std::size_t window = 0;
  int levels = 0;
};

inline constexpr int kAccelerationLevels = 4;

/// Iterated moving averages over the partial sums `tail` (the last block of
/// S_n). The box length must span one period of the slowest aliased beat
/// `slow`; otherwise nothing is applied.
Acceleration accelerate(std::span<const double> tail, double slow, int levels = kAccelerationLevels);

/// Full pipeline: rescale, validate, choose M, sum, accelerate, apply the
/// prefactor. Throws InvalidSpec or ToleranceUnreachable.
SummationResult evaluate(const BesselProductSpec& spec, const Target& target, const Options& options = {});

std::string to_json(const SummationResult& r);

}  // namespace besselsum::summation
