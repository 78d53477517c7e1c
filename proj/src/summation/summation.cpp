#include "besselsum/summation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "besselsum/json_writer.hpp"
#include "besselsum/kernels.hpp"

namespace besselsum::summation {

namespace {

constexpr double kRoundoff = 4.0 * std::numeric_limits<double>::epsilon();

// Fills vals with eps_m f(m) for m = start .. start + vals.size() - 1.
void fill_terms(const identity::Integrand& f, std::int64_t start, std::vector<double>& t,
                std::vector<double>& vals) {
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(start + static_cast<std::int64_t>(i));
  f.evaluate(t, vals);
  if (start == 0) vals[0] *= 0.5;
}

struct Tail {
  std::vector<double> partial;
  double abs_sum = 0.0;
};

Tail tail_partial_sums(const identity::Integrand& f, std::int64_t from, std::int64_t M) {
  Tail out;
  if (M < 0) return out;
  from = std::clamp<std::int64_t>(from, 0, M);
  out.partial.reserve(static_cast<std::size_t>(M - from + 1));
  double hi = 0.0, lo = 0.0;
  std::vector<double> t, vals;
  for (std::int64_t start = 0; start <= M; start += static_cast<std::int64_t>(kBlockSize)) {
    const auto len = static_cast<std::size_t>(std::min<std::int64_t>(kBlockSize, M - start + 1));
    t.resize(len);
    vals.resize(len);
    fill_terms(f, start, t, vals);
    out.abs_sum += kernels::sum_abs(vals);
    for (std::size_t i = 0; i < len; ++i) {
      const double s = hi + vals[i];
      const double bp = s - hi;
      lo += (hi - (s - bp)) + (vals[i] - bp);
      hi = s;
      if (start + static_cast<std::int64_t>(i) >= from) out.partial.push_back(hi + lo);
    }
  }
  return out;
}

double guard_factor(const identity::Integrand& f) {
  std::vector<double> a;
  for (const auto& x : f.factors()) a.push_back(x.a);
  const double slow = identity::slowest_beat(a, true);
  return std::max(1.0, 1.0 / slow);
}

double slow_aliased(const identity::Integrand& f) {
  std::vector<double> a;
  for (const auto& x : f.factors()) a.push_back(x.a);
  return identity::slowest_beat(a, true);
}

struct Attempt {
  bool applied = false;
  double value = 0.0;
  double bound = 0.0;
};

Attempt accelerated_sum(const identity::Integrand& f, std::int64_t M) {
  const double slow = slow_aliased(f);
  // The box must cover one slow period; skip the work when it cannot.
  if (!(slow > 0.0) || static_cast<double>(M / 2) / kAccelerationLevels * slow < 2.0 * std::numbers::pi) {
    return {};
  }
  const auto tail = tail_partial_sums(f, M / 2, M);
  const auto acc = accelerate(tail.partial, slow);
  if (!acc.applied) return {};
  return {true, acc.value, acc.increment + kRoundoff * tail.abs_sum};
}

}  // namespace

RawSum sum_terms(const identity::Integrand& f, std::int64_t M) {
  kernels::Compensated total;
  double abs_sum = 0.0;
  std::vector<double> t, vals;
  for (std::int64_t start = 0; start <= M; start += static_cast<std::int64_t>(kBlockSize)) {
    const auto len = static_cast<std::size_t>(std::min<std::int64_t>(kBlockSize, M - start + 1));
    t.resize(len);
    vals.resize(len);
    fill_terms(f, start, t, vals);
    total = kernels::combine(total, kernels::compensated_sum(vals));
    abs_sum += kernels::sum_abs(vals);
  }
  return {total.value(), abs_sum};
}

std::vector<double> partial_sums(const identity::Integrand& f, std::int64_t from, std::int64_t M) {
  return tail_partial_sums(f, from, M).partial;
}

double sum_truncated(const BesselProductSpec& spec, std::int64_t M) {
  if (M < 0) throw ConfigError("number of terms must be non-negative");
  auto report = identity::check_validity(spec);
  if (!report.valid) throw identity::InvalidSpec(std::move(report));
  return sum_terms(identity::Integrand(spec), M).value;
}

double bound_formula(const identity::Integrand& f, ConvergenceClass cls, std::int64_t M) {
  const double m = static_cast<double>(std::max<std::int64_t>(M, 1));
  const double p = f.decay_exponent();
  const double c = f.envelope_constant();
  switch (cls) {
    case ConvergenceClass::Absolute:
      return c * std::max(1.0, 1.0 / std::fabs(1.0 - p)) * std::pow(m, 1.0 - p);
    case ConvergenceClass::Conditional:
      return c * guard_factor(f) * std::pow(m, -p);
    case ConvergenceClass::Invalid:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

double truncation_bound(const BesselProductSpec& spec, std::int64_t M) {
  if (M < kMinBoundTerms) throw ConfigError("truncation bound needs M >= 10");
  auto report = identity::check_validity(spec);
  if (!report.valid) throw identity::InvalidSpec(std::move(report));
  return bound_formula(identity::Integrand(spec), report.convergence_class, M);
}

std::int64_t terms_for_tolerance(const identity::Integrand& f, ConvergenceClass cls, double tol,
                                 std::int64_t max_terms) {
  const double p = f.decay_exponent();
  const double c = f.envelope_constant();
  double m = INFINITY;
  if (cls == ConvergenceClass::Absolute) {
    m = std::pow(c * std::max(1.0, 1.0 / std::fabs(1.0 - p)) / tol, 1.0 / (p - 1.0));
  } else if (cls == ConvergenceClass::Conditional) {
    m = std::pow(c * guard_factor(f) / tol, 1.0 / p);
  }
  if (!std::isfinite(m) || m > static_cast<double>(max_terms)) return -1;
  auto M = std::max<std::int64_t>(kMinBoundTerms, static_cast<std::int64_t>(std::ceil(m)));
  while (M <= max_terms && bound_formula(f, cls, M) > tol) ++M;
  return M <= max_terms ? M : -1;
}

Acceleration accelerate(std::span<const double> tail, double slow, int levels) {
  Acceleration out;
  if (levels < 2 || tail.size() < 2 || !(slow > 0.0) || !std::isfinite(slow)) return out;
  const std::size_t L = tail.size();
  const std::size_t w = (L - 1) / static_cast<std::size_t>(levels) + 1;
  if (w < 2 || static_cast<double>(w) * slow < 2.0 * std::numbers::pi) return out;

  // Work on deviations from the last partial sum so the running sums stay small.
  const double base = tail.back();
  std::vector<double> cur(L);
  for (std::size_t i = 0; i < L; ++i) cur[i] = tail[i] - base;
  std::vector<double> prefix;
  double previous = cur.back();
  double last = previous;
  for (int level = 0; level < levels; ++level) {
    prefix.assign(cur.size() + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) prefix[i + 1] = prefix[i] + cur[i];
    const std::size_t len = cur.size() - w + 1;
    std::vector<double> next(len);
    for (std::size_t i = 0; i < len; ++i) next[i] = (prefix[i + w] - prefix[i]) / static_cast<double>(w);
    cur = std::move(next);
    previous = last;
    last = cur.back();
  }
  out.applied = true;
  out.value = base + last;
  out.increment = std::fabs(last - previous);
  out.window = w;
  out.levels = levels;
  return out;
}

SummationResult evaluate(const BesselProductSpec& spec, const Target& target, const Options& options) {
  const auto rs = identity::rescale(spec);
  auto report = identity::check_validity(rs.spec);
  if (!report.valid) throw identity::InvalidSpec(std::move(report));

  SummationResult out;
  out.convergence_class = report.convergence_class;
  out.rescaled = rs.A != 1.0;
  out.rescale_A = rs.A;
  out.prefactor = rs.prefactor;
  const identity::Integrand f(rs.spec);
  const bool can_accelerate = options.accelerate && out.convergence_class == ConvergenceClass::Conditional;

  auto raw = [&](std::int64_t M) {
    const auto s = sum_terms(f, M);
    out.value = s.value;
    out.terms_used = M;
    out.error_bound = bound_formula(f, out.convergence_class, M) + kRoundoff * s.abs_sum;
    out.accelerated = false;
  };

  if (const auto* fixed = std::get_if<FixedTerms>(&target)) {
    if (fixed->M < 0) throw ConfigError("number of terms must be non-negative");
    Attempt acc;
    if (can_accelerate) acc = accelerated_sum(f, fixed->M);
    if (acc.applied) {
      out.value = acc.value;
      out.terms_used = fixed->M;
      out.error_bound = acc.bound;
      out.accelerated = true;
    } else {
      raw(fixed->M);
    }
  } else {
    const auto& tol = std::get<Tolerance>(target);
    if (!(tol.tol > 0.0) || !std::isfinite(tol.tol)) throw ConfigError("tolerance must be positive");
    if (tol.max_terms < 1) throw ConfigError("maximum number of terms must be positive");
    const double inner_tol = tol.tol / std::fabs(rs.prefactor);
    const auto M = terms_for_tolerance(f, out.convergence_class, inner_tol, tol.max_terms);
    if (M > 0) {
      raw(M);
    } else if (can_accelerate) {
      bool done = false;
      for (std::int64_t m = std::min<std::int64_t>(1024, tol.max_terms);; m = std::min(2 * m, tol.max_terms)) {
        const auto acc = accelerated_sum(f, m);
        if (acc.applied && acc.bound <= inner_tol) {
          out.value = acc.value;
          out.terms_used = m;
          out.error_bound = acc.bound;
          out.accelerated = true;
          done = true;
          break;
        }
        if (m >= tol.max_terms) break;
      }
      if (!done) {
        throw ToleranceUnreachable("tolerance " + io::format_number(tol.tol) +
                                   " not reached with accelerated sums up to " +
                                   std::to_string(tol.max_terms) + " terms");
      }
    } else {
      throw ToleranceUnreachable("tolerance " + io::format_number(tol.tol) + " needs more than " +
                                 std::to_string(tol.max_terms) + " terms");
    }
  }
  out.value *= rs.prefactor;
  out.error_bound *= std::fabs(rs.prefactor);
  return out;
}

std::string to_json(const SummationResult& r) {
  return io::JsonObject()
      .add("value", r.value)
      .add("terms_used", r.terms_used)
      .add("error_bound", r.error_bound)
      .add("class", identity::to_string(r.convergence_class))
      .add("accelerated", r.accelerated)
      .add("rescaled", r.rescaled)
      .add("A", r.rescale_A)
      .str();
}

}  // namespace besselsum::summation
