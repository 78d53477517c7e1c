#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "besselsum/json_writer.hpp"
#include "besselsum/kernels.hpp"
#include "besselsum/quadrature.hpp"

namespace besselsum::quadrature {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> scales_of(const identity::Integrand& f) {
  std::vector<double> a;
  for (const auto& x : f.factors()) a.push_back(x.a);
  return a;
}

// Slowest non-aliased beat, or 0 when a zero beat exists.
double slowest_continuous_beat(const identity::Integrand& f) {
  const auto a = scales_of(f);
  if (a.size() > 24) return 0.0;
  const double slow = identity::slowest_beat(a, false);
  return slow <= identity::kBeatTolerance * f.sum_scales() ? 0.0 : slow;
}

double absolute_tail_constant(const identity::Integrand& f) {
  const double p = f.decay_exponent();
  return f.envelope_constant() * std::max(1.0, 1.0 / (p - 1.0));
}

// Sum of `full` panels of width h plus a trailing partial panel of width rem.
double panel_sum(const identity::Integrand& f, const GaussLegendre& rule, double h, std::int64_t full,
                 double rem) {
  const std::size_t n = rule.nodes.size();
  const std::size_t chunk = std::max<std::size_t>(1, 4096 / n);
  std::vector<double> t, w, vals;
  kernels::Compensated total;
  for (std::int64_t p0 = 0; p0 < full; p0 += static_cast<std::int64_t>(chunk)) {
    const auto count = static_cast<std::size_t>(std::min<std::int64_t>(chunk, full - p0));
    t.resize(count * n);
    w.resize(count * n);
    vals.resize(count * n);
    for (std::size_t p = 0; p < count; ++p) {
      const double centre = (static_cast<double>(p0 + static_cast<std::int64_t>(p)) + 0.5) * h;
      for (std::size_t i = 0; i < n; ++i) {
        t[p * n + i] = centre + 0.5 * h * rule.nodes[i];
        w[p * n + i] = 0.5 * h * rule.weights[i];
      }
    }
    f.evaluate(t, vals);
    total = kernels::combine(total, kernels::compensated_dot(vals, w));
  }
  if (rem > 0.0) {
    const double start = static_cast<double>(full) * h;
    t.resize(n);
    w.resize(n);
    vals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = start + 0.5 * rem * (1.0 + rule.nodes[i]);
      w[i] = 0.5 * rem * rule.weights[i];
    }
    f.evaluate(t, vals);
    total = kernels::combine(total, kernels::compensated_dot(vals, w));
  }
  return total.value();
}

}  // namespace

void require_integrable(const BesselProductSpec& spec) {
  auto report = identity::check_validity(spec);
  const identity::Integrand f(spec);
  const double p = f.decay_exponent();
  const bool ok = f.zero_exponent() >= 0.0 && p > 0.0 && (!report.beat_witness || p > 1.0);
  if (!ok) throw identity::InvalidSpec(std::move(report));
}

double tail_bound(const identity::Integrand& f, double t_max) {
  const double p = f.decay_exponent();
  const double abs_tail = p > 1.0 ? absolute_tail_constant(f) * std::pow(t_max, 1.0 - p) : kInf;
  const double slow = slowest_continuous_beat(f);
  const double osc_tail = slow > 0.0 ? f.envelope_constant() * (2.0 / slow) * std::pow(t_max, -p) : kInf;
  return std::min(abs_tail, osc_tail);
}

double t_max_for_tail(const identity::Integrand& f, double target, double cap) {
  if (!(target > 0.0) || !(cap > 0.0)) throw ConfigError("tail target and cap must be positive");
  const double p = f.decay_exponent();
  double T = kInf;
  if (p > 1.0) T = std::pow(absolute_tail_constant(f) / target, 1.0 / (p - 1.0));
  const double slow = slowest_continuous_beat(f);
  if (slow > 0.0 && p > 0.0) T = std::min(T, std::pow(f.envelope_constant() * 2.0 / (slow * target), 1.0 / p));
  return std::isfinite(T) ? std::min(T, cap) : cap;
}

QuadratureResult integrate(const identity::Integrand& f, double t_max, int nodes_per_panel) {
  if (nodes_per_panel < 8 || nodes_per_panel > 64) throw ConfigError("nodes per panel must lie in [8, 64]");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("t_max must be positive and finite");
  const double h = std::numbers::pi / f.sum_scales();
  auto full = static_cast<std::int64_t>(std::floor(t_max / h));
  double rem = t_max - static_cast<double>(full) * h;
  if (rem <= 1e-12 * h) rem = 0.0;
  if (full == 0 && rem == 0.0) rem = t_max;

  const auto fine = gauss_legendre(nodes_per_panel);
  const auto coarse = gauss_legendre(nodes_per_panel / 2);
  QuadratureResult r;
  r.value = panel_sum(f, fine, h, full, rem);
  r.refinement = std::fabs(r.value - panel_sum(f, coarse, h, full, rem));
  r.panels = full + (rem > 0.0 ? 1 : 0);
  r.t_max = t_max;
  const double tail = tail_bound(f, t_max);
  r.tail_bounded = std::isfinite(tail);
  r.tail = r.tail_bounded ? tail : 0.0;
  r.error_estimate = r.refinement + r.tail;
  return r;
}

QuadratureResult integrate(const BesselProductSpec& spec, double t_max, int nodes_per_panel) {
  require_integrable(spec);
  return integrate(identity::Integrand(spec), t_max, nodes_per_panel);
}

std::string to_json(const QuadratureResult& r) {
  return io::JsonObject()
      .add("value", r.value)
      .add("panels", r.panels)
      .add("t_max", r.t_max)
      .add("error_estimate", r.error_estimate)
      .add("tail_bounded", r.tail_bounded)
      .str();
}

}  // namespace besselsum::quadrature
