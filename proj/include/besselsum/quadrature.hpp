#pragma once

// Independent checks of the integral side: panel Gauss-Legendre quadrature
// with an envelope tail bound, the Abel-Plana correction integral, and a
// spectral band-limit test.

#include <cstdint>
#include <string>
#include <vector>

#include "besselsum/identity.hpp"

namespace besselsum::quadrature {

inline constexpr int kDefaultNodes = 16;
inline constexpr double kDefaultYMax = 20.0;
inline constexpr double kDefaultTailCap = 1e5;

struct QuadratureResult {
  double value = 0.0;
  std::int64_t panels = 0;
  double t_max = 0.0;
  /// |I(nodes) - I(nodes/2)| + tail.
  double error_estimate = 0.0;
  double refinement = 0.0;
  double tail = 0.0;
  /// False when no envelope bound applies; tail is then reported as 0.
  bool tail_bounded = true;
};

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule on [-1, 1].
GaussLegendre gauss_legendre(int n);

/// Throws InvalidSpec unless the integral converges: finite at t = 0,
/// decay exponent lambda + N/2 > 0, and > 1 when a zero beat exists.
/// Unlike the summation rules this does not require sum a_j <= 2pi.
void require_integrable(const BesselProductSpec& spec);

QuadratureResult integrate(const BesselProductSpec& spec, double t_max, int nodes_per_panel = kDefaultNodes);
QuadratureResult integrate(const identity::Integrand& f, double t_max, int nodes_per_panel = kDefaultNodes);

/// Envelope bound on |int_T^inf f|; infinity when none applies.
double tail_bound(const identity::Integrand& f, double t_max);

/// Smallest T <= cap with tail_bound(f, T) <= target, or cap.
double t_max_for_tail(const identity::Integrand& f, double target, double cap = kDefaultTailCap);

/// i int_0^{y_max} [f(iy) - f(-iy)] / (e^{2 pi y} - 1) dy for the spec's f.
/// Throws DampingError when sum a_j >= 2pi.
double correction_term(const BesselProductSpec& spec, double y_max = kDefaultYMax);
double correction_term(const identity::Integrand& f, double y_max = kDefaultYMax);

/// Fraction of the spectral energy of the evenly extended, Kaiser-windowed
/// integrand above 1.05 * sum a_j / (2pi). n_samples must be a power of two
/// >= 4096 and the cutoff must be below the Nyquist frequency.
double band_limit_check(const BesselProductSpec& spec, std::size_t n_samples, double sample_step);
double band_limit_check(const identity::Integrand& f, std::size_t n_samples, double sample_step);

/// A sample step with 16x margin on the window's main lobe against the guard band.
double default_sample_step(const identity::Integrand& f);

std::string to_json(const QuadratureResult& r);

}  // namespace besselsum::quadrature
