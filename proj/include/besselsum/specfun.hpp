#pragma once

// Bessel functions of the first kind for real order and non-negative real
// argument. All functions are pure and thread-safe.
//
// Accuracy contract: relative error <= 1e-12 for 0 <= x <= 1e4 and
// |nu| <= 50, absolute error <= 1e-14 near zeros.

#include <cstdint>

namespace besselsum::specfun {

enum class OrderKind { NegativeInteger, NonNegativeInteger, HalfInteger, Generic };

/// Tolerance for recognising integer and half-integer orders.
inline constexpr double kOrderTolerance = 1e-12;

/// A real Bessel order. Values within kOrderTolerance of an integer or
/// half-integer are snapped onto it so downstream code can branch exactly.
class Order {
 public:
  /// Throws DomainError for NaN or infinite values.
  explicit Order(double value);

  double value() const noexcept { return value_; }
  OrderKind kind() const noexcept { return kind_; }

  bool is_integer() const noexcept {
    return kind_ == OrderKind::NegativeInteger || kind_ == OrderKind::NonNegativeInteger;
  }
  bool is_negative_integer() const noexcept { return kind_ == OrderKind::NegativeInteger; }
  bool is_half_integer() const noexcept { return kind_ == OrderKind::HalfInteger; }

  /// The integer value; only meaningful when is_integer().
  std::int64_t as_integer() const noexcept { return integer_; }

  friend bool operator==(const Order& lhs, const Order& rhs) noexcept {
    return lhs.value_ == rhs.value_;
  }

 private:
  double value_;
  OrderKind kind_;
  std::int64_t integer_ = 0;
};

/// Gamma function via a Lanczos approximation (relative error <= 1e-13).
/// Poles at non-positive integers raise DomainError.
double gamma(double z);

/// log|Gamma(z)|.
double log_abs_gamma(double z);

/// 1/Gamma(z); entire, returns 0 at the poles of Gamma.
double reciprocal_gamma(double z);

/// J_nu(x). Throws DomainError for x < 0 and DivergentAtZero for
/// x == 0 with nu a negative non-integer.
double bessel_j(Order nu, double x);
inline double bessel_j(double nu, double x) { return bessel_j(Order(nu), x); }

/// J_nu and Y_nu for nu >= 0, x > 0 (Y is needed for negative-order
/// reflection and is exposed for testing).
struct BesselPair {
  double j;
  double y;
};
BesselPair bessel_jy(double nu, double x);

/// I_nu(x). Throws OverflowError when the result is not representable;
/// use bessel_i_scaled in that regime.
double bessel_i(Order nu, double x);
inline double bessel_i(double nu, double x) { return bessel_i(Order(nu), x); }

/// e^{-x} I_nu(x).
double bessel_i_scaled(Order nu, double x);
inline double bessel_i_scaled(double nu, double x) { return bessel_i_scaled(Order(nu), x); }

/// Spherical Bessel j_l(x) = sqrt(pi/(2x)) J_{l+1/2}(x).
double spherical_j(int ell, double x);

}  // namespace besselsum::specfun
