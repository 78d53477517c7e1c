#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "besselsum/quadrature.hpp"
#include "besselsum/summation.hpp"
#include "oracles/reference_values.inc"

using namespace besselsum;
using namespace besselsum::quadrature;

namespace {

constexpr double pi = std::numbers::pi;

BesselProductSpec make(std::int64_t k, std::vector<double> nu, std::vector<double> a) {
  return BesselProductSpec::from_lists(k, nu, a);
}

BesselProductSpec pair_spec(double a, double b) { return make(0, {0.5, 1.5}, {a, b}); }

identity::Integrand odd(std::vector<double> nu, std::vector<double> a) {
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < nu.size(); ++i) factors.push_back({specfun::Order(nu[i]), a[i]});
  return identity::Integrand(1.0, factors);
}

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {4, 8, 16, 32, 64}) {
    CAPTURE(n);
    const auto r = gauss_legendre(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    double w = 0.0;
    for (double x : r.weights) w += x;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    // Exact through degree 2n - 1.
    for (int d = 0; d < 2 * n; d += 2) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
      CHECK(s == doctest::Approx(2.0 / (d + 1)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), ConfigError);
}

TEST_CASE("sine integral closed form") {
  const auto r = integrate(make(0, {0.5}, {1}), 1e4);
  const double exact = std::sqrt(2 / pi) * pi / 2;
  CHECK(r.tail_bounded);
  CHECK(std::fabs(r.value - exact) <= r.error_estimate);
  CHECK(std::fabs(r.value - exact) <= 1e-3);
  CHECK(r.panels >= 1);
}

TEST_CASE("Weber-Schafheitlin closed form") {
  const auto s = make(0, {0.5, 0.5}, {1, 0.5});
  const auto r = integrate(s, 1e4);
  CHECK(std::fabs(r.value - std::sqrt(0.5)) <= r.error_estimate);
  CHECK(std::fabs(r.value - std::sqrt(0.5)) <= 1e-4);
}

TEST_CASE("independent integrals") {
  const auto a = pair_spec(pi / 16, 1);
  const double ta = t_max_for_tail(identity::Integrand(a), 1e-9);
  const auto ra = integrate(a, ta);
  CHECK(std::fabs(ra.value - kPairIntegral) <= ra.error_estimate + 1e-14);
  CHECK(ra.error_estimate <= 1e-8);

  const auto c = make(-1, {-1.5, -1, 0.5, 0}, {pi / 16, pi / 16, pi / 16, 0.5});
  const double tc = t_max_for_tail(identity::Integrand(c), 1e-9);
  const auto rc = integrate(c, tc);
  CHECK(std::fabs(rc.value - kQuadIntegral) <= rc.error_estimate + 1e-14);
}

TEST_CASE("doubling t_max stays within the tail bound") {
  for (const auto& s : {make(0, {0.5, 0.5}, {1, 0.5}), pair_spec(pi / 16, 1), pair_spec(2.0, 3.0)}) {
    for (double T : {50.0, 200.0, 1000.0}) {
      const auto r1 = integrate(s, T);
      const auto r2 = integrate(s, 2 * T);
      CHECK(std::fabs(r2.value - r1.value) <= r1.tail + r1.refinement + r2.refinement);
    }
  }
}

TEST_CASE("panel refinement") {
  for (const auto& s : {pair_spec(pi / 16, 1), make(0, {1.5, 1.5}, {1, 0.7})}) {
    const double e8 = integrate(s, 100, 8).error_estimate;
    const double e16 = integrate(s, 100, 16).error_estimate;
    const double e32 = integrate(s, 100, 32).error_estimate;
    CHECK(e16 <= 2 * e8);
    CHECK(e32 <= 2 * e16);
  }
}

TEST_CASE("configuration errors") {
  const auto s = pair_spec(pi / 16, 1);
  CHECK_THROWS_AS(integrate(s, 10, 7), ConfigError);
  CHECK_THROWS_AS(integrate(s, 10, 65), ConfigError);
  CHECK_THROWS_AS(integrate(s, 0.0), ConfigError);
  CHECK_THROWS_AS(integrate(s, -1.0), ConfigError);
  CHECK_THROWS_AS(integrate(make(1, {0.5}, {1}), 10), identity::InvalidSpec);
  CHECK_THROWS_AS(t_max_for_tail(identity::Integrand(s), 0.0), ConfigError);
}

TEST_CASE("integration above the summation boundary") {
  // Quadrature accepts sum a_j > 2pi.
  const auto s = make(0, {0.5, 1.5}, {3 * pi * 0.4, 3 * pi * 0.6});
  CHECK_NOTHROW(require_integrable(s));
  const auto r = integrate(s, 1000);
  CHECK(std::isfinite(r.value));
}

TEST_CASE("correction term vanishes for even parity") {
  CHECK(std::fabs(correction_term(pair_spec(pi / 16, 1))) <= 1e-10);
  CHECK(std::fabs(correction_term(make(2, {0, 1, 2}, {3 * pi / 16, 3 * pi / 16, 0.4}))) <= 1e-10);
  CHECK(correction_term(pair_spec(pi / 16, 1), 0.0) == 0.0);
  CHECK(correction_term(odd({1, 1}, {1, 0.5}), 0.0) == 0.0);
  CHECK_THROWS_AS(correction_term(pair_spec(pi, pi)), DampingError);
  CHECK_THROWS_AS(correction_term(odd({1, 1}, {4, 3})), DampingError);
}

TEST_CASE("correction term closes the odd-parity identity") {
  struct Case {
    std::vector<double> nu, a;
  };
  for (const auto& c : {Case{{1, 1}, {1, 0.5}}, Case{{1.5, 0.5}, {1, 0.5}}, Case{{1, 1, 1}, {1, 0.7, 0.4}}}) {
    const auto f = odd(c.nu, c.a);
    REQUIRE(f.decay_exponent() > 1.0);
    const std::int64_t M = 100000;
    const auto s = summation::sum_terms(f, M);
    const double sum_err = summation::bound_formula(f, identity::ConvergenceClass::Absolute, M) + 1e-15 * s.abs_sum;
    const auto q = integrate(f, t_max_for_tail(f, 1e-8));
    const double corr = correction_term(f);
    CHECK(corr != 0.0);
    CHECK(std::fabs(s.value - q.value - corr) <= sum_err + q.error_estimate + 1e-12);
  }
}

TEST_CASE("band limit") {
  const auto a = pair_spec(pi / 16, 1);
  const identity::Integrand fa(a);
  const double h = default_sample_step(fa);
  CHECK(band_limit_check(a, 1 << 14, h) <= 1e-6);
  CHECK(band_limit_check(a, 1 << 14, h / 2) <= 1e-6);

  const auto j0 = make(0, {0}, {1});
  CHECK(band_limit_check(j0, 1 << 14, default_sample_step(identity::Integrand(j0))) <= 1e-6);

  // An odd-parity integrand has a kink in its even extension and leaks.
  const auto f = odd({1, 1}, {1, 0.5});
  const double hf = default_sample_step(f);
  const double l1 = band_limit_check(f, 1 << 14, hf);
  const double l2 = band_limit_check(f, 1 << 14, hf / 2);
  CHECK(l1 > 1e-6);
  CHECK(l2 <= 10 * l1);
  CHECK(l1 <= 10 * l2);

  CHECK_THROWS_AS(band_limit_check(a, 1000, h), ConfigError);
  CHECK_THROWS_AS(band_limit_check(a, 2048, h), ConfigError);
  CHECK_THROWS_AS(band_limit_check(a, 1 << 12, 10.0), ConfigError);
  CHECK_THROWS_AS(band_limit_check(a, 1 << 12, 0.0), ConfigError);
}

TEST_CASE("result rendering") {
  const auto j = to_json(integrate(pair_spec(pi / 16, 1), 10));
  for (const char* key : {"\"value\":", "\"panels\":", "\"t_max\":", "\"error_estimate\":", "\"tail_bounded\":"}) {
    CHECK_MESSAGE(j.find(key) != std::string::npos, key);
  }
}
