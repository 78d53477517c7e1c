#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "besselsum/summation.hpp"
#include "oracles/reference_values.inc"

using namespace besselsum;
using namespace besselsum::summation;

namespace {

constexpr double pi = std::numbers::pi;

BesselProductSpec make(std::int64_t k, std::vector<double> nu, std::vector<double> a) {
  return BesselProductSpec::from_lists(k, nu, a);
}

BesselProductSpec triple_spec(double a, double b) { return make(2, {0, 1, 2}, {a, a, b}); }

// sum eps_m m^{-1/2} J_{1/2}(a m) = sqrt(2/(pi a)) * pi/2 for 0 < a < 2pi.
double sine_series(double a) { return std::sqrt(2.0 / (pi * a)) * pi / 2; }

}  // namespace

TEST_CASE("single-term sum") {
  for (const auto& s : {make(0, {0.5}, {1}), make(-1, {-1.5, -1, 0.5, 0}, {0.2, 0.2, 0.2, 0.5})}) {
    CHECK(sum_truncated(s, 0) == identity::summand(s, 0));
  }
  CHECK_THROWS_AS(sum_truncated(make(0, {0.5}, {1}), -1), ConfigError);
}

TEST_CASE("sine series closed form") {
  for (double a : {0.5, 1.0, 3.0}) {
    CAPTURE(a);
    const auto r = evaluate(make(0, {0.5}, {a}), FixedTerms{100000});
    CHECK(r.convergence_class == ConvergenceClass::Conditional);
    CHECK(r.accelerated);
    CHECK(std::fabs(r.value - sine_series(a)) <= r.error_bound);
    CHECK(std::fabs(r.value - sine_series(a)) <= 1e-6 * sine_series(a));
  }
}

TEST_CASE("Weber-Schafheitlin closed form") {
  const auto s = make(0, {0.5, 0.5}, {1, 0.5});
  const auto r = evaluate(s, FixedTerms{100000});
  CHECK(r.convergence_class == ConvergenceClass::Absolute);
  CHECK_FALSE(r.accelerated);
  CHECK(std::fabs(r.value - std::sqrt(0.5)) <= r.error_bound);
}

TEST_CASE("bound scaling") {
  const auto abs_spec = make(0, {1.5, 1.5}, {1, 0.7});
  CHECK(truncation_bound(abs_spec, 200) / truncation_bound(abs_spec, 100) == doctest::Approx(0.125).epsilon(1e-13));
  CHECK(truncation_bound(abs_spec, 1000) / truncation_bound(abs_spec, 100) == doctest::Approx(1e-3).epsilon(1e-12));

  const auto cond = triple_spec(3 * pi / 16, 0.4);
  CHECK(truncation_bound(cond, 400) / truncation_bound(cond, 100) == doctest::Approx(0.5).epsilon(1e-13));

  CHECK_THROWS_AS(truncation_bound(abs_spec, 9), ConfigError);
  CHECK_THROWS_AS(truncation_bound(make(1, {0.5}, {1}), 100), identity::InvalidSpec);
}

TEST_CASE("bound holds against a long reference") {
  const auto s = make(0, {1.5, 1.5}, {1, 0.7});
  const double ref = evaluate(s, FixedTerms{1000000}).value;
  for (std::int64_t M : {10, 30, 100, 316, 1000, 3162}) {
    CAPTURE(M);
    CHECK(std::fabs(sum_truncated(s, M) - ref) <= truncation_bound(s, M));
  }
}

TEST_CASE("tolerance targets") {
  const auto s = make(0, {1.5, 1.5}, {1, 0.7});
  const auto r = evaluate(s, Tolerance{1e-8});
  CHECK(r.error_bound <= 1e-8);
  CHECK(r.terms_used >= kMinBoundTerms);
  const double ref = evaluate(s, FixedTerms{1000000}).value;
  CHECK(std::fabs(r.value - ref) <= 1e-8);

  CHECK_THROWS_AS(evaluate(s, Tolerance{1e-300, 100}), ToleranceUnreachable);
  CHECK_THROWS_AS(evaluate(make(0, {0.5}, {1}), Tolerance{1e-30, 4096}), ToleranceUnreachable);
  CHECK_THROWS_AS(evaluate(make(0, {0.5}, {1}), Tolerance{1e-6, 1000000}, Options{false}), ToleranceUnreachable);
  CHECK_THROWS_AS(evaluate(s, Tolerance{-1.0}), ConfigError);

  const auto acc = evaluate(make(0, {0.5}, {1}), Tolerance{1e-6});
  CHECK(acc.accelerated);
  CHECK(acc.error_bound <= 1e-6);
  CHECK(std::fabs(acc.value - sine_series(1.0)) <= 1e-6);
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(evaluate(make(1, {0.5}, {1}), FixedTerms{100}), identity::InvalidSpec);
  CHECK_THROWS_AS(sum_truncated(make(0, {0.5}, {7}), 10), identity::InvalidSpec);
  try {
    evaluate(make(1, {0.5}, {1}), FixedTerms{100});
  } catch (const identity::InvalidSpec& e) {
    CHECK_FALSE(e.report().valid);
    CHECK_FALSE(e.report().triggered_rules.empty());
  }
}

TEST_CASE("rescaling above the boundary") {
  const auto s = make(0, {0.5, 1.5}, {2 * pi, 2 * pi});
  const auto r = evaluate(s, FixedTerms{1000});
  CHECK(r.rescaled);
  CHECK(r.rescale_A == doctest::Approx(2.0).epsilon(1e-15));
  const auto inner = evaluate(identity::rescale(s).spec, FixedTerms{1000});
  CHECK(r.value == doctest::Approx(2.0 * inner.value).epsilon(1e-15));
  CHECK(r.error_bound == doctest::Approx(2.0 * inner.error_bound).epsilon(1e-15));
}

TEST_CASE("acceleration never worsens") {
  struct Case {
    BesselProductSpec spec;
    double reference;
  };
  std::vector<Case> cases;
  for (double a : {0.5, 1.0, 3.0}) cases.push_back({make(0, {0.5}, {a}), sine_series(a)});
  for (double b : {0.2, 0.4}) {
    const auto s = triple_spec(3 * pi / 16, b);
    cases.push_back({s, evaluate(s, FixedTerms{1000000}).value});
  }
  for (const auto& c : cases) {
    for (std::int64_t M : {1000, 10000}) {
      const double raw = evaluate(c.spec, FixedTerms{M}, Options{false}).value;
      const double acc = evaluate(c.spec, FixedTerms{M}).value;
      CHECK(std::fabs(acc - c.reference) <= std::fabs(raw - c.reference) + 1e-12);
    }
  }
}

TEST_CASE("partial sums stay bounded") {
  for (const auto& s : {make(0, {0.5}, {1}), triple_spec(3 * pi / 16, 0.4), make(0, {1.5, 1.5}, {1, 0.7})}) {
    const identity::Integrand f(s);
    const double limit = evaluate(s, FixedTerms{1000000}).value;
    const double ceiling = std::fabs(limit) + truncation_bound(s, kMinBoundTerms);
    const auto partial = partial_sums(f, kMinBoundTerms, 200000);
    double worst = 0.0;
    for (double v : partial) worst = std::max(worst, std::fabs(v));
    CHECK(worst <= ceiling);
  }
}

TEST_CASE("agreement with independent integrals") {
  const auto a = make(0, {0.5, 1.5}, {pi / 16, 1});
  const auto ra = evaluate(a, FixedTerms{10000});
  CHECK(std::fabs(ra.value - kPairIntegral) <= ra.error_bound + 1e-14);

  const auto c = make(-1, {-1.5, -1, 0.5, 0}, {pi / 16, pi / 16, pi / 16, 0.5});
  const auto rc = evaluate(c, FixedTerms{10000});
  CHECK(std::fabs(rc.value - kQuadIntegral) <= rc.error_bound + 1e-14);
}

TEST_CASE("partial sums match block sums") {
  const identity::Integrand f(triple_spec(3 * pi / 16, 0.4));
  const auto partial = partial_sums(f, 9000, 10000);
  REQUIRE(partial.size() == 1001);
  CHECK(partial.back() == doctest::Approx(sum_terms(f, 10000).value).epsilon(1e-13));
  CHECK(partial.front() == doctest::Approx(sum_terms(f, 9000).value).epsilon(1e-13));
}

TEST_CASE("acceleration needs a full slow period") {
  std::vector<double> tail(100, 1.0);
  CHECK_FALSE(accelerate(tail, 0.01).applied);
  CHECK_FALSE(accelerate(tail, 0.0).applied);
  const auto r = accelerate(tail, 1.0);
  CHECK(r.applied);
  CHECK(r.value == 1.0);
  CHECK(r.increment == 0.0);
}

TEST_CASE("evaluation is deterministic") {
  const auto s = triple_spec(3 * pi / 16, 0.4);
  const auto r1 = evaluate(s, FixedTerms{50000});
  const auto r2 = evaluate(s, FixedTerms{50000});
  CHECK(r1.value == r2.value);
  CHECK(to_json(r1) == to_json(r2));
}

TEST_CASE("result rendering") {
  const auto r = evaluate(make(0, {0.5, 1.5}, {pi / 16, 1}), FixedTerms{10});
  const auto j = to_json(r);
  for (const char* key : {"\"value\":", "\"terms_used\":10", "\"error_bound\":", "\"class\":\"absolute\"",
                          "\"accelerated\":false", "\"rescaled\":false", "\"A\":"}) {
    CHECK_MESSAGE(j.find(key) != std::string::npos, key);
  }
}
