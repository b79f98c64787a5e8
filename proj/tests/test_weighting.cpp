#include <doctest.h>

#include <cmath>

#include "ecbe/student_t.hpp"
#include "ecbe/weighting.hpp"
#include "oracles.hpp"

using namespace ecbe;

TEST_CASE("delta_factor branches") {
  CHECK(delta_factor(0.0, 2.0) == 2.0);
  CHECK(delta_factor(0.5, 2.0) == doctest::Approx(0.223130).epsilon(1e-5));
  // The discontinuity at zero: psi -> 0+ approaches 1/e, not beta.
  CHECK(delta_factor(1e-12, 2.0) == doctest::Approx(1.0 / M_E).epsilon(1e-9));
  CHECK_THROWS_AS(static_cast<void>(delta_factor(0.0, 1.0)), config_error);
  CHECK_THROWS_AS(static_cast<void>(delta_factor(0.0, 0.5)), config_error);
}

TEST_CASE("update_weight multiplies and clamps") {
  WeightPolicy policy;
  policy.beta = 2.0;
  CHECK(update_weight(1.0, 0.0, policy) == 2.0);
  CHECK(update_weight(1.0, 0.5, policy) == doctest::Approx(0.223130).epsilon(1e-5));
  CHECK(update_weight(policy.w_min, 1.0, policy) == policy.w_min);
  CHECK(update_weight(policy.w_max, 0.0, policy) == policy.w_max);
}

TEST_CASE("update_weight is strictly decreasing in psi on psi > 0") {
  WeightPolicy policy;
  double prev = update_weight(1.0, 0.01, policy);
  for (double psi = 0.05; psi < 3.0; psi += 0.05) {
    const double next = update_weight(1.0, psi, policy);
    CHECK(next < prev);
    prev = next;
  }
}

TEST_CASE("persistent positive deviation decays at least exponentially") {
  WeightPolicy policy;
  const double psi_min = 0.2;
  double w = policy.w_init;
  for (int m = 1; m <= 20; ++m) {
    w = update_weight(w, psi_min + 0.1 * (m % 3), policy);
    CHECK(w <= policy.w_init * std::exp(-m * (1.0 + psi_min)) * (1.0 + 1e-12));
  }
}

TEST_CASE("student_t_quantile reference values") {
  CHECK(student_t_quantile(0.05, 2) == doctest::Approx(2.920).epsilon(0.002));
  CHECK(student_t_quantile(0.05, 10) == doctest::Approx(1.812).epsilon(0.002));
  CHECK(student_t_quantile(0.5, 1) == 0.0);
  CHECK(student_t_quantile(0.5, 37) == 0.0);
  CHECK_THROWS_AS(static_cast<void>(student_t_quantile(0.05, 0)), config_error);
  CHECK_THROWS_AS(static_cast<void>(student_t_quantile(1.5, 3)), config_error);
}

TEST_CASE("student_t_quantile matches the quadrature oracle within 0.005") {
  for (int df : {1, 2, 3, 4, 5, 7, 10, 15, 20, 30, 50, 100, 1000}) {
    for (double alpha : {0.01, 0.05, 0.1}) {
      const double expected = oracle::t_quantile(alpha, df);
      CHECK_MESSAGE(std::abs(student_t_quantile(alpha, df) - expected) <= 0.005,
                    "df=", df, " alpha=", alpha);
    }
  }
}

TEST_CASE("weight_floor on the stated examples") {
  WeightLedger ledger;
  for (int i = 0; i < 5; ++i) ledger.append(1.0);
  auto theta = weight_floor(ledger, 0.05);
  REQUIRE(theta);
  CHECK(*theta == doctest::Approx(1.0).epsilon(1e-12));  // S = 0

  WeightLedger three;
  three.append(0.8);
  three.append(1.0);
  three.append(1.2);
  theta = weight_floor(three, 0.05);
  REQUIRE(theta);
  CHECK(*theta == doctest::Approx(0.06283).epsilon(0.02));
  CHECK(std::abs(*theta - 0.06283) < 0.001);
}

TEST_CASE("weight_floor needs at least two records") {
  WeightLedger ledger;
  CHECK_FALSE(weight_floor(ledger, 0.05).has_value());
  ledger.append(1.0);
  CHECK_FALSE(weight_floor(ledger, 0.05).has_value());
  ledger.append(1.0);
  CHECK(weight_floor(ledger, 0.05).has_value());
}

TEST_CASE("weight_floor is nondecreasing in alpha") {
  WeightLedger ledger;
  ledger.append(0.9);
  ledger.append(1.1);
  ledger.append(1.0);
  ledger.append(0.8);
  double prev = -1e300;
  for (double alpha : {0.01, 0.05, 0.1, 0.2, 0.4}) {
    const double theta = *weight_floor(ledger, alpha);
    CHECK(theta >= prev);
    prev = theta;
  }
}

TEST_CASE("ledger clears to empty") {
  WeightLedger ledger;
  ledger.append(1.0);
  ledger.append(2.0);
  CHECK(ledger.size() == 2);
  ledger.clear();
  CHECK(ledger.size() == 0);
}
