#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcmi/bounds.hpp"
#include "lcmi/scalar.hpp"
#include "support/oracles.hpp"

using namespace lcmi;

namespace {

const std::vector<double> kTGrid{0.15, 0.3, 0.5, 0.7, 0.85};

std::vector<BinaryLinearCode> small_corpus() {
  return {repetition(3), repetition(6), single_parity_check(5), hamming_7_4(), reed_muller_1(3),
          random_code(8, 4, 13), BinaryLinearCode(7, hamming_7_4().rows(), 0b1011001)};
}

}  // namespace

TEST_CASE("thm1 bound: tight cases and frozen composition") {
  // Full space: bound alpha_t * n * eta_t = n t, met with equality.
  for (double t : kTGrid) {
    const Thm1Bound b = thm1_bound(full_space(4), t);
    CHECK(b.bound == doctest::Approx(4.0 * t).epsilon(1e-12));
    CHECK(b.fraction == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bsc_mi_exact(full_space(4), t).value - b.bound >= -1e-11);
  }
  // Frozen from the independent oracle chain (eta, alpha, 1-(1-eta)^3).
  const Thm1Bound rep3 = thm1_bound(repetition(3), 0.5);
  CHECK(rep3.bound == doctest::Approx(0.77255279408141924).epsilon(1e-11));
  const long double eta_o = [] {
    const long double d = 1.0L - 2.0L * oracles::entropy_inv_ld(0.5L);
    return d * d;
  }();
  const long double bec_o = 1.0L - (1.0L - eta_o) * (1.0L - eta_o) * (1.0L - eta_o);
  CHECK(rep3.bound == doctest::Approx(static_cast<double>(0.5L / eta_o * bec_o)).epsilon(1e-12));
  CHECK(rep3.bec_mi_at_eta == doctest::Approx(static_cast<double>(bec_o)).epsilon(1e-12));

  CHECK(thm1_bound(repetition(3), 0.0).bound == 0.0);
  CHECK_THROWS_AS(thm1_bound(repetition(3), 1.5), std::domain_error);
}

TEST_CASE("thm1 is exactly tight for one coordinate") {
  for (const BinaryLinearCode& code : small_corpus()) {
    const std::vector<int> keep{0};
    const BinaryLinearCode coord = puncture(code, keep);
    if (coord.dimension() == 0) continue;
    for (double t : kTGrid) {
      const double bound = thm1_bound(coord, t).bound;
      CHECK(bound == doctest::Approx(t).epsilon(1e-12));
      CHECK(std::fabs(bsc_mi_exact(coord, t).value - bound) < 1e-12);
    }
  }
}

TEST_CASE("sam_psi bound") {
  // Full space at t1 = eta_t: n psi_t(1) = n t.
  for (double t : kTGrid) {
    CHECK(sam_psi_bound(full_space(5), t, sdpi_eta_bsc(t)) ==
          doctest::Approx(5.0 * t).epsilon(1e-11));
  }
  // Rank-0 code: n psi_t(0) = 0.
  CHECK(std::fabs(sam_psi_bound(BinaryLinearCode(4, {}), 0.5, 0.7)) < 1e-12);
  // Frozen composition for repetition(3) at t = 1/2, t1 = eta_t.
  CHECK(sam_psi_bound(repetition(3), 0.5, sdpi_eta_bsc(0.5)) ==
        doctest::Approx(0.66446139576505768).epsilon(1e-11));
  // t1 below eta_t is rejected.
  CHECK_THROWS_AS(sam_psi_bound(repetition(3), 0.5, 0.5), std::domain_error);
  // Valid for any t1 >= eta_t.
  CHECK(sam_psi_bound(repetition(3), 0.5, 0.9) >= 0.0);
}

TEST_CASE("thm1 dominates sam_psi on the corpus") {
  for (const BinaryLinearCode& code : small_corpus()) {
    for (double t : kTGrid) {
      const double t1 = sdpi_eta_bsc(t);
      CHECK(thm1_bound(code, t).bound - sam_psi_bound(code, t, t1) >= -1e-9);
    }
  }
}

TEST_CASE("sam_mgl entropy bound") {
  for (double t : kTGrid) {
    const double p = binary_entropy_inv(1.0 - t);
    // Rank-0 code: bound n phi_t(0) = n(1-t), exact entropy n h(p) - tight.
    const BinaryLinearCode point(4, {});
    const double bound = sam_mgl_entropy_bound(point, t);
    CHECK(bound == doctest::Approx(4.0 * (1.0 - t)).epsilon(1e-11));
    CHECK(output_entropy_bsc_exact(point, t) ==
          doctest::Approx(4.0 * binary_entropy(p)).epsilon(1e-12));
    // Full space: bound = n, tight.
    CHECK(sam_mgl_entropy_bound(full_space(4), t) == doctest::Approx(4.0).epsilon(1e-11));
    CHECK(output_entropy_bsc_exact(full_space(4), t) == doctest::Approx(4.0).epsilon(1e-11));
  }
  for (const BinaryLinearCode& code : small_corpus())
    for (double t : kTGrid)
      CHECK(output_entropy_bsc_exact(code, t) - sam_mgl_entropy_bound(code, t) >= -1e-9);
}

TEST_CASE("combining bound") {
  CHECK(combining_bound(0.3, 1.0, 0.45, 1) == doctest::Approx(0.3).epsilon(1e-15));
  // Erasure: exactly (1-e^n) H.
  for (double e : {0.2, 0.8}) {
    const double h = 0.7219280948873623;  // H(Bern(0.2))
    for (int n : {1, 3, 10, 100}) {
      CHECK(combining_bound((1.0 - e) * h, h, 1.0 - e, n) ==
            doctest::Approx((1.0 - std::pow(e, n)) * h).epsilon(1e-13));
    }
  }
  // Frozen BSC(0.11) uniform-input case at n = 3.
  const double i1 = 1.0 - binary_entropy(0.11);
  CHECK(combining_bound(i1, 1.0, 0.6084, 3) == doctest::Approx(0.77260512048078).epsilon(1e-11));

  CHECK_THROWS_AS(combining_bound(0.1, 1.0, 0.0, 2), std::domain_error);  // eta 0, I1 > 0
  CHECK(combining_bound(0.0, 1.0, 0.0, 2) == 0.0);
  CHECK_THROWS_AS(combining_bound(0.9, 1.0, 0.5, 2), std::domain_error);  // I1 > eta H
  CHECK_THROWS_AS(combining_bound(0.3, 1.0, 0.45, 0), std::domain_error);
}

TEST_CASE("exponential relaxation") {
  CHECK(combining_exp_relaxation(0.4, 1.0, 3) ==
        doctest::Approx((1.0 - std::exp(-3.0)) * 0.4).epsilon(1e-14));
  // Always below the exact combining bound.
  for (int i = 1; i <= 40; ++i) {
    const double eta = i / 40.0;
    const double i1 = 0.9 * eta;  // keeps I1 <= eta H with H = 1
    for (int n : {1, 2, 5, 17, 50})
      CHECK(combining_exp_relaxation(i1, eta, n) <= combining_bound(i1, 1.0, eta, n) + 1e-12);
  }
  // Near-linear regime: n*eta <= 0.01 recovers at least 99.5% of n*I1.
  for (double eta : {1e-4, 1e-3}) {
    for (int n = 1; n * eta <= 0.01; n = 2 * n + 1)
      CHECK(combining_exp_relaxation(0.3, eta, n) >= 0.995 * n * 0.3);
  }
  CHECK(combining_exp_relaxation(0.3, 0.0, 7) == doctest::Approx(2.1).epsilon(1e-14));
}

TEST_CASE("combining upper bounds") {
  const CombiningUpperBounds one = combining_upper_bounds(0.3, 0.9, 1, 0.25);
  CHECK(one.repeated == doctest::Approx(0.3));
  CHECK(one.entropy == doctest::Approx(0.9));
  CHECK(one.more_capable.value() == doctest::Approx(0.25 * 0.9));
  // BSC of capacity t is less capable than the BEC of capacity t.
  const double t = 0.3;
  const CombiningUpperBounds many = combining_upper_bounds(t, 1.0, 10, t);
  CHECK(many.more_capable.value() == doctest::Approx(1.0 - std::pow(1.0 - t, 10)).epsilon(1e-13));
  for (int n : {1, 4, 10}) {
    const double exact = repeated_input_mi_exact(dmc_bsc(binary_entropy_inv(1.0 - t), 0.5), n).value;
    const CombiningUpperBounds ub = combining_upper_bounds(t, 1.0, n, t);
    CHECK(exact <= ub.repeated + 1e-11);
    CHECK(exact <= ub.entropy + 1e-11);
    CHECK(exact <= ub.more_capable.value() + 1e-11);
  }
  CHECK_FALSE(combining_upper_bounds(0.3, 0.9, 5).more_capable.has_value());
}

TEST_CASE("thm3 bound") {
  CHECK(thm3_bound(7, 4.0 / 7.0, 4.0 / 7.0, 0.5) == 0.0);  // eps = R
  for (int i = 1; i <= 9; ++i) {
    const double rate = i / 10.0;
    const double ts = tstar(rate);
    const double factor = 8 * (1.0 - 0.05 / rate);
    // Branch continuity at t*: eta_{t*} = R makes t R / eta_t = t.
    CHECK(std::fabs(factor * ts - factor * ts * rate / sdpi_eta_bsc(ts)) < 1e-9);
  }
  CHECK_THROWS_AS(thm3_bound(7, 0.5, 0.6, 0.5), std::domain_error);
  CHECK_THROWS_AS(thm3_bound(7, 1.0, 0.1, 0.5), std::domain_error);
}

TEST_CASE("epsilon estimation") {
  // repetition(4): I_BEC(t) = 1-(1-t)^4, minimum over the grid at the point
  // nearest R by ratio monotonicity.
  const double rate = 0.25;
  const double t1 = rate + (1.0 - rate) / 512.0;
  const double expected = rate - (1.0 - std::pow(1.0 - t1, 4)) / 4.0;
  CHECK(estimate_epsilon(repetition(4), 512) == doctest::Approx(expected).epsilon(1e-12));

  // hamming74 against the subset-rank oracle at the binding grid point.
  const double r74 = 4.0 / 7.0;
  const double tmin = r74 + (1.0 - r74) / 512.0;
  const double eps74 = estimate_epsilon(hamming_7_4(), 512);
  CHECK(eps74 == doctest::Approx(r74 - oracles::brute_bec_mi(hamming_7_4(), tmin) / 7.0)
                     .epsilon(1e-12));
  CHECK(eps74 > 0.0);
  CHECK(eps74 < r74);

  CHECK_THROWS_AS(estimate_epsilon(full_space(4)), std::domain_error);       // R = 1
  CHECK_THROWS_AS(estimate_epsilon(BinaryLinearCode(4, {})), std::domain_error);  // R = 0
}

TEST_CASE("verdict logic") {
  const VerdictPolicy policy{1e-9, 4.0, 0.0};
  const MIResult exact{0.5, Method::kExact, 0.0, 0, 0};
  CHECK(verify("b", "p", 0.5 - 1e-12, exact, BoundKind::kLowerBound, policy).verdict ==
        Verdict::kHolds);
  CHECK(verify("b", "p", 0.5 + 1e-10, exact, BoundKind::kLowerBound, policy).verdict ==
        Verdict::kHolds);  // within tolerance
  CHECK(verify("b", "p", 0.5 + 1e-6, exact, BoundKind::kLowerBound, policy).verdict ==
        Verdict::kViolated);

  const MIResult noisy{0.5, Method::kMonteCarlo, 1e-8, 100, 1};
  // Shortfall beyond tol but inside z * std_err: inconclusive, not violated.
  CHECK(verify("b", "p", 0.5 + 5e-9, noisy, BoundKind::kLowerBound, policy).verdict ==
        Verdict::kInconclusive);
  CHECK(verify("b", "p", 0.5 + 1e-6, noisy, BoundKind::kLowerBound, policy).verdict ==
        Verdict::kViolated);

  // Widened band (estimated eta) downgrades small violations.
  const VerdictPolicy widened{1e-9, 4.0, 1e-6};
  CHECK(verify("b", "p", 0.5 + 5e-7, exact, BoundKind::kLowerBound, widened).verdict ==
        Verdict::kInconclusive);

  // Upper bounds flip the slack direction.
  CHECK(verify("b", "p", 0.6, exact, BoundKind::kUpperBound, policy).verdict == Verdict::kHolds);
  const BoundReport r = verify("b", "p", 0.4, exact, BoundKind::kUpperBound, policy);
  CHECK(r.verdict == Verdict::kViolated);
  CHECK(r.slack == doctest::Approx(-0.1));
  CHECK(std::string(to_string(Verdict::kHolds)) == "holds");
}

TEST_CASE("BEC ratio monotonicity check") {
  std::vector<double> grid;
  for (int i = 1; i <= 256; ++i) grid.push_back(i / 256.0);
  for (const BinaryLinearCode& code : small_corpus()) {
    const BoundReport r = check_bec_ratio_monotone(code, grid);
    CHECK(r.verdict == Verdict::kHolds);
    CHECK(r.measured_value >= -1e-12);
  }
  CHECK_THROWS_AS(check_bec_ratio_monotone(repetition(3), std::vector<double>{0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_bec_ratio_monotone(repetition(3), std::vector<double>{0.5, 0.25}),
                  std::invalid_argument);
}
