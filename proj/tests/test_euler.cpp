#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "mvlab/construct.hpp"
#include "mvlab/error.hpp"
#include "mvlab/euler.hpp"
#include "mvlab/summatory.hpp"
#include "oracles.hpp"

using namespace mvlab;

TEST_CASE("Euler products: small cases and Mertens") {
  const Tables& t = tables_upto(1'000'000);
  CHECK(euler_product(one(), 3, t.primes).value.real() == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(euler_product(unit(), 1e6, t.primes).value == Complex{1.0, 0.0});
  const double x = 1e6;
  const double mertens = std::exp(std::numbers::egamma) * std::log(x);
  CHECK(std::abs(euler_product(one(), x, t.primes).value.real() / mertens - 1.0) < 0.02);
  // direct product of (1 - 1/p)^{-1}
  long double direct = 1.0L;
  for (std::uint64_t p : oracle::trial_primes(20'000)) direct /= 1.0L - 1.0L / p;
  CHECK(euler_product(one(), 20'000, t.primes).value.real() ==
        doctest::Approx(static_cast<double>(direct)).epsilon(1e-12));
}

TEST_CASE("Euler factor series") {
  int terms = 0;
  const Complex f = euler_factor(divisor(), 3, kEulerTol, &terms);
  CHECK(f.real() == doctest::Approx(2.25).epsilon(1e-15));  // (1 - 1/3)^{-2}
  CHECK(terms >= 3);
  CHECK(euler_factor(moebius(), 5) == Complex{0.8, 0.0});
}

TEST_CASE("incremental products agree with separate evaluation") {
  const Tables& t = tables_upto(1'000'000);
  const MultiplicativeFn f = random_complex_fn(3, 1.0, true);
  const double xs[] = {100, 5e4, 1e6};
  const auto all = euler_products(f, xs, t.primes);
  for (std::size_t i = 0; i < 3; ++i) {
    const EulerProductResult single = euler_product(f, xs[i], t.primes);
    CHECK(std::abs(all[i].value - single.value) <= 1e-12 * std::abs(single.value));
    CHECK(all[i].x == xs[i]);
  }
  const double bad[] = {10, 5};
  CHECK_THROWS_AS(euler_products(f, bad, t.primes), DomainError);
  CHECK_THROWS_AS(euler_product(f, 2e6, t.primes), DomainError);
}

TEST_CASE("dominated products are smaller in modulus") {
  const Tables& t = tables_upto(1'000'000);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MultiplicativeFn h = character_twist(random_prime_fn(seed, 0, 1), 7, 2);
    const MultiplicativeFn g = random_prime_fn(seed, 0, 1);
    CHECK(std::abs(euler_product(h, 1e5, t.primes).value) <=
          euler_product(g, 1e5, t.primes).value.real() * (1 + 1e-12));
  }
}

TEST_CASE("vanishing factor") {
  const Tables& t = tables_upto(1'000'000);
  // h(2) = -2 kills the factor at p = 2
  const MultiplicativeFn h("kill2",
                           [](std::uint64_t p, int k) {
                             return k == 1 && p == 2 ? Complex{-2.0, 0.0} : Complex{0.0, 0.0};
                           },
                           2.0, false);
  const EulerProductResult r = euler_product(h, 100, t.primes);
  CHECK(r.vanishing);
  CHECK(r.value == Complex{0.0, 0.0});
  CHECK(std::isinf(r.log_value.real()));
  CHECK_THROWS_AS(thm1_predict({one(), h}, 100, t), DomainError);
}

TEST_CASE("star regions") {
  CHECK(average_radius(StarRegion::disc(0.7)) == doctest::Approx(0.7).epsilon(1e-14));
  const StarRegion cardioid =
      StarRegion::from_function([](double th) { return 1.0 + std::cos(th); });
  CHECK(average_radius(cardioid) == doctest::Approx(1.0).epsilon(1e-12));
  for (double a : {0.5, 1.0, 2.0}) {
    const double reference = oracle::mean_radius([a](double th) {
      return a / std::max(std::fabs(std::cos(th)), std::fabs(std::sin(th)));
    });
    CHECK(std::abs(average_radius(StarRegion::square(a)) - reference) < 1e-3);
    // closed form: (4 a / pi) asinh(1)
    CHECK(reference == doctest::Approx(4 * a / std::numbers::pi * std::asinh(1.0)).epsilon(1e-6));
  }
  const StarRegion unit_disc = StarRegion::disc(1.0);
  CHECK(region_contains(unit_disc, {0.0, 0.0}));
  CHECK(region_contains(unit_disc, {0.5, 0.0}));
  CHECK_FALSE(region_contains(unit_disc, {1.1, 0.0}));
  CHECK_FALSE(region_contains(cardioid, {0.0, 2.5}));
  CHECK(region_contains(StarRegion::square(1.0), {0.99, 0.99}));
  CHECK_FALSE(region_contains(StarRegion::sector(1.0, 0.5), {0.0, 0.5}));
  CHECK(region_contains(StarRegion::sector(1.0, 0.5), {0.5, 0.1}));
  CHECK(StarRegion::square(1.0).max_radius() == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(StarRegion(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(StarRegion(std::vector<double>{1.0, -1.0}), DomainError);
}

TEST_CASE("mean-value prediction for non-negative functions") {
  const Tables& t = tables_upto(10'000'000);
  const double x = 1e6;
  const double d = static_cast<double>(oracle::divisor_summatory(1'000'000));
  CHECK(std::abs(wirsing_prediction(divisor(), x, 2.0, t).real() / d - 1.0) < 0.05);
  CHECK(std::abs(wirsing_prediction(one(), x, 1.0, t).real() / x - 1.0) < 0.03);
  double previous = 1e9;
  for (double y : {1e4, 1e5, 1e6, 1e7}) {
    const double drift = std::abs(wirsing_prediction(one(), y, 1.0, t).real() / y - 1.0);
    CHECK(drift < previous);
    previous = drift;
  }
  CHECK_THROWS_AS(wirsing_prediction(one(), x, 0.0, t), DomainError);
}

TEST_CASE("density estimates") {
  const Tables& t = tables_upto(1'000'000);
  CHECK(std::abs(estimate_tau(one(), 1e6, t.primes) - 1.0) < 0.1);
  CHECK(std::abs(estimate_tau(divisor(), 1e6, t.primes) - 2.0) < 0.2);
  CHECK(estimate_tau(unit(), 1e6, t.primes) == 0.0);
  CHECK_THROWS_AS(estimate_tau(one(), 2, t.primes), DomainError);
}

TEST_CASE("harmonic-sum prediction") {
  const Tables& t = tables_upto(1'000'000);
  const TheoremPrediction same = thm1_predict({divisor(), divisor()}, 1e5, t);
  CHECK(same.predicted == same.reference);
  CHECK(same.ratio == Complex{1.0, 0.0});
  CHECK(same.normalized_error == 0.0);
  CHECK(same.case_tag == CaseTag::kThm1);
  CHECK(all_passed(same.audits));

  const TheoremPrediction mu = thm1_predict({moebius(), one()}, 1e6, t);
  CHECK(std::abs(mu.reference) < 0.05 * mu.scale);
  CHECK(std::abs(mu.predicted) < 0.05 * mu.scale);

  // h = twist of a real character: prediction error relative to G(x) shrinks
  const FnPair chi{twist(character_twist(one(), 5, 2), 0.0), one()};
  const double xs[] = {1e4, 1e5, 1e6};
  const auto r = thm1_predict(chi, xs, t);
  CHECK(r[2].normalized_error < r[0].normalized_error);
}

TEST_CASE("dominated sums with values in a star region") {
  const Tables& t = tables_upto(1'000'000);
  const double xs[] = {1e4, 1e6};
  const auto same = thm3_predict({one(), one()}, StarRegion::disc(1.0), 1.5, xs, t);
  CHECK(same[1].ratio == Complex{1.0, 0.0});
  CHECK(all_passed(same[1].audits));
  const auto outside = thm3_predict({one(), one()}, StarRegion::disc(0.5), 1.5, xs, t);
  CHECK_FALSE(all_passed(outside[0].audits));
}

TEST_CASE("twisted prediction against Euler-Maclaurin") {
  const Tables& t = tables_upto(1'000'000);
  const double xs[] = {1e5};
  const TheoremPrediction p = thm4_predict({twist(one(), 1.0), one()}, -1.0, xs, t).front();
  const Complex oracle = oracle::power_sum(100'000, 1.0);
  CHECK(std::abs(p.reference - oracle) <= 1e-9 * std::abs(oracle));
  CHECK(std::abs(p.predicted / p.reference - 1.0) <= 1e-3);
  const TheoremPrediction untwisted = thm4_predict({moebius(), one()}, 0.0, xs, t).front();
  const TheoremPrediction plain =
      thm3_predict({moebius(), one()}, StarRegion::disc(1.0), 1.5, xs, t).front();
  CHECK(untwisted.predicted == plain.predicted);
  CHECK(untwisted.reference == plain.reference);
}

TEST_CASE("Liouville mean value tends to zero") {
  const Tables& t = tables_upto(10'000'000);
  const double xs[] = {1e5, 1e6, 1e7};
  const auto r = thm4_case_ii({liouville(), one()}, xs, t);
  CHECK(r[2].normalized_error <= 0.005);
  CHECK(r[1].normalized_error < r[0].normalized_error);
  CHECK(r[2].normalized_error < r[1].normalized_error);
  CHECK(r[0].predicted == Complex{0.0, 0.0});
}

TEST_CASE("complex mean-value prediction") {
  const Tables& t = tables_upto(1'000'000);
  const double xs[] = {1e6};
  const auto r = satz122_predict({one(), one()}, 1.0, xs, t);
  CHECK(std::abs(r[0].ratio - 1.0) < 0.03);
  const auto s = satz11_predict(divisor(), 2.0, xs, t);
  CHECK(std::abs(s[0].ratio - 1.0) < 0.05);
  CHECK(case_name(CaseTag::kSatz122) == "satz122");
}

TEST_CASE("divergence heuristic") {
  const Tables& t = tables_upto(10'000'000);
  const auto grid = loglog_grid(1e7);
  CHECK(grid.size() == 8);
  CHECK(grid.front() == doctest::Approx(10.0));
  CHECK(grid.back() == doctest::Approx(1e7));
  const DivergenceResult same = divergence_heuristic({one(), one()}, 0.0, grid, t.primes);
  CHECK(same.classification == SeriesClass::kConverging);
  const MultiplicativeFn minus_one("minus_one",
                                   [](std::uint64_t, int) { return Complex{-1.0, 0.0}; }, 1.0,
                                   false);
  const DivergenceResult opposite = divergence_heuristic({minus_one, one()}, 0.0, grid, t.primes);
  CHECK(opposite.classification == SeriesClass::kDiverging);
  CHECK(opposite.slope == doctest::Approx(2.0).epsilon(0.05));
  // 1 - Re chi(p) has mean 1 over residues, so this one diverges too
  const DivergenceResult chi =
      divergence_heuristic({character_twist(one(), 5, 2), one()}, 0.0, grid, t.primes);
  CHECK(chi.classification == SeriesClass::kDiverging);
  CHECK(chi.slope == doctest::Approx(1.0).epsilon(0.15));
  CHECK(series_class_name(SeriesClass::kConverging) == "converging");
  CHECK_THROWS_AS(loglog_grid(5), DomainError);
}

TEST_CASE("Laplace-transform consistency") {
  const Tables& t = tables_upto(1'000'000);
  const LaplaceCheck c =
      laplace_consistency({character_twist(one(), 5, 2), one()}, 1e6, 1'000'000, t);
  CHECK(c.relative_gap < 0.1);
  CHECK(c.s == doctest::Approx(1.0 / std::log(1e6)));
  const LaplaceCheck q =
      laplace_consistency({character_twist(one(), 7, 1), one()}, 1e6, 1'000'000, t);
  CHECK(q.relative_gap < 0.1);
  const LaplaceCheck d = laplace_consistency({moebius(), one()}, 1e3, 1'000'000, t);
  CHECK(d.relative_gap < 0.1);
  CHECK_THROWS_AS(laplace_consistency({one(), one()}, 1e3, 2, t), DomainError);
}
