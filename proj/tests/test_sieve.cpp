#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "mvlab/error.hpp"
#include "mvlab/sieve.hpp"
#include "oracles.hpp"

using namespace mvlab;

TEST_CASE("primes agree with trial division") {
  const PrimeTable t = sieve_primes(100'000);
  const auto ref = oracle::trial_primes(100'000);
  REQUIRE(t.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(t[i] == ref[i]);
}

TEST_CASE("prime counts at known points") {
  const PrimeTable t = sieve_primes(10'000'000);
  CHECK(t.count_upto(10) == 4);
  CHECK(t.count_upto(1e6) == 78498);
  CHECK(t.count_upto(1e7) == 664579);
  CHECK(t.count_upto(1.5) == 0);
  CHECK(t.count_upto(2.0) == 1);
}

TEST_CASE("small limits and segment boundaries") {
  CHECK(sieve_primes(2).size() == 1);
  CHECK(sieve_primes(1).size() == 0);
  // the segment length is 2^20; straddle it
  const PrimeTable t = sieve_primes((1U << 21) + 77);
  for (std::size_t i = 0; i < t.size(); i += 997) CHECK(oracle::trial_is_prime(t[i]));
}

TEST_CASE("factor table reproduces trial factorisation") {
  const FactorTable f = build_factor_table(50'000);
  for (std::uint64_t n = 2; n <= 50'000; ++n) {
    const auto got = factorize(n, f);
    const auto ref = oracle::trial_factor(n);
    REQUIRE(got.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CHECK(got[i].prime == ref[i].first);
      CHECK(got[i].exponent == ref[i].second);
    }
  }
}

TEST_CASE("factor table errors") {
  CHECK_THROWS_AS(build_factor_table(1), DomainError);
  CHECK_THROWS_AS(build_factor_table(1000, 100), ResourceError);
  CHECK_THROWS_AS(sieve_primes(1000, 100), ResourceError);
  const FactorTable f = build_factor_table(100);
  CHECK_THROWS_AS(factorize(101, f), DomainError);
  CHECK_THROWS_AS(factorize(0, f), DomainError);
}

TEST_CASE("Mertens-type sum stays within 2 of log x") {
  const PrimeTable t = sieve_primes(1'000'000);
  for (double x = 2.0; x <= 1e6; x *= 1.7) {
    CAPTURE(x);
    CHECK(std::abs(mertens_log_sum(x, t) - std::log(x)) <= 2.0);
  }
  CHECK_THROWS_AS(mertens_log_sum(1.0, t), DomainError);
  CHECK_THROWS_AS(mertens_log_sum(2e6, t), DomainError);
}

TEST_CASE("factor table cache round-trip") {
  const auto dir = std::filesystem::temp_directory_path() / "mvlab_test_cache";
  std::filesystem::remove_all(dir);
  const FactorTable built = cached_factor_table(dir, 10'000, limit_budget());
  CHECK(std::filesystem::exists(dir / "spf_10000.bin"));
  const FactorTable loaded = cached_factor_table(dir, 10'000, limit_budget());
  CHECK(loaded.limit() == built.limit());
  CHECK(std::equal(loaded.raw().begin(), loaded.raw().end(), built.raw().begin(), built.raw().end()));

  const auto bad = dir / "bad.bin";
  {
    std::ofstream out(bad, std::ios::binary);
    out << "not a table";
  }
  CHECK_THROWS_AS(load_factor_table(bad), DomainError);
  std::filesystem::remove_all(dir);
}
