#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mvlab/error.hpp"

namespace mvlab {

/// Largest sieve limit accepted when no explicit budget is given. The
/// environment variable MVLAB_LIMIT overrides it.
inline constexpr std::uint64_t kDefaultLimitBudget = 100'000'000;

std::uint64_t limit_budget();

struct PrimePower {
  std::uint64_t prime;
  int exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// All primes up to `limit`, ascending.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
      : limit_(limit), primes_(std::move(primes)) {}

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }
  std::uint64_t operator[](std::size_t i) const noexcept { return primes_[i]; }

  /// Number of primes <= x (x may exceed the limit only if it is clamped by
  /// the caller; no check here).
  std::size_t count_upto(double x) const noexcept;

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint64_t> primes_;
};

/// Smallest-prime-factor table for 2 <= n <= limit. Immutable once built.
class FactorTable {
 public:
  FactorTable() = default;
  FactorTable(std::uint64_t limit, std::vector<std::uint32_t> spf)
      : limit_(limit), spf_(std::move(spf)) {}

  std::uint64_t limit() const noexcept { return limit_; }

  /// Smallest prime factor of n; undefined for n < 2 or n > limit.
  std::uint64_t spf(std::uint64_t n) const noexcept { return spf_[n]; }

  std::span<const std::uint32_t> raw() const noexcept { return spf_; }

  /// Calls visit(prime, exponent) for each prime power exactly dividing n,
  /// primes ascending. No range check.
  template <typename Visitor>
  void visit_factors(std::uint64_t n, Visitor&& visit) const {
    while (n > 1) {
      const std::uint64_t p = spf_[n];
      int k = 0;
      do {
        n /= p;
        ++k;
      } while (n % p == 0);
      visit(p, k);
    }
  }

 private:
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> spf_;
};

/// Segmented, odd-only sieve of Eratosthenes.
PrimeTable sieve_primes(std::uint64_t limit, std::uint64_t budget = limit_budget());

FactorTable build_factor_table(std::uint64_t limit, std::uint64_t budget = limit_budget());

std::vector<PrimePower> factorize(std::uint64_t n, const FactorTable& table);

/// sum_{p <= x} log(p) / p, compensated.
double mertens_log_sum(double x, const PrimeTable& primes);

/// Both tables at one limit; the usual argument to the analysis modules.
struct Tables {
  PrimeTable primes;
  FactorTable factors;

  std::uint64_t limit() const noexcept { return factors.limit(); }

  static Tables build(std::uint64_t limit, std::uint64_t budget = limit_budget());
};

// Binary cache: "MVLBSPF\0", u32 version, u64 limit, (limit + 1) x u32 spf,
// all little-endian.
inline constexpr std::uint32_t kFactorCacheVersion = 1;

void save_factor_table(const std::filesystem::path& path, const FactorTable& table);

/// Throws DomainError on a malformed or mismatched file.
FactorTable load_factor_table(const std::filesystem::path& path);

/// Loads <dir>/spf_<limit>.bin when present and valid, otherwise builds the
/// table and writes the cache.
FactorTable cached_factor_table(const std::filesystem::path& dir, std::uint64_t limit,
                                std::uint64_t budget = limit_budget());

}  // namespace mvlab
