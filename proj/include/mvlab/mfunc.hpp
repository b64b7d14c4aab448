#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mvlab/sieve.hpp"

namespace mvlab {

using Complex = std::complex<double>;

/// A complex-valued multiplicative function, given by its values on prime
/// powers. Values are computed on demand by an evaluator; copies share it.
/// Evaluators are pure, so a function may be called from several threads.
class MultiplicativeFn {
 public:
  using Evaluator = std::function<Complex(std::uint64_t prime, int exponent)>;

  MultiplicativeFn(std::string name, Evaluator eval, double prime_bound, bool nonneg);

  /// g(p^k); g(p^0) = 1.
  Complex operator()(std::uint64_t prime, int exponent) const {
    return exponent == 0 ? Complex{1.0, 0.0} : (*eval_)(prime, exponent);
  }

  /// Canonical spec string; parse_fn_spec(name()) rebuilds the function
  /// whenever it was built from the grammar.
  const std::string& name() const noexcept { return name_; }

  /// Asserted bound beta with |g(p)| <= beta.
  double prime_bound() const noexcept { return prime_bound_; }

  /// All values real and non-negative.
  bool nonneg() const noexcept { return nonneg_; }

 private:
  std::string name_;
  std::shared_ptr<const Evaluator> eval_;
  double prime_bound_;
  bool nonneg_;
};

/// A dominated function h together with its dominant g (|h| <= g).
struct FnPair {
  MultiplicativeFn h;
  MultiplicativeFn g;
};

// Registry.
MultiplicativeFn one();
MultiplicativeFn divisor();
MultiplicativeFn moebius();
MultiplicativeFn liouville();
MultiplicativeFn unit();  // epsilon: 1 at n = 1, 0 elsewhere

/// Seeded random function, real, uniform in [lo, hi] on primes, zero on
/// higher prime powers. Deterministic in (seed, p).
MultiplicativeFn random_prime_fn(std::uint64_t seed, double lo, double hi);

/// Seeded random function with values uniform in the disc |z| <= radius on
/// primes and, when `higher_powers` is set, on every prime power as well.
MultiplicativeFn random_complex_fn(std::uint64_t seed, double radius, bool higher_powers);

/// Product of f(p^k) over the factorization of n; 1 at n = 1.
Complex eval_at(const MultiplicativeFn& f, std::uint64_t n, const FactorTable& table);

/// n -> f(n) n^{it}.
MultiplicativeFn twist(const MultiplicativeFn& f, double t);

MultiplicativeFn abs_fn(const MultiplicativeFn& f);

MultiplicativeFn dirichlet_convolve(const MultiplicativeFn& f, const MultiplicativeFn& g);

enum class SplitMode {
  kSquarefree,  // g1, g2 live on primes only; g = g1 * g2 on squarefree n
  kFull,        // all prime powers carried over; g = g1 * g2 everywhere
};

using PrimeSet = std::function<bool(std::uint64_t prime)>;

/// g1 carries g off the prime set, g2 carries g on it.
std::pair<MultiplicativeFn, MultiplicativeFn> split_by_prime_set(const MultiplicativeFn& g,
                                                                 PrimeSet in_set, SplitMode mode,
                                                                 const std::string& set_name = "S");

/// g = g1 * g2 with g1 exponentially multiplicative, g1(p^k) = g(p)^k / k!,
/// and g2(p) = 0.
std::pair<MultiplicativeFn, MultiplicativeFn> exponential_split(const MultiplicativeFn& g);

/// Dirichlet character modulo a prime q, fixed by chi(r) = exp(2 pi i index/(q-1))
/// for the smallest primitive root r of q.
class DirichletCharacter {
 public:
  DirichletCharacter(std::uint64_t q, std::uint64_t index);

  std::uint64_t modulus() const noexcept { return q_; }
  std::uint64_t index() const noexcept { return index_; }
  std::uint64_t primitive_root() const noexcept { return root_; }

  /// chi(n)^power; 0 when q | n.
  Complex power(std::uint64_t n, int exponent) const;
  Complex operator()(std::uint64_t n) const { return power(n, 1); }

 private:
  std::uint64_t q_;
  std::uint64_t index_;
  std::uint64_t root_;
  std::shared_ptr<const std::vector<std::uint32_t>> dlog_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Smallest primitive root of the prime q.
std::uint64_t primitive_root(std::uint64_t q);

/// p^k -> g(p^k) chi(p)^k.
MultiplicativeFn character_twist(const MultiplicativeFn& g, std::uint64_t q, std::uint64_t index);

/// (sum_{p <= x} |f(p) - g(p)|^2 / p)^{1/2}.
double sigma_distance(const MultiplicativeFn& f, const MultiplicativeFn& g, double x,
                      const PrimeTable& primes);

struct DominationAudit {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // max of |h(p^k)| - g(p^k)
  std::uint64_t worst_prime = 0;
  int worst_exponent = 0;

  bool ok() const noexcept { return violations == 0; }
};

/// Spot-checks |h(p^k)| <= g(p^k) for primes up to max_prime, k <= max_exponent.
DominationAudit audit_domination(const FnPair& pair, const PrimeTable& primes,
                                 std::uint64_t max_prime = 100'000, int max_exponent = 4);

/// Counts sampled values violating the nonneg flag (imaginary part or sign).
std::size_t audit_nonneg(const MultiplicativeFn& f, const PrimeTable& primes,
                         std::uint64_t max_prime = 100'000, int max_exponent = 4);

/// Shortest round-trip decimal form, used in canonical names.
std::string format_number(double value);

}  // namespace mvlab
