#include "mvlab/mfunc.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "mvlab/compensated.hpp"

namespace mvlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1), a pure function of its arguments.
double hash_uniform(std::uint64_t seed, std::uint64_t p, int k, std::uint64_t stream) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ p);
  h = splitmix64(h ^ (static_cast<std::uint64_t>(k) << 32) ^ stream);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  unsigned __int128 result = 1;
  unsigned __int128 b = base % mod;
  while (exp > 0) {
    if (exp & 1U) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1U;
  }
  return static_cast<std::uint64_t>(result);
}

// Largest modulus for which a discrete-log table is built.
constexpr std::uint64_t kMaxCharacterModulus = 10'000'000;

}  // namespace

MultiplicativeFn::MultiplicativeFn(std::string name, Evaluator eval, double prime_bound,
                                   bool nonneg)
    : name_(std::move(name)),
      eval_(std::make_shared<const Evaluator>(std::move(eval))),
      prime_bound_(prime_bound),
      nonneg_(nonneg) {}

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

MultiplicativeFn one() {
  return MultiplicativeFn("one", [](std::uint64_t, int) { return Complex{1.0, 0.0}; }, 1.0, true);
}

MultiplicativeFn divisor() {
  return MultiplicativeFn(
      "divisor", [](std::uint64_t, int k) { return Complex{static_cast<double>(k + 1), 0.0}; },
      2.0, true);
}

MultiplicativeFn moebius() {
  return MultiplicativeFn(
      "moebius", [](std::uint64_t, int k) { return Complex{k == 1 ? -1.0 : 0.0, 0.0}; }, 1.0,
      false);
}

MultiplicativeFn liouville() {
  return MultiplicativeFn(
      "liouville", [](std::uint64_t, int k) { return Complex{(k % 2 == 1) ? -1.0 : 1.0, 0.0}; },
      1.0, false);
}

MultiplicativeFn unit() {
  return MultiplicativeFn("eps", [](std::uint64_t, int) { return Complex{0.0, 0.0}; }, 0.0, true);
}

MultiplicativeFn random_prime_fn(std::uint64_t seed, double lo, double hi) {
  return MultiplicativeFn(
      "random(" + std::to_string(seed) + "," + format_number(lo) + "," + format_number(hi) + ")",
      [seed, lo, hi](std::uint64_t p, int k) {
        if (k != 1) return Complex{0.0, 0.0};
        return Complex{lo + (hi - lo) * hash_uniform(seed, p, 1, 0), 0.0};
      },
      std::max(std::fabs(lo), std::fabs(hi)), lo >= 0.0);
}

MultiplicativeFn random_complex_fn(std::uint64_t seed, double radius, bool higher_powers) {
  return MultiplicativeFn(
      "random_complex(" + std::to_string(seed) + "," + format_number(radius) + ")",
      [seed, radius, higher_powers](std::uint64_t p, int k) {
        if (k > 1 && !higher_powers) return Complex{0.0, 0.0};
        const double r = radius * std::sqrt(hash_uniform(seed, p, k, 1));
        const double theta = 2.0 * std::numbers::pi * hash_uniform(seed, p, k, 2);
        return std::polar(r, theta);
      },
      radius, false);
}

Complex eval_at(const MultiplicativeFn& f, std::uint64_t n, const FactorTable& table) {
  if (n < 1 || n > table.limit()) {
    throw DomainError("eval_at: n=" + std::to_string(n) + " outside [1, " +
                      std::to_string(table.limit()) + "]");
  }
  Complex value{1.0, 0.0};
  table.visit_factors(n, [&](std::uint64_t p, int k) { value *= f(p, k); });
  return value;
}

MultiplicativeFn twist(const MultiplicativeFn& f, double t) {
  return MultiplicativeFn(
      "twist(" + f.name() + "," + format_number(t) + ")",
      [f, t](std::uint64_t p, int k) {
        return f(p, k) * std::polar(1.0, k * t * std::log(static_cast<double>(p)));
      },
      f.prime_bound(), f.nonneg() && t == 0.0);
}

MultiplicativeFn abs_fn(const MultiplicativeFn& f) {
  return MultiplicativeFn(
      "abs(" + f.name() + ")",
      [f](std::uint64_t p, int k) { return Complex{std::abs(f(p, k)), 0.0}; }, f.prime_bound(),
      true);
}

MultiplicativeFn dirichlet_convolve(const MultiplicativeFn& f, const MultiplicativeFn& g) {
  return MultiplicativeFn(
      "conv(" + f.name() + "," + g.name() + ")",
      [f, g](std::uint64_t p, int k) {
        Complex sum{0.0, 0.0};
        for (int j = 0; j <= k; ++j) sum += f(p, j) * g(p, k - j);
        return sum;
      },
      f.prime_bound() + g.prime_bound(), f.nonneg() && g.nonneg());
}

std::pair<MultiplicativeFn, MultiplicativeFn> split_by_prime_set(const MultiplicativeFn& g,
                                                                 PrimeSet in_set, SplitMode mode,
                                                                 const std::string& set_name) {
  const bool full = mode == SplitMode::kFull;
  const std::string suffix = "," + set_name + (full ? ",full)" : ",squarefree)");
  auto member = std::make_shared<const PrimeSet>(std::move(in_set));
  MultiplicativeFn off(
      "split_off(" + g.name() + suffix,
      [g, member, full](std::uint64_t p, int k) {
        if ((*member)(p) || (!full && k > 1)) return Complex{0.0, 0.0};
        return g(p, k);
      },
      g.prime_bound(), g.nonneg());
  MultiplicativeFn on(
      "split_on(" + g.name() + suffix,
      [g, member, full](std::uint64_t p, int k) {
        if (!(*member)(p) || (!full && k > 1)) return Complex{0.0, 0.0};
        return g(p, k);
      },
      g.prime_bound(), g.nonneg());
  return {off, on};
}

std::pair<MultiplicativeFn, MultiplicativeFn> exponential_split(const MultiplicativeFn& g) {
  MultiplicativeFn g1(
      "exp_part(" + g.name() + ")",
      [g](std::uint64_t p, int k) {
        const Complex gp = g(p, 1);
        Complex power{1.0, 0.0};
        for (int i = 0; i < k; ++i) power *= gp;
        return power / factorial(k);
      },
      g.prime_bound(), g.nonneg());
  MultiplicativeFn g2(
      "exp_rest(" + g.name() + ")",
      [g](std::uint64_t p, int k) {
        if (k == 1) return Complex{0.0, 0.0};
        const Complex minus_gp = -g(p, 1);
        Complex term{1.0, 0.0};  // (-g(p))^r / r!
        Complex sum{0.0, 0.0};
        for (int r = 0; r <= k; ++r) {
          if (r > 0) term *= minus_gp / static_cast<double>(r);
          sum += term * g(p, k - r);
        }
        return sum;
      },
      // g2 vanishes on primes.
      0.0, false);
  return {g1, g2};
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::uint64_t primitive_root(std::uint64_t q) {
  if (!is_prime(q)) throw DomainError("primitive_root: modulus " + std::to_string(q) + " not prime");
  if (q == 2) return 1;
  std::vector<std::uint64_t> factors;
  std::uint64_t m = q - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) factors.push_back(m);
  for (std::uint64_t r = 2; r < q; ++r) {
    bool generator = true;
    for (std::uint64_t f : factors) {
      if (pow_mod(r, (q - 1) / f, q) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return r;
  }
  throw DomainError("primitive_root: none found");
}

DirichletCharacter::DirichletCharacter(std::uint64_t q, std::uint64_t index)
    : q_(q), index_(index), root_(0) {
  if (!is_prime(q)) throw DomainError("character modulus " + std::to_string(q) + " is not prime");
  if (q > kMaxCharacterModulus) throw DomainError("character modulus too large");
  if (index >= q - 1 && !(q == 2 && index == 0)) {
    throw DomainError("character index must lie in [0, q-1)");
  }
  root_ = mvlab::primitive_root(q);
  auto dlog = std::make_shared<std::vector<std::uint32_t>>(q, 0);
  std::uint64_t a = 1;
  for (std::uint64_t e = 0; e + 1 < q; ++e) {
    (*dlog)[a] = static_cast<std::uint32_t>(e);
    a = a * root_ % q;
  }
  dlog_ = std::move(dlog);
}

Complex DirichletCharacter::power(std::uint64_t n, int exponent) const {
  const std::uint64_t residue = n % q_;
  if (residue == 0) return {0.0, 0.0};
  if (q_ == 2) return {1.0, 0.0};
  const std::uint64_t order = q_ - 1;
  const std::uint64_t e =
      static_cast<std::uint64_t>(static_cast<unsigned __int128>(index_) * (*dlog_)[residue] *
                                 static_cast<unsigned>(exponent) % order);
  // exact values at the real and imaginary axes
  if (e == 0) return {1.0, 0.0};
  if (2 * e == order) return {-1.0, 0.0};
  if (4 * e == order) return {0.0, 1.0};
  if (4 * e == 3 * order) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(order));
}

MultiplicativeFn character_twist(const MultiplicativeFn& g, std::uint64_t q, std::uint64_t index) {
  const DirichletCharacter chi(q, index);
  return MultiplicativeFn(
      "char(" + g.name() + "," + std::to_string(q) + "," + std::to_string(index) + ")",
      [g, chi](std::uint64_t p, int k) { return g(p, k) * chi.power(p, k); }, g.prime_bound(),
      g.nonneg() && index == 0);
}

double sigma_distance(const MultiplicativeFn& f, const MultiplicativeFn& g, double x,
                      const PrimeTable& primes) {
  if (x > static_cast<double>(primes.limit())) {
    throw DomainError("sigma_distance: x beyond prime table limit");
  }
  const std::size_t count = primes.count_upto(x);
  CompensatedSum sum;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = primes[i];
    sum.add(std::norm(f(p, 1) - g(p, 1)) / static_cast<double>(p));
  }
  return std::sqrt(std::max(0.0, sum.value()));
}

DominationAudit audit_domination(const FnPair& pair, const PrimeTable& primes,
                                 std::uint64_t max_prime, int max_exponent) {
  DominationAudit audit;
  const std::size_t count = primes.count_upto(static_cast<double>(max_prime));
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = primes[i];
    for (int k = 1; k <= max_exponent; ++k) {
      const double h = std::abs(pair.h(p, k));
      const double g = pair.g(p, k).real();
      ++audit.checked;
      const double excess = h - g;
      if (excess > 1e-12 * std::max(1.0, std::fabs(g))) {
        ++audit.violations;
        if (excess > audit.worst_excess) {
          audit.worst_excess = excess;
          audit.worst_prime = p;
          audit.worst_exponent = k;
        }
      }
    }
  }
  return audit;
}

std::size_t audit_nonneg(const MultiplicativeFn& f, const PrimeTable& primes,
                         std::uint64_t max_prime, int max_exponent) {
  std::size_t violations = 0;
  const std::size_t count = primes.count_upto(static_cast<double>(max_prime));
  for (std::size_t i = 0; i < count; ++i) {
    for (int k = 1; k <= max_exponent; ++k) {
      const Complex v = f(primes[i], k);
      if (v.imag() != 0.0 || v.real() < 0.0) ++violations;
    }
  }
  return violations;
}

}  // namespace mvlab
