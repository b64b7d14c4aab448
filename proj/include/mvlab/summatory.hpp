#pragma once

#include <ostream>
#include <span>
#include <vector>

#include "mvlab/mfunc.hpp"

namespace mvlab {

/// A(x) = sum_{n<=x} f(n) and G(x) = sum_{n<=x} f(n)/n.
struct SummatoryPoint {
  double x = 0.0;
  Complex value;
  Complex harmonic;
};

/// Sums over primes a < p <= b.
struct PrimeSumPoint {
  double a = 0.0;
  double x = 0.0;  // upper end b
  Complex recip;         // sum f(p)/p
  Complex log_weighted;  // sum f(p) log p / p
};

/// One pass over n <= max(xs) with compensated, deterministically ordered
/// accumulation. xs must be ascending and within the table.
std::vector<SummatoryPoint> summatory_table(const MultiplicativeFn& f, std::span<const double> xs,
                                            const FactorTable& table);

SummatoryPoint summatory_at(const MultiplicativeFn& f, double x, const FactorTable& table);

PrimeSumPoint prime_sum_table(const MultiplicativeFn& f, double a, double b,
                              const PrimeTable& primes);

struct Lemma1Result {
  double x = 0.0;
  double lhs = 0.0;          // sum_{2<=n<=x} g(n)
  double rhs = 0.0;          // (x/log x + 10x/log^2 x) * delta_tilde * harmonic
  double delta_tilde = 0.0;  // sup_{1<=y<=x} y^{-1} sum_{q<=y} g(q) log q, q prime powers
  double harmonic = 0.0;     // sum_{n<=x} g(n)/n

  bool holds() const noexcept { return lhs <= rhs; }
};

/// Both sides of the explicit upper bound for sum g(n). g must be flagged
/// non-negative (ValidationError otherwise); x >= 2.
Lemma1Result lemma1_bound(const MultiplicativeFn& g, double x, const Tables& tables);

/// lemma1_bound at several x with a single summation pass; xs ascending.
std::vector<Lemma1Result> lemma1_bounds(const MultiplicativeFn& g, std::span<const double> xs,
                                        const Tables& tables);

/// (sum_{u<n<=v} g(n)/n) / ((log(log v / log u) + 1/log x) sum_{n<=x} g(n)/n),
/// for x^{1/2} <= u <= v <= x^{3/2}.
double lemma3_ratio(const MultiplicativeFn& g, double u, double v, double x,
                    const Tables& tables);

/// (sum_{n<=x} g(n)/n) / prod_{p<=x} (1 + g(p)/p).
double lemma2_ratio(const MultiplicativeFn& g, double x, const Tables& tables);

/// sum_{n<=N} f(n) n^{-1-s}.
Complex dirichlet_series_partial(const MultiplicativeFn& f, double s, std::uint64_t n_max,
                                 const FactorTable& table);

/// Columns x, re_value, im_value, re_harmonic, im_harmonic.
void write_summatory_csv(std::ostream& out, std::span<const SummatoryPoint> points);

}  // namespace mvlab
