#include "mvlab/summatory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "detail/blocked_sum.hpp"

namespace mvlab {

namespace detail {

unsigned worker_count(std::size_t tasks) {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MVLAB_THREADS")) {
    const long requested = std::strtol(env, nullptr, 10);
    if (requested >= 1) hw = static_cast<unsigned>(requested);
  }
  return static_cast<unsigned>(std::min<std::size_t>(hw, tasks));
}

}  // namespace detail

namespace {

std::vector<std::uint64_t> checkpoint_ends(std::span<const double> xs, std::uint64_t limit,
                                           const char* who) {
  std::vector<std::uint64_t> ends;
  ends.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0 && xs[i] < xs[i - 1]) {
      throw DomainError(std::string(who) + ": checkpoints must be ascending");
    }
    if (!(xs[i] <= static_cast<double>(limit))) {
      throw DomainError(std::string(who) + ": checkpoint " + format_number(xs[i]) +
                        " beyond table limit " + std::to_string(limit));
    }
    ends.push_back(xs[i] < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(xs[i])));
  }
  return ends;
}

}  // namespace

std::vector<SummatoryPoint> summatory_table(const MultiplicativeFn& f, std::span<const double> xs,
                                            const FactorTable& table) {
  const auto ends = checkpoint_ends(xs, table.limit(), "summatory_table");
  const auto sums = detail::ordered_prefix_sums(ends, [&](std::uint64_t n) {
    Complex v{1.0, 0.0};
    table.visit_factors(n, [&](std::uint64_t p, int k) { v *= f(p, k); });
    return std::pair<Complex, Complex>{v, v / static_cast<double>(n)};
  });
  std::vector<SummatoryPoint> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = {xs[i], sums[i].first, sums[i].second};
  return out;
}

SummatoryPoint summatory_at(const MultiplicativeFn& f, double x, const FactorTable& table) {
  const double xs[1] = {x};
  return summatory_table(f, xs, table).front();
}

PrimeSumPoint prime_sum_table(const MultiplicativeFn& f, double a, double b,
                              const PrimeTable& primes) {
  if (!(a >= 0.0 && a <= b && b <= static_cast<double>(primes.limit()))) {
    throw DomainError("prime_sum_table: need 0 <= a <= b <= table limit");
  }
  CompensatedComplexSum recip;
  CompensatedComplexSum log_weighted;
  const std::size_t end = primes.count_upto(b);
  for (std::size_t i = primes.count_upto(a); i < end; ++i) {
    const std::uint64_t p = primes[i];
    const auto pd = static_cast<double>(p);
    const Complex v = f(p, 1) / pd;
    recip.add(v);
    log_weighted.add(v * std::log(pd));
  }
  return {a, b, recip.value(), log_weighted.value()};
}

std::vector<Lemma1Result> lemma1_bounds(const MultiplicativeFn& g, std::span<const double> xs,
                                        const Tables& tables) {
  if (!g.nonneg()) {
    throw ValidationError("lemma1_bound requires a non-negative function, got " + g.name());
  }
  for (double x : xs) {
    if (x < 2.0) throw DomainError("lemma1_bound: x must be >= 2");
  }
  const auto sums = summatory_table(g, xs, tables.factors);
  if (xs.empty()) return {};

  // prime powers q <= max x with their weights g(q) log q, ascending in q
  const auto top = static_cast<std::uint64_t>(std::floor(xs.back()));
  std::vector<std::pair<std::uint64_t, double>> jumps;
  const std::size_t count = tables.primes.count_upto(xs.back());
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = tables.primes[i];
    const double log_p = std::log(static_cast<double>(p));
    std::uint64_t q = p;
    for (int k = 1;; ++k) {
      jumps.emplace_back(q, g(p, k).real() * k * log_p);
      if (q > top / p) break;
      q *= p;
    }
  }
  std::sort(jumps.begin(), jumps.end());

  std::vector<Lemma1Result> out(xs.size());
  CompensatedSum chebyshev;
  double sup = 0.0;  // y = 1 contributes 0
  std::size_t j = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    // y^{-1} sum_{q<=y} decreases between jumps, so the sup sits at a jump
    for (; j < jumps.size() && static_cast<double>(jumps[j].first) <= x; ++j) {
      chebyshev.add(jumps[j].second);
      sup = std::max(sup, chebyshev.value() / static_cast<double>(jumps[j].first));
    }
    const double log_x = std::log(x);
    Lemma1Result& r = out[i];
    r.x = x;
    r.lhs = sums[i].value.real() - 1.0;
    r.harmonic = sums[i].harmonic.real();
    r.delta_tilde = sup;
    r.rhs = (x / log_x + 10.0 * x / (log_x * log_x)) * sup * r.harmonic;
  }
  return out;
}

Lemma1Result lemma1_bound(const MultiplicativeFn& g, double x, const Tables& tables) {
  const double xs[1] = {x};
  return lemma1_bounds(g, xs, tables).front();
}

double lemma3_ratio(const MultiplicativeFn& g, double u, double v, double x,
                    const Tables& tables) {
  constexpr double kSlack = 1e-12;
  if (!(x >= 2.0 && u <= v && u >= std::sqrt(x) * (1 - kSlack) &&
        v <= std::pow(x, 1.5) * (1 + kSlack))) {
    throw DomainError("lemma3_ratio: need x^{1/2} <= u <= v <= x^{3/2}, x >= 2");
  }
  std::vector<double> xs = {u, v, x};
  std::sort(xs.begin(), xs.end());
  const auto points = summatory_table(g, xs, tables.factors);
  auto harmonic_at = [&](double y) {
    for (const auto& pt : points) {
      if (pt.x == y) return pt.harmonic.real();
    }
    return 0.0;
  };
  const double numerator = harmonic_at(v) - harmonic_at(u);
  if (u == v) return 0.0;
  const double scale = std::log(std::log(v) / std::log(u)) + 1.0 / std::log(x);
  return numerator / (scale * harmonic_at(x));
}

double lemma2_ratio(const MultiplicativeFn& g, double x, const Tables& tables) {
  const SummatoryPoint point = summatory_at(g, x, tables.factors);
  CompensatedSum log_product;
  const std::size_t count = tables.primes.count_upto(x);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t p = tables.primes[i];
    log_product.add(std::log1p(g(p, 1).real() / static_cast<double>(p)));
  }
  return point.harmonic.real() / std::exp(log_product.value());
}

Complex dirichlet_series_partial(const MultiplicativeFn& f, double s, std::uint64_t n_max,
                                 const FactorTable& table) {
  if (!(s > 0.0)) throw DomainError("dirichlet_series_partial: s must be positive");
  if (n_max > table.limit()) throw DomainError("dirichlet_series_partial: N beyond table limit");
  const std::vector<std::uint64_t> ends = {n_max};
  const double exponent = -1.0 - s;
  const auto sums = detail::ordered_prefix_sums(ends, [&](std::uint64_t n) {
    Complex v{1.0, 0.0};
    table.visit_factors(n, [&](std::uint64_t p, int k) { v *= f(p, k); });
    return std::pair<Complex, Complex>{v * std::pow(static_cast<double>(n), exponent),
                                       Complex{}};
  });
  return sums.front().first;
}

void write_summatory_csv(std::ostream& out, std::span<const SummatoryPoint> points) {
  out << "x,re_value,im_value,re_harmonic,im_harmonic\n";
  for (const SummatoryPoint& p : points) {
    out << format_number(p.x) << ',' << format_number(p.value.real()) << ','
        << format_number(p.value.imag()) << ',' << format_number(p.harmonic.real()) << ','
        << format_number(p.harmonic.imag()) << '\n';
  }
}

}  // namespace mvlab
