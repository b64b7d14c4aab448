#pragma once

// Reference computations for the tests. Everything here is deliberately
// naive (trial division, direct loops, closed forms) and shares no code with
// the library beyond the MultiplicativeFn value type.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "mvlab/mfunc.hpp"

namespace oracle {

using Complex = std::complex<double>;

inline std::vector<std::pair<std::uint64_t, int>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k > 0) out.emplace_back(p, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool trial_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> trial_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (trial_is_prime(n)) out.push_back(n);
  }
  return out;
}

inline Complex eval(const mvlab::MultiplicativeFn& f, std::uint64_t n) {
  Complex v{1.0, 0.0};
  for (const auto& [p, k] : trial_factor(n)) v *= f(p, k);
  return v;
}

/// (f * g)(n) by enumerating divisor pairs.
inline Complex convolve(const mvlab::MultiplicativeFn& f, const mvlab::MultiplicativeFn& g,
                        std::uint64_t n) {
  Complex s{0.0, 0.0};
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) s += eval(f, d) * eval(g, n / d);
  }
  return s;
}

inline bool squarefree(std::uint64_t n) {
  for (const auto& pk : trial_factor(n)) {
    if (pk.second > 1) return false;
  }
  return true;
}

/// sum_{n<=x} d(n) = 2 sum_{k<=sqrt x} floor(x/k) - floor(sqrt x)^2.
inline std::uint64_t divisor_summatory(std::uint64_t x) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  std::uint64_t s = 0;
  for (std::uint64_t k = 1; k <= r; ++k) s += x / k;
  return 2 * s - r * r;
}

/// Moebius values 0..n by the classic sieve.
inline std::vector<int> moebius_table(std::uint64_t n) {
  std::vector<int> mu(n + 1, 1);
  std::vector<bool> composite(n + 1, false);
  mu[0] = 0;
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    for (std::uint64_t m = p; m <= n; m += p) {
      if (m > p) composite[m] = true;
      mu[m] = -mu[m];
    }
    for (std::uint64_t m = p * p; m <= n; m += p * p) mu[m] = 0;
  }
  return mu;
}

/// sum_{n<=N} n^{it} by Euler-Maclaurin: direct up to M, then the integral
/// plus endpoint and Bernoulli corrections on (M, N].
inline Complex power_sum(std::uint64_t n_max, double t, std::uint64_t m = 2000) {
  const Complex s{0.0, t};
  Complex direct{0.0, 0.0};
  for (std::uint64_t n = 1; n <= std::min(m, n_max); ++n) {
    direct += std::exp(s * std::log(static_cast<double>(n)));
  }
  if (n_max <= m) return direct;
  const auto f = [&](double u) { return std::exp(s * std::log(u)); };
  const auto d1 = [&](double u) { return s * std::exp((s - 1.0) * std::log(u)); };
  const auto d3 = [&](double u) {
    return s * (s - 1.0) * (s - 2.0) * std::exp((s - 3.0) * std::log(u));
  };
  const double M = static_cast<double>(m);
  const double N = static_cast<double>(n_max);
  const Complex integral = (std::exp((s + 1.0) * std::log(N)) - std::exp((s + 1.0) * std::log(M))) /
                           (s + 1.0);
  return direct + integral + (f(N) - f(M)) / 2.0 + (d1(N) - d1(M)) / 12.0 -
         (d3(N) - d3(M)) / 720.0;
}

/// Minimum over a uniform grid of step `step` on [-T, T] of
/// sum_{Y<p<=x} p^{-1}(|g(p)| - Re g(p) p^{it}). Rotation recurrence per
/// tile, each tile re-seeded with exact sin/cos.
inline std::pair<double, double> brute_lambda(const mvlab::MultiplicativeFn& g, double Y, double x,
                                              double T, double step) {
  std::vector<double> w;
  std::vector<double> phase;
  std::vector<double> logp;
  double total = 0.0;
  for (std::uint64_t p : trial_primes(static_cast<std::uint64_t>(x))) {
    if (static_cast<double>(p) <= Y) continue;
    const Complex v = g(p, 1);
    if (std::abs(v) == 0.0) continue;
    w.push_back(std::abs(v) / static_cast<double>(p));
    phase.push_back(std::arg(v));
    logp.push_back(std::log(static_cast<double>(p)));
    total += w.back();
  }
  const auto points = static_cast<std::int64_t>(std::floor(2.0 * T / step));
  constexpr std::int64_t kTile = 4096;
  const std::size_t n = w.size();
  std::vector<double> re(n), im(n), rot_re(n), rot_im(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot_re[i] = std::cos(step * logp[i]);
    rot_im[i] = std::sin(step * logp[i]);
  }
  double best = 1e300;
  double t_best = 0.0;
  for (std::int64_t start = 0; start <= points; start += kTile) {
    const double t0 = -T + static_cast<double>(start) * step;
    for (std::size_t i = 0; i < n; ++i) {
      re[i] = w[i] * std::cos(phase[i] + t0 * logp[i]);
      im[i] = w[i] * std::sin(phase[i] + t0 * logp[i]);
    }
    const std::int64_t stop = std::min(points, start + kTile - 1);
    for (std::int64_t j = start; j <= stop; ++j) {
      double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
      std::size_t i = 0;
      for (; i + 8 <= n; i += 8) {
        for (std::size_t k = 0; k < 8; ++k) acc[k] += re[i + k];
      }
      for (; i < n; ++i) acc[0] += re[i];
      double s = 0.0;
      for (double a : acc) s += a;
      const double value = total - s;
      if (value < best) {
        best = value;
        t_best = -T + static_cast<double>(j) * step;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double r = re[i] * rot_re[i] - im[i] * rot_im[i];
        im[i] = re[i] * rot_im[i] + im[i] * rot_re[i];
        re[i] = r;
      }
    }
  }
  return {best, t_best};
}

/// Grid minimum at step tol / (10 L), L = sum_{Y<p<=x} |g(p)| log p / p the
/// Lipschitz constant of the objective, so it is within tol/20 of the minimum.
inline std::pair<double, double> brute_lambda_tol(const mvlab::MultiplicativeFn& g, double Y,
                                                  double x, double T, double tol) {
  double lipschitz = 0.0;
  for (std::uint64_t p : trial_primes(static_cast<std::uint64_t>(x))) {
    if (static_cast<double>(p) <= Y) continue;
    lipschitz += std::abs(g(p, 1)) * std::log(static_cast<double>(p)) / static_cast<double>(p);
  }
  if (lipschitz == 0.0) return {0.0, 0.0};
  return brute_lambda(g, Y, x, T, tol / (10.0 * lipschitz));
}

/// (2 pi)^{-1} int_0^{2 pi} w by the midpoint rule on `points` nodes.
template <typename W>
double mean_radius(const W& w, std::size_t points = 1'000'000) {
  double s = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    s += w(2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(points));
  }
  return s / static_cast<double>(points);
}

}  // namespace oracle
