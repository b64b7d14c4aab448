#pragma once

#include <cstdint>
#include <vector>

#include "mvlab/mfunc.hpp"

namespace mvlab {

/// Index k >= -1 of the interval (exp(2^k), exp(2^{k+1})] containing p.
int lambda0_interval(std::uint64_t p);

/// alpha on primes of the odd-indexed intervals (the first one, k = -1,
/// included), beta on the even-indexed ones, zero on higher prime powers.
/// Requires 0 < alpha < beta.
MultiplicativeFn lambda0(double alpha, double beta);

/// First j for which lambda1 zeroes (y / (log y)^2, y], y = exp(2^j).
inline constexpr int kLambda1FirstInterval = 3;

/// lambda0 with additional zeros on every (y / (log y)^2, y], y = exp(2^j),
/// j >= kLambda1FirstInterval.
MultiplicativeFn lambda1(double alpha, double beta);

/// True when p lies in one of the intervals that lambda1 zeroes.
bool lambda1_zeroed(std::uint64_t p);

struct TracePoint {
  double y = 0.0;
  double s = 0.0;        // running sum over retained primes of g(p) log p / p
  double ratio = 0.0;    // s / log y
  bool keeping = false;  // phase in force at y
};

struct SubsequenceTrace {
  double alpha = 0.0;
  double x_max = 0.0;
  std::uint64_t seed_prime = 0;
  std::vector<bool> retained;  // one flag per prime <= x_max, prime order
  std::vector<std::uint64_t> turning_points;
  std::vector<TracePoint> trajectory;
};

/// Checkpoints per decade of the trajectory.
inline constexpr int kTraceResolution = 20;

/// Greedy choice of a prime subsequence along which the normalised prime sum
/// tends to alpha. Primes up to the seed t are kept; afterwards primes are
/// dropped until s/log y first falls strictly below alpha (a turning point),
/// then kept until it first climbs above alpha (the next turning point), and
/// so on. Throws ConstructionError when no seed prime exists below x_max.
SubsequenceTrace greedy_subsequence(const MultiplicativeFn& g, double alpha, double x_max,
                                    const PrimeTable& primes);

struct DensityCheck {
  double sup_dev = 0.0;
  double final_dev = 0.0;
};

/// sup and final |s/log y - alpha| over trajectory checkpoints in [lo, hi].
DensityCheck check_density(const SubsequenceTrace& trace, double lo, double hi);

struct UniformDensityAudit {
  std::size_t pairs_checked = 0;
  std::size_t violations = 0;
  double worst_shortfall = 0.0;  // max of c log(x/y) - sum_{y<p<=x} g(p) log p / p
};

/// Checks sum_{y<p<=x} g(p) log p / p >= c log(x/y) over grid pairs with
/// y <= x^{1 - eps}.
UniformDensityAudit audit_uniform_density(const MultiplicativeFn& g, double c, double eps,
                                          const std::vector<double>& grid,
                                          const PrimeTable& primes);

}  // namespace mvlab
