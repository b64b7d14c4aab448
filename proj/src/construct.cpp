#include "mvlab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mvlab/compensated.hpp"

namespace mvlab {

namespace {

void check_order(double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < beta)) {
    throw DomainError("lambda0/lambda1 need 0 < alpha < beta");
  }
}

std::vector<double> checkpoints(double x_max) {
  std::vector<double> out;
  for (int j = 0;; ++j) {
    const double y = std::pow(10.0, static_cast<double>(j) / kTraceResolution);
    if (y > x_max) break;
    if (y >= 2.0) out.push_back(y);
  }
  if (out.empty() || out.back() < x_max) out.push_back(x_max);
  return out;
}

}  // namespace

int lambda0_interval(std::uint64_t p) {
  const double log_p = std::log(static_cast<double>(p));
  int k = -1;
  double upper = 1.0;  // 2^{k+1}
  while (log_p > upper) {
    upper *= 2.0;
    ++k;
  }
  return k;
}

bool lambda1_zeroed(std::uint64_t p) {
  const double log_p = std::log(static_cast<double>(p));
  // intervals start at y = e^8; lower ends increase with j
  for (int j = kLambda1FirstInterval;; ++j) {
    const double log_y = std::ldexp(1.0, j);
    const double lower = log_y - 2.0 * std::log(log_y);
    if (log_p > lower && log_p <= log_y) return true;
    if (lower >= log_p) return false;
  }
}

MultiplicativeFn lambda0(double alpha, double beta) {
  check_order(alpha, beta);
  return MultiplicativeFn(
      "lambda0(" + format_number(alpha) + "," + format_number(beta) + ")",
      [alpha, beta](std::uint64_t p, int k) {
        if (k != 1) return Complex{0.0, 0.0};
        return Complex{(lambda0_interval(p) & 1) != 0 ? alpha : beta, 0.0};
      },
      beta, true);
}

MultiplicativeFn lambda1(double alpha, double beta) {
  check_order(alpha, beta);
  return MultiplicativeFn(
      "lambda1(" + format_number(alpha) + "," + format_number(beta) + ")",
      [alpha, beta](std::uint64_t p, int k) {
        if (k != 1 || lambda1_zeroed(p)) return Complex{0.0, 0.0};
        return Complex{(lambda0_interval(p) & 1) != 0 ? alpha : beta, 0.0};
      },
      beta, true);
}

SubsequenceTrace greedy_subsequence(const MultiplicativeFn& g, double alpha, double x_max,
                                    const PrimeTable& primes) {
  if (!(alpha > 0.0)) throw DomainError("greedy_subsequence: alpha must be positive");
  if (x_max < 2.0 || x_max > static_cast<double>(primes.limit())) {
    throw DomainError("greedy_subsequence: x_max outside [2, table limit]");
  }
  const std::size_t count = primes.count_upto(x_max);

  SubsequenceTrace trace;
  trace.alpha = alpha;
  trace.x_max = x_max;
  trace.retained.assign(count, false);

  std::vector<double> weight(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = static_cast<double>(primes[i]);
    weight[i] = g(primes[i], 1).real() * std::log(p) / p;
  }

  CompensatedSum s;
  const std::vector<double> grid = checkpoints(x_max);
  std::size_t next_checkpoint = 0;
  bool keeping = true;
  auto emit_until = [&](double bound) {
    while (next_checkpoint < grid.size() && grid[next_checkpoint] < bound) {
      const double y = grid[next_checkpoint++];
      trace.trajectory.push_back({y, s.value(), s.value() / std::log(y), keeping});
    }
  };

  // seed: smallest prime t with sum_{p<=t} g(p) log p / p >= alpha log t
  std::size_t seed = count;
  for (std::size_t i = 0; i < count; ++i) {
    emit_until(static_cast<double>(primes[i]));
    s.add(weight[i]);
    trace.retained[i] = true;
    if (s.value() >= alpha * std::log(static_cast<double>(primes[i]))) {
      seed = i;
      break;
    }
  }
  if (seed == count) {
    throw ConstructionError("no seed prime t <= " + format_number(x_max) +
                            " with normalised prime sum >= alpha");
  }
  trace.seed_prime = primes[seed];

  keeping = false;
  for (std::size_t i = seed + 1; i < count; ++i) {
    const std::uint64_t p = primes[i];
    emit_until(static_cast<double>(p));
    const double log_p = std::log(static_cast<double>(p));
    if (keeping) {
      trace.retained[i] = true;
      s.add(weight[i]);
      if (s.value() / log_p > alpha) {
        trace.turning_points.push_back(p);
        keeping = false;
      }
    } else if (s.value() / log_p < alpha) {
      trace.turning_points.push_back(p);
      keeping = true;
    }
  }
  emit_until(std::numeric_limits<double>::infinity());
  return trace;
}

DensityCheck check_density(const SubsequenceTrace& trace, double lo, double hi) {
  DensityCheck out;
  bool any = false;
  for (const TracePoint& point : trace.trajectory) {
    if (point.y < lo || point.y > hi) continue;
    const double dev = std::fabs(point.ratio - trace.alpha);
    out.sup_dev = std::max(out.sup_dev, dev);
    out.final_dev = dev;
    any = true;
  }
  if (!any) throw DomainError("check_density: no trajectory checkpoints in window");
  return out;
}

UniformDensityAudit audit_uniform_density(const MultiplicativeFn& g, double c, double eps,
                                          const std::vector<double>& grid,
                                          const PrimeTable& primes) {
  UniformDensityAudit audit;
  if (grid.empty()) return audit;
  const double top = *std::max_element(grid.begin(), grid.end());
  if (top > static_cast<double>(primes.limit())) {
    throw DomainError("audit_uniform_density: grid beyond table limit");
  }
  // prefix sums at grid points
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> prefix(sorted.size());
  CompensatedSum s;
  std::size_t i = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    const std::size_t upto = primes.count_upto(sorted[j]);
    for (; i < upto; ++i) {
      const auto p = static_cast<double>(primes[i]);
      s.add(g(primes[i], 1).real() * std::log(p) / p);
    }
    prefix[j] = s.value();
  }
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      const double y = sorted[a];
      const double x = sorted[b];
      if (y < 1.0 || std::log(y) > (1.0 - eps) * std::log(x)) continue;
      ++audit.pairs_checked;
      const double shortfall = c * std::log(x / y) - (prefix[b] - prefix[a]);
      if (shortfall > 0.0) {
        ++audit.violations;
        audit.worst_shortfall = std::max(audit.worst_shortfall, shortfall);
      }
    }
  }
  return audit;
}

}  // namespace mvlab
