#include <cmath>

#include "mvlab/simd/kernels.hpp"

namespace mvlab::simd {

namespace detail {

namespace {
inline void neumaier_add(double& sum, double& comp, double x) noexcept {
  const double t = sum + x;
  if (std::fabs(sum) >= std::fabs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}
}  // namespace

double combine_lanes(const double (&sums)[4], const double (&comps)[4]) noexcept {
  double sum = 0.0;
  double comp = 0.0;
  for (int lane = 0; lane < 4; ++lane) neumaier_add(sum, comp, sums[lane]);
  for (int lane = 0; lane < 4; ++lane) neumaier_add(sum, comp, comps[lane]);
  return sum + comp;
}

}  // namespace detail

namespace scalar {

double compensated_sum(std::span<const double> values) {
  double sums[4] = {0.0, 0.0, 0.0, 0.0};
  double comps[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t lane = i & 3U;
    const double x = values[i];
    const double t = sums[lane] + x;
    if (std::fabs(sums[lane]) >= std::fabs(x)) {
      comps[lane] += (sums[lane] - t) + x;
    } else {
      comps[lane] += (x - t) + sums[lane];
    }
    sums[lane] = t;
  }
  return detail::combine_lanes(sums, comps);
}

TrigSum trig_objective(const TrigTerms& terms, double t) {
  TrigSum out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double angle = terms.phase[i] + t * terms.log_p[i];
    out.value += terms.weight[i] * (1.0 - std::cos(angle));
    out.slope += terms.weight[i] * terms.log_p[i] * std::sin(angle);
  }
  return out;
}

}  // namespace scalar

}  // namespace mvlab::simd
