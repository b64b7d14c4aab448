// Compiled with -mavx2 -mfma on x86-64; everything else in the library is
// built for the baseline ISA and only reaches this file through dispatch.

#include <cmath>

#include "mvlab/simd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#define MVLAB_AVX2_BODY 1
#else
#define MVLAB_AVX2_BODY 0
#endif

namespace mvlab::simd::avx2 {

#if MVLAB_AVX2_BODY

namespace {

// Cody-Waite split of pi/2 into 33-bit pieces; j * piece is exact for |j| < 2^20.
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Mid = 6.07710050630396597660e-11;
constexpr double kPio2Lo = 2.02226624879595063154e-21;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;

// Minimax coefficients on [-pi/4, pi/4].
constexpr double kS1 = -1.66666666666666324348e-01;
constexpr double kS2 = 8.33333333332248946124e-03;
constexpr double kS3 = -1.98412698298579493134e-04;
constexpr double kS4 = 2.75573137070700676789e-06;
constexpr double kS5 = -2.50507602534068634195e-08;
constexpr double kS6 = 1.58969099521155010221e-10;
constexpr double kC1 = 4.16666666666666019037e-02;
constexpr double kC2 = -1.38888888888741095749e-03;
constexpr double kC3 = 2.48015872894767294178e-05;
constexpr double kC4 = -2.75573143513906633035e-07;
constexpr double kC5 = 2.08757232129817482790e-09;
constexpr double kC6 = -1.13596475577881948265e-11;

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline void sincos_pd(__m256d x, __m256d& sin_out, __m256d& cos_out) {
  const __m256d j = _mm256_round_pd(_mm256_mul_pd(x, splat(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(j, splat(kPio2Hi), x);
  r = _mm256_fnmadd_pd(j, splat(kPio2Mid), r);
  r = _mm256_fnmadd_pd(j, splat(kPio2Lo), r);
  const __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_fmadd_pd(z, splat(kS6), splat(kS5));
  ps = _mm256_fmadd_pd(z, ps, splat(kS4));
  ps = _mm256_fmadd_pd(z, ps, splat(kS3));
  ps = _mm256_fmadd_pd(z, ps, splat(kS2));
  ps = _mm256_fmadd_pd(z, ps, splat(kS1));
  const __m256d s = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);

  __m256d pc = _mm256_fmadd_pd(z, splat(kC6), splat(kC5));
  pc = _mm256_fmadd_pd(z, pc, splat(kC4));
  pc = _mm256_fmadd_pd(z, pc, splat(kC3));
  pc = _mm256_fmadd_pd(z, pc, splat(kC2));
  pc = _mm256_fmadd_pd(z, pc, splat(kC1));
  const __m256d c = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc,
                                    _mm256_fnmadd_pd(splat(0.5), z, splat(1.0)));

  // quadrant q = j mod 4, computed exactly in double arithmetic
  const __m256d q = _mm256_sub_pd(
      j, _mm256_mul_pd(splat(4.0), _mm256_floor_pd(_mm256_mul_pd(j, splat(0.25)))));
  const __m256d is1 = _mm256_cmp_pd(q, splat(1.0), _CMP_EQ_OQ);
  const __m256d is2 = _mm256_cmp_pd(q, splat(2.0), _CMP_EQ_OQ);
  const __m256d is3 = _mm256_cmp_pd(q, splat(3.0), _CMP_EQ_OQ);
  const __m256d swap = _mm256_or_pd(is1, is3);
  const __m256d sign = splat(-0.0);
  const __m256d neg_sin = _mm256_and_pd(_mm256_or_pd(is2, is3), sign);
  const __m256d neg_cos = _mm256_and_pd(_mm256_or_pd(is1, is2), sign);

  sin_out = _mm256_xor_pd(_mm256_blendv_pd(s, c, swap), neg_sin);
  cos_out = _mm256_xor_pd(_mm256_blendv_pd(c, s, swap), neg_cos);
}

inline double horizontal_sum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

bool available() noexcept {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

double compensated_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  const std::size_t body = n & ~std::size_t{3};
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d x = _mm256_loadu_pd(values.data() + i);
    const __m256d t = _mm256_add_pd(sum, x);
    const __m256d sum_dominates = _mm256_cmp_pd(_mm256_and_pd(sum, abs_mask),
                                                _mm256_and_pd(x, abs_mask), _CMP_GE_OQ);
    const __m256d when_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), x);
    const __m256d when_x = _mm256_add_pd(_mm256_sub_pd(x, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(when_x, when_sum, sum_dominates));
    sum = t;
  }
  alignas(32) double sums[4];
  alignas(32) double comps[4];
  _mm256_store_pd(sums, sum);
  _mm256_store_pd(comps, comp);
  for (std::size_t i = body; i < n; ++i) {
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
  const std::size_t n = terms.size();
  const std::size_t body = n & ~std::size_t{3};
  const __m256d tv = splat(t);
  const __m256d one = splat(1.0);
  __m256d value = _mm256_setzero_pd();
  __m256d slope = _mm256_setzero_pd();
  for (std::size_t i = 0; i < body; i += 4) {
    const __m256d w = _mm256_loadu_pd(terms.weight.data() + i);
    const __m256d phase = _mm256_loadu_pd(terms.phase.data() + i);
    const __m256d log_p = _mm256_loadu_pd(terms.log_p.data() + i);
    __m256d s;
    __m256d c;
    sincos_pd(_mm256_fmadd_pd(tv, log_p, phase), s, c);
    value = _mm256_fmadd_pd(w, _mm256_sub_pd(one, c), value);
    slope = _mm256_fmadd_pd(_mm256_mul_pd(w, log_p), s, slope);
  }
  TrigSum out{horizontal_sum(value), horizontal_sum(slope)};
  for (std::size_t i = body; i < n; ++i) {
    const double angle = terms.phase[i] + t * terms.log_p[i];
    out.value += terms.weight[i] * (1.0 - std::cos(angle));
    out.slope += terms.weight[i] * terms.log_p[i] * std::sin(angle);
  }
  return out;
}

#else

bool available() noexcept { return false; }

double compensated_sum(std::span<const double> values) {
  return scalar::compensated_sum(values);
}

TrigSum trig_objective(const TrigTerms& terms, double t) {
  return scalar::trig_objective(terms, t);
}

#endif

}  // namespace mvlab::simd::avx2
