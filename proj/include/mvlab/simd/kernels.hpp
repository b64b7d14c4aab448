#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference in
// mvlab::simd::scalar and, on x86-64, an AVX2+FMA variant in mvlab::simd::avx2.
// The unqualified entry points dispatch on the ISA selected at startup
// (overridable with MVLAB_ISA=scalar|avx2 or set_active_isa).

#include <cstddef>
#include <span>
#include <string_view>

namespace mvlab::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best ISA this CPU supports.
Isa detected_isa() noexcept;

Isa active_isa() noexcept;

/// Throws DomainError when the CPU does not support `isa`.
void set_active_isa(Isa isa);

/// Terms of the Halász objective over a run of primes, structure-of-arrays:
/// weight = |g(p)|/p, phase = arg g(p), log_p = log p.
struct TrigTerms {
  std::span<const double> weight;
  std::span<const double> phase;
  std::span<const double> log_p;

  std::size_t size() const noexcept { return weight.size(); }
  TrigTerms slice(std::size_t begin, std::size_t end) const noexcept {
    return {weight.subspan(begin, end - begin), phase.subspan(begin, end - begin),
            log_p.subspan(begin, end - begin)};
  }
};

struct TrigSum {
  double value = 0.0;  // sum w (1 - cos(phase + t log p))
  double slope = 0.0;  // d value / dt = sum w log p sin(phase + t log p)
};

/// Four-lane Neumaier summation with a fixed lane assignment (element i goes
/// to lane i mod 4) and a fixed lane-combine order. All ISA variants return
/// bit-identical results.
double compensated_sum(std::span<const double> values);

TrigSum trig_objective(const TrigTerms& terms, double t);

namespace scalar {
double compensated_sum(std::span<const double> values);
TrigSum trig_objective(const TrigTerms& terms, double t);
}  // namespace scalar

namespace avx2 {
bool available() noexcept;
double compensated_sum(std::span<const double> values);
TrigSum trig_objective(const TrigTerms& terms, double t);
}  // namespace avx2

namespace detail {
/// Shared by every variant so the final reduction is identical.
double combine_lanes(const double (&sums)[4], const double (&comps)[4]) noexcept;
}  // namespace detail

}  // namespace mvlab::simd
