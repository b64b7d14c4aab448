#include <atomic>
#include <cstdlib>
#include <string>

#include "mvlab/error.hpp"
#include "mvlab/simd/kernels.hpp"

namespace mvlab::simd {

namespace {

Isa initial_isa() noexcept {
  const Isa best = detected_isa();
  if (const char* env = std::getenv("MVLAB_ISA")) {
    const std::string_view requested(env);
    if (requested == "scalar") return Isa::kScalar;
    if (requested == "avx2" && best == Isa::kAvx2) return Isa::kAvx2;
  }
  return best;
}

std::atomic<Isa>& active_slot() noexcept {
  static std::atomic<Isa> slot{initial_isa()};
  return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() noexcept { return avx2::available() ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() noexcept { return active_slot().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && !avx2::available()) {
    throw DomainError("AVX2+FMA not supported on this CPU");
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

double compensated_sum(std::span<const double> values) {
  return active_isa() == Isa::kAvx2 ? avx2::compensated_sum(values)
                                    : scalar::compensated_sum(values);
}

TrigSum trig_objective(const TrigTerms& terms, double t) {
  return active_isa() == Isa::kAvx2 ? avx2::trig_objective(terms, t)
                                    : scalar::trig_objective(terms, t);
}

}  // namespace mvlab::simd
