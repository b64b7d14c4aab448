#pragma once

#include <string>
#include <vector>

namespace mvlab {

/// Outcome of checking one hypothesis. `hypothesis` states the condition in
/// mathematical terms; `detail` carries the measured numbers.
struct Audit {
  std::string hypothesis;
  bool passed = true;
  std::string detail;
};

inline bool all_passed(const std::vector<Audit>& audits) {
  for (const Audit& a : audits) {
    if (!a.passed) return false;
  }
  return true;
}

}  // namespace mvlab
