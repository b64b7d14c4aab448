#pragma once

#include <cstdint>

#include "mvlab/sieve.hpp"

// Tables shared by the test cases of one binary, built on first use.
inline const mvlab::Tables& tables_upto(std::uint64_t limit) {
  if (limit <= 1'000'000) {
    static const mvlab::Tables small = mvlab::Tables::build(1'000'000);
    return small;
  }
  static const mvlab::Tables large = mvlab::Tables::build(10'000'000);
  return large;
}
