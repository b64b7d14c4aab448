#include "mvlab/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "mvlab/compensated.hpp"

namespace mvlab {

namespace {

constexpr std::uint64_t kSegmentSpan = std::uint64_t{1} << 20;
constexpr std::array<char, 8> kCacheMagic = {'M', 'V', 'L', 'B', 'S', 'P', 'F', '\0'};

void check_budget(std::uint64_t limit, std::uint64_t budget) {
  if (limit > budget) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds budget " +
                        std::to_string(budget));
  }
  if (limit >= (std::uint64_t{1} << 32)) {
    throw ResourceError("sieve limit must be below 2^32");
  }
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Plain odd-only sieve, used for the base primes of the segmented pass.
std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  std::vector<bool> composite(limit / 2 + 1, false);  // index i <-> 2i+1
  for (std::uint64_t i = 1; 2 * i + 1 <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    out.push_back(p);
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) composite[m / 2] = true;
  }
  return out;
}

void put_le(std::ostream& out, std::uint64_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((value >> (8 * i)) & 0xFF));
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::uint64_t value = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == EOF) throw DomainError("factor cache truncated");
    value |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return value;
}

}  // namespace

std::uint64_t limit_budget() {
  if (const char* env = std::getenv("MVLAB_LIMIT")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v >= 2) return static_cast<std::uint64_t>(v);
  }
  return kDefaultLimitBudget;
}

std::size_t PrimeTable::count_upto(double x) const noexcept {
  if (x < 2) return 0;
  const auto n = static_cast<std::uint64_t>(std::floor(x));
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), n) -
                                  primes_.begin());
}

PrimeTable sieve_primes(std::uint64_t limit, std::uint64_t budget) {
  check_budget(limit, budget);
  if (limit < 2) return PrimeTable(limit, {});

  const std::uint64_t root = isqrt(limit);
  const std::vector<std::uint64_t> base = small_primes(root);

  std::vector<std::uint64_t> primes;
  primes.reserve(static_cast<std::size_t>(1.1 * limit / std::max(1.0, std::log(limit)) + 16));
  primes.push_back(2);

  // Segment [lo, lo + kSegmentSpan); slot i stands for the odd number lo + 2i + 1.
  std::vector<std::uint8_t> composite(kSegmentSpan / 2);
  for (std::uint64_t lo = 0; lo <= limit; lo += kSegmentSpan) {
    const std::uint64_t hi = std::min(limit, lo + kSegmentSpan - 1);
    std::fill(composite.begin(), composite.end(), std::uint8_t{0});
    for (std::size_t b = 1; b < base.size(); ++b) {
      const std::uint64_t p = base[b];
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (std::uint64_t m = start; m <= hi; m += 2 * p) composite[(m - lo) / 2] = 1;
    }
    for (std::uint64_t n = lo + 1; n <= hi; n += 2) {
      if (n >= 3 && composite[(n - lo) / 2] == 0) primes.push_back(n);
    }
  }
  return PrimeTable(limit, std::move(primes));
}

FactorTable build_factor_table(std::uint64_t limit, std::uint64_t budget) {
  if (limit < 2) throw DomainError("factor table limit must be >= 2");
  check_budget(limit, budget);

  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (std::uint64_t n = 2; n <= limit; n += 2) spf[n] = 2;
  const std::uint64_t root = isqrt(limit);
  for (std::uint64_t p = 3; p <= limit; p += 2) {
    if (spf[p] != 0) continue;
    spf[p] = static_cast<std::uint32_t>(p);
    if (p > root) continue;
    for (std::uint64_t m = p * p; m <= limit; m += 2 * p) {
      if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(p);
    }
  }
  return FactorTable(limit, std::move(spf));
}

std::vector<PrimePower> factorize(std::uint64_t n, const FactorTable& table) {
  if (n < 2 || n > table.limit()) {
    throw DomainError("factorize: n=" + std::to_string(n) + " outside [2, " +
                      std::to_string(table.limit()) + "]");
  }
  std::vector<PrimePower> out;
  table.visit_factors(n, [&](std::uint64_t p, int k) { out.push_back({p, k}); });
  return out;
}

double mertens_log_sum(double x, const PrimeTable& primes) {
  if (x < 2) throw DomainError("mertens_log_sum: x must be >= 2");
  if (x > static_cast<double>(primes.limit())) {
    throw DomainError("mertens_log_sum: x beyond prime table limit");
  }
  CompensatedSum sum;
  const std::size_t count = primes.count_upto(x);
  for (std::size_t i = 0; i < count; ++i) {
    const auto p = static_cast<double>(primes[i]);
    sum.add(std::log(p) / p);
  }
  return sum.value();
}

Tables Tables::build(std::uint64_t limit, std::uint64_t budget) {
  return Tables{sieve_primes(limit, budget), build_factor_table(limit, budget)};
}

void save_factor_table(const std::filesystem::path& path, const FactorTable& table) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("cannot open factor cache for writing: " + path.string());
  out.write(kCacheMagic.data(), kCacheMagic.size());
  put_le(out, kFactorCacheVersion, 4);
  put_le(out, table.limit(), 8);
  for (std::uint32_t v : table.raw()) put_le(out, v, 4);
  if (!out) throw DomainError("failed writing factor cache: " + path.string());
}

FactorTable load_factor_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open factor cache: " + path.string());
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kCacheMagic) throw DomainError("factor cache: bad magic");
  if (get_le(in, 4) != kFactorCacheVersion) throw DomainError("factor cache: version mismatch");
  const std::uint64_t limit = get_le(in, 8);
  if (limit < 2 || limit >= (std::uint64_t{1} << 32)) {
    throw DomainError("factor cache: implausible limit");
  }
  std::vector<std::uint32_t> spf(limit + 1);
  std::vector<unsigned char> bytes(4 * (limit + 1));
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw DomainError("factor cache truncated");
  }
  for (std::size_t i = 0; i < spf.size(); ++i) {
    spf[i] = static_cast<std::uint32_t>(bytes[4 * i]) |
             (static_cast<std::uint32_t>(bytes[4 * i + 1]) << 8) |
             (static_cast<std::uint32_t>(bytes[4 * i + 2]) << 16) |
             (static_cast<std::uint32_t>(bytes[4 * i + 3]) << 24);
  }
  return FactorTable(limit, std::move(spf));
}

FactorTable cached_factor_table(const std::filesystem::path& dir, std::uint64_t limit,
                                std::uint64_t budget) {
  const auto path = dir / ("spf_" + std::to_string(limit) + ".bin");
  if (std::filesystem::exists(path)) {
    try {
      FactorTable table = load_factor_table(path);
      if (table.limit() == limit) return table;
    } catch (const DomainError&) {
      // stale or corrupt cache, rebuild below
    }
  }
  FactorTable table = build_factor_table(limit, budget);
  std::filesystem::create_directories(dir);
  save_factor_table(path, table);
  return table;
}

}  // namespace mvlab
