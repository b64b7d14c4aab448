#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mvlab/audit.hpp"

namespace mvlab {

using Json = nlohmann::ordered_json;

enum class Command {
  kPrimes,
  kSum,
  kEuler,
  kWirsing,
  kThm1,
  kThm3,
  kThm4,
  kHalasz,
  kSubseq,
  kLemma1,
  kLemma4Check,
};

enum class Format { kCsv, kJson };

std::string command_name(Command c);
std::optional<Command> parse_command(const std::string& name);

struct RunConfig {
  Command command = Command::kSum;
  std::string fn;  // single-function commands
  std::string g;
  std::string h;
  std::vector<double> xs;
  std::map<std::string, double> params;  // alpha, tau, t, T, Y, c, beta, c1, tol, radius, N
  std::uint64_t budget = 0;              // 0: limit_budget()
  std::uint64_t seed = 1;
  Format format = Format::kJson;

  /// Throws ValidationError with a message naming the offending field.
  void validate() const;
  double param(const std::string& key, double fallback) const;
};

struct RunReport {
  Json config;
  std::vector<Json> records;  // one object per row, keys in column order
  Json summary = Json::object();
  std::vector<Audit> audits;

  /// 0 when every audit passed, 2 otherwise.
  int exit_code() const { return all_passed(audits) ? 0 : 2; }
};

/// "10,100,1e3" or "a:b:n" (n points, geometric from a to b).
std::vector<double> parse_x_grid(const std::string& text);

/// Executes one configuration. Output depends only on the configuration.
RunReport run(const RunConfig& config);

/// Verification suites: thm1, thm2, thm3, thm4, wirsing, halasz, lemma1.
/// Checkpoints above `budget` are skipped. Each criterion becomes an audit.
RunReport verify_suite(const std::string& name, std::uint64_t budget, std::uint64_t seed = 1);

void write_json(std::ostream& out, const RunReport& report);

/// Header from the keys of the first record; one row per record.
void write_csv(std::ostream& out, const RunReport& report);

void write_report(std::ostream& out, const RunReport& report, Format format);

}  // namespace mvlab
