// mvlab: batch runs over multiplicative functions, CSV/JSON output.
//
//   mvlab sum --fn divisor --x 1e3:1e6:4 --format csv
//   mvlab thm4 --h 'twist(one,1)' --g one --t -1 --x 1e5
//   mvlab verify thm2
//
// Exit status: 0 all audits pass, 2 some audit warned, 1 error.

#include <sys/resource.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mvlab/cli.hpp"
#include "mvlab/error.hpp"
#include "mvlab/sieve.hpp"
#include "mvlab/simd/kernels.hpp"

namespace {

struct Options {
  std::string fn;
  std::string g;
  std::string h;
  std::string x;
  std::uint64_t limit = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string isa;
  std::string suite;
};

constexpr const char* kParamFlags[] = {"alpha", "tau", "t", "T", "Y", "c",
                                       "beta",  "c1",  "tol", "radius", "N"};

void add_common(CLI::App* sub, Options& o, std::map<std::string, std::optional<double>>& raw) {
  sub->set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  sub->add_option("--fn", o.fn, "function spec, e.g. lambda0(0.5,1)");
  sub->add_option("--g", o.g, "dominating function spec");
  sub->add_option("--h", o.h, "dominated function spec");
  sub->add_option("--x", o.x, "checkpoints: comma list or a:b:steps (geometric)");
  for (const char* key : kParamFlags) {
    sub->add_option(std::string("--") + key, raw[key]);
  }
  sub->add_option("--limit", o.limit, "sieve budget (default $MVLAB_LIMIT or 1e8)");
  sub->add_option("--seed", o.seed, "seed for random functions");
  sub->add_option("--out", o.out, "output path (default stdout)");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--isa", o.isa, "kernel ISA")->check(CLI::IsMember({"scalar", "avx2"}));
}

void report_resources(std::chrono::steady_clock::duration elapsed) {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  std::cerr << "mvlab: " << std::chrono::duration<double>(elapsed).count() << " s, peak RSS "
            << usage.ru_maxrss / 1024 << " MiB, isa "
            << mvlab::simd::isa_name(mvlab::simd::active_isa()) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean values of multiplicative functions: sums, Euler products, bounds"};
  app.require_subcommand(1);
  Options o;
  std::map<std::string, std::optional<double>> raw;

  const char* commands[] = {"primes", "sum",    "euler",  "wirsing", "thm1",       "thm3",
                            "thm4",   "halasz", "subseq", "lemma1",  "lemma4check"};
  for (const char* name : commands) add_common(app.add_subcommand(name), o, raw);
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", o.suite, "thm1|thm2|thm3|thm4|wirsing|halasz|lemma1")->required();
  add_common(verify, o, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (!o.isa.empty()) {
      mvlab::simd::set_active_isa(o.isa == "avx2" ? mvlab::simd::Isa::kAvx2
                                                  : mvlab::simd::Isa::kScalar);
    }
    const std::uint64_t budget = o.limit != 0 ? o.limit : mvlab::limit_budget();
    const mvlab::Format format = o.format == "csv" ? mvlab::Format::kCsv : mvlab::Format::kJson;
    CLI::App* sub = app.get_subcommands().front();

    mvlab::RunReport report;
    if (sub == verify) {
      report = mvlab::verify_suite(o.suite, budget, o.seed);
    } else {
      mvlab::RunConfig config;
      config.command = *mvlab::parse_command(sub->get_name());
      config.fn = o.fn;
      config.g = o.g;
      config.h = o.h;
      if (o.x.empty()) throw mvlab::ValidationError("--x is required");
      config.xs = mvlab::parse_x_grid(o.x);
      for (const auto& [key, value] : raw) {
        if (value) config.params[key] = *value;
      }
      config.budget = budget;
      config.seed = o.seed;
      config.format = format;
      report = mvlab::run(config);
    }

    if (o.out.empty()) {
      mvlab::write_report(std::cout, report, format);
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw mvlab::ResourceError("cannot open " + o.out + " for writing");
      mvlab::write_report(file, report, format);
    }
    for (const mvlab::Audit& a : report.audits) {
      if (!a.passed) std::cerr << "warning: " << a.hypothesis << ": " << a.detail << '\n';
    }
    report_resources(std::chrono::steady_clock::now() - start);
    return report.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "mvlab: error: " << e.what() << '\n';
    return 1;
  }
}
