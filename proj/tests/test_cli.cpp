#include <doctest.h>

#include <sstream>

#include "mvlab/cli.hpp"
#include "mvlab/error.hpp"

using namespace mvlab;

namespace {

RunConfig config_for(Command c) {
  RunConfig config;
  config.command = c;
  config.budget = 10'000'000;
  return config;
}

std::string render(const RunReport& r, Format f) {
  std::ostringstream out;
  write_report(out, r, f);
  return out.str();
}

}  // namespace

TEST_CASE("x grid parsing") {
  CHECK(parse_x_grid("10,100,1e3") == std::vector<double>{10, 100, 1000});
  const auto g = parse_x_grid("1e3:1e6:4");
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 1e3);
  CHECK(g[1] == 1e4);
  CHECK(g[2] == 1e5);
  CHECK(g[3] == 1e6);
  CHECK(parse_x_grid("5:50:1") == std::vector<double>{50});
  CHECK_THROWS_AS(parse_x_grid("10,abc"), ValidationError);
  CHECK_THROWS_AS(parse_x_grid("1:2"), ValidationError);
  CHECK_THROWS_AS(parse_x_grid("100:10:3"), ValidationError);
  CHECK_THROWS_AS(parse_x_grid("1:10:2.5"), ValidationError);
}

TEST_CASE("command names") {
  for (const char* name : {"primes", "sum", "euler", "wirsing", "thm1", "thm3", "thm4", "halasz",
                           "subseq", "lemma1", "lemma4check"}) {
    REQUIRE(parse_command(name).has_value());
    CHECK(command_name(*parse_command(name)) == name);
  }
  CHECK_FALSE(parse_command("thm2").has_value());
}

TEST_CASE("sum command") {
  RunConfig config = config_for(Command::kSum);
  config.fn = "one";
  config.xs = {10, 100};
  const RunReport r = run(config);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0]["re_value"].get<double>() == 10.0);
  CHECK(r.records[1]["re_value"].get<double>() == 100.0);
  CHECK(r.exit_code() == 0);
  const std::string csv = render(r, Format::kCsv);
  CHECK(csv.rfind("x,re_value,im_value,re_harmonic,im_harmonic\n10,10,0,", 0) == 0);
}

TEST_CASE("configuration validation") {
  RunConfig config = config_for(Command::kSum);
  config.xs = {10};
  CHECK_THROWS_AS(run(config), ValidationError);  // missing --fn
  config.fn = "twist(one";
  CHECK_THROWS_AS(run(config), ValidationError);
  config.fn = "one";
  config.xs = {100, 10};
  CHECK_THROWS_AS(run(config), ValidationError);
  config.xs = {2e7};
  CHECK_THROWS_AS(run(config), ValidationError);
  RunConfig thm = config_for(Command::kThm1);
  thm.h = "moebius";
  thm.xs = {100};
  CHECK_THROWS_AS(run(thm), ValidationError);  // missing --g
  RunConfig sub = config_for(Command::kSubseq);
  sub.fn = "one";
  sub.xs = {1000};
  CHECK_THROWS_AS(run(sub), ValidationError);  // missing --alpha
  CHECK_THROWS_AS(verify_suite("thm9", 1000), ValidationError);
}

TEST_CASE("identical configurations give identical bytes") {
  RunConfig config = config_for(Command::kThm1);
  config.h = "char(one,7,3)";
  config.g = "one";
  config.xs = parse_x_grid("1e3:1e5:3");
  const std::string a = render(run(config), Format::kJson);
  const std::string b = render(run(config), Format::kJson);
  CHECK(a == b);
  CHECK(a.find("\"case\": \"thm1\"") != std::string::npos);
  config.format = Format::kCsv;
  CHECK(render(run(config), Format::kCsv) == render(run(config), Format::kCsv));
}

TEST_CASE("thm4 command on a pure twist") {
  RunConfig config = config_for(Command::kThm4);
  config.h = "twist(one,1)";
  config.g = "one";
  config.xs = {1e5};
  config.params["t"] = -1.0;
  const RunReport r = run(config);
  const double re = r.records[0]["re_ratio"].get<double>();
  const double im = r.records[0]["im_ratio"].get<double>();
  CHECK(std::hypot(re - 1.0, im) <= 1e-3);

  config.params.erase("t");
  const RunReport found = run(config);
  CHECK(found.summary["t"].get<double>() == doctest::Approx(-1.0).epsilon(1e-2));
}

TEST_CASE("subseq command") {
  RunConfig config = config_for(Command::kSubseq);
  config.fn = "lambda0(0.5,1.0)";
  config.xs = {1e7};
  config.params["alpha"] = 0.3;
  const RunReport r = run(config);
  CHECK(r.summary["final_dev"].get<double>() <= 0.05);
  CHECK(r.records.front().contains("retained_phase"));
  CHECK(r.config["fn"] == "lambda0(0.5,1)");
}

TEST_CASE("lemma1 and halasz commands report audits") {
  RunConfig lemma = config_for(Command::kLemma1);
  lemma.fn = "divisor";
  lemma.xs = {1e3, 1e4};
  const RunReport l = run(lemma);
  CHECK(l.summary["all_hold"].get<bool>());
  CHECK(l.exit_code() == 0);

  RunConfig hal = config_for(Command::kHalasz);
  hal.fn = "divisor";
  hal.xs = {1e4};
  hal.params["beta"] = 1.0;
  const RunReport h = run(hal);
  CHECK(h.exit_code() == 2);  // |d(p)| = 2 exceeds beta
  const std::string json = render(h, Format::kJson);
  CHECK(json.find("\"status\": \"warn\"") != std::string::npos);
}

TEST_CASE("primes command") {
  RunConfig config = config_for(Command::kPrimes);
  config.xs = {10, 1e6};
  const RunReport r = run(config);
  CHECK(r.records[0]["pi"].get<int>() == 4);
  CHECK(r.records[1]["pi"].get<int>() == 78498);
}

TEST_CASE("lemma1 suite") {
  const RunReport r = verify_suite("lemma1", 100'000, 7);
  REQUIRE(r.audits.size() == 1);
  CHECK(r.audits[0].passed);
  CHECK(r.records.size() == 150);
}
