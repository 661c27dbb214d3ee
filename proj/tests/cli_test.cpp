#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "msp/cli.hpp"
#include "msp/instances.hpp"
#include "msp/json_io.hpp"

using namespace msp;
using nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("analytic subcommand emits formula values") {
  RunResult r = run_cli({"analytic", "--formula", "a", "--r", "2", "--p", "0.4241"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(0.3341).epsilon(2e-4));

  r = run_cli({"analytic", "--formula", "c", "--r", "1", "--p", "0.367879"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(0.367879).epsilon(1e-5));
}

TEST_CASE("optimize subcommand reports mixture parameters") {
  RunResult r = run_cli({"optimize", "--target", "graphic-mixture"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["p"].get<double>() == doctest::Approx(0.5).epsilon(5e-3));
  CHECK(j["q"].get<double>() == doctest::Approx(0.8251).epsilon(5e-3));
  CHECK(j["eps"].get<double>() == doctest::Approx(0.0141).epsilon(0.3));
  CHECK(j["value"].get<double>() >= 0.2504 - 1.5e-3);
}

TEST_CASE("gen/tight write instance files, simulate consumes them") {
  std::string inst = temp_path("msp_cli_uniform.json");
  RunResult g = run_cli({"gen", "--family", "uniform", "--n", "12", "--r", "2", "--seed",
                         "7", "--out", inst});
  REQUIRE(g.code == 0);
  CHECK(validate_instance(load_instance(inst)).empty());

  RunResult s1 = run_cli({"simulate", "--instance", inst, "--algorithm", "greedy", "--p",
                          "0.4", "--trials", "2000", "--seed", "11"});
  REQUIRE(s1.code == 0);
  RunResult s2 = run_cli({"simulate", "--instance", inst, "--algorithm", "greedy", "--p",
                          "0.4", "--trials", "2000", "--seed", "11"});
  CHECK(s1.out == s2.out);  // identical argv -> byte-identical output
  json j = json::parse(s1.out);
  CHECK(j["seed"].get<std::uint64_t>() == 11);
  CHECK(j["trials"].get<long>() == 2000);
  CHECK(j.contains("augmentation"));

  RunResult csv = run_cli({"simulate", "--instance", inst, "--algorithm", "greedy", "--p",
                           "0.4", "--trials", "500", "--seed", "3", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(csv.out.rfind("element_id,hits,trials,freq,ci_lo,ci_hi", 0) == 0);

  std::string tightf = temp_path("msp_cli_tight.json");
  RunResult t = run_cli({"tight", "--q", "4", "--r", "2", "--seed", "5", "--out", tightf});
  REQUIRE(t.code == 0);
  MatroidInstance tm = load_instance(tightf);
  CHECK(tm.n == 8);
  CHECK(tm.rank() == 2);
  std::remove(inst.c_str());
  std::remove(tightf.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({"simulate", "--trials", "10"}).code == 2);  // missing instance
  CHECK(run_cli({"bogus"}).code == 2);
  CHECK(run_cli({"analytic", "--formula", "nope"}).code == 2);
  std::string inst = temp_path("msp_cli_err.json");
  run_cli({"gen", "--family", "uniform", "--n", "5", "--r", "2", "--seed", "1", "--out", inst});
  // trials = 0 rejected
  CHECK(run_cli({"simulate", "--instance", inst, "--algorithm", "greedy", "--p", "0.5",
                 "--trials", "0", "--seed", "1"}).code == 2);
  // incompatible algorithm/instance
  CHECK(run_cli({"simulate", "--instance", inst, "--algorithm", "basic", "--p", "0.5",
                 "--trials", "10", "--seed", "1"}).code == 2);
  std::remove(inst.c_str());
}

TEST_CASE("verify subcommand returns 0 on clean pairings") {
  std::string inst = temp_path("msp_cli_verify.json");
  run_cli({"gen", "--family", "uniform", "--n", "10", "--r", "3", "--seed", "2", "--out",
           inst});
  RunResult r = run_cli({"verify", "--pairing", "uniform", "--instance", inst, "--p", "0.4",
                         "--trials", "800", "--seed", "5"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["violations"].get<long>() == 0);
  CHECK(j["converse_violations"].get<long>() == 0);
  std::remove(inst.c_str());
}

TEST_CASE("oracle subcommand") {
  std::string inst = temp_path("msp_cli_oracle.json");
  run_cli({"gen", "--family", "uniform", "--n", "2", "--r", "1", "--seed", "1", "--out",
           inst});
  RunResult r = run_cli({"oracle", "--instance", inst, "--algorithm", "greedy", "--p", "0.5"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["per_element"][0]["prob"].get<double>() == doctest::Approx(0.375).epsilon(1e-9));
  std::remove(inst.c_str());
}

TEST_CASE("assert-min gate produces exit code 1") {
  std::string inst = temp_path("msp_cli_gate.json");
  run_cli({"gen", "--family", "uniform", "--n", "12", "--r", "2", "--seed", "9", "--out",
           inst});
  RunResult r = run_cli({"simulate", "--instance", inst, "--algorithm", "greedy", "--p",
                         "0.4", "--trials", "1000", "--seed", "13", "--assert-min", "0.99"});
  CHECK(r.code == 1);
  std::remove(inst.c_str());
}

TEST_CASE("test-dist can dump a trace as JSON lines") {
  std::string inst = temp_path("msp_cli_dist.json");
  std::string dump = temp_path("msp_cli_trace.jsonl");
  run_cli({"gen", "--family", "uniform", "--n", "8", "--r", "2", "--seed", "3", "--out",
           inst});
  RunResult r = run_cli({"test-dist", "--instance", inst, "--p", "0.4", "--trials", "500",
                         "--seed", "4", "--dump-trace", dump});
  REQUIRE(r.code == 0);
  std::ifstream f(dump);
  REQUIRE(f.good());
  std::string line;
  int lines = 0;
  while (std::getline(f, line)) {
    json rec = json::parse(line);
    CHECK(rec.contains("t"));
    CHECK(rec.contains("elem"));
    CHECK(rec.contains("opt"));
    ++lines;
  }
  CHECK(lines >= 1);
  std::remove(inst.c_str());
  std::remove(dump.c_str());
}

TEST_CASE("instance JSON round trip") {
  SplitMix64 rng(77);
  for (MatroidInstance m :
       {random_graph(5, 9, false, 0.4, rng), random_laminar(10, 2, 3, rng),
        random_rank2({2, 3}, rng), uniform_instance(6, 2)}) {
    json j = instance_to_json(m);
    MatroidInstance back = instance_from_json(j);
    CHECK(instance_to_json(back) == j);
    CHECK(back.rank() == m.rank());
  }
}
