#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "parrondo/cli.hpp"

using parrondo::cli::run;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("rate-mixture text output is the bare exact rate") {
  const CliResult r =
      call({"rate-mixture", "--r", "3", "--rho", "1/3", "--gamma", "1/2"});
  CHECK(r.code == 0);
  CHECK(r.out == "18/709\n");
  CHECK(r.err.empty());
}

TEST_CASE("rate-mixture json output") {
  const CliResult r = call({"rate-mixture", "--r", "3", "--rho", "1/3",
                            "--gamma", "1/2", "--format", "json"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("mu") == "18/709");
  CHECK(j.at("mu_decimal").get<double>() == doctest::Approx(18.0 / 709.0));
  CHECK(j.at("method") == "stationary-functional");
  CHECK(j.at("backend") == "exact");
  CHECK(j.at("r") == 3);
}

TEST_CASE("rate-mixture csv output") {
  const CliResult r = call({"rate-mixture", "--r", "3", "--rho", "0",
                            "--gamma", "1/2", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "r,rho,gamma,mu,mu_decimal,method,parity_note,backend");
  CHECK(row.rfind("3,0,1/2,9/70,", 0) == 0);
}

TEST_CASE("rate-mixture backend selection") {
  // Decimal inputs still parse exactly.
  const CliResult dec =
      call({"rate-mixture", "--r", "3", "--rho", "0.25", "--gamma", "0.5"});
  CHECK(dec.out == "135/3334\n");

  // Scientific notation is float-only.
  const CliResult sci =
      call({"rate-mixture", "--r", "3", "--rho", "2.5e-1", "--gamma", "0.5"});
  CHECK(sci.code == 0);
  CHECK(sci.out.find('/') == std::string::npos);

  const CliResult forced = call({"rate-mixture", "--r", "3", "--rho", "2.5e-1",
                                 "--gamma", "0.5", "--backend", "exact"});
  CHECK(forced.code == 2);
  CHECK(forced.err.find("error:") == 0);

  // Large r switches auto mode to float.
  const CliResult big =
      call({"rate-mixture", "--r", "100", "--rho", "0", "--gamma", "1/5"});
  CHECK(big.code == 0);
  CHECK(big.out.find('/') == std::string::npos);

  // ... unless exact is forced.
  const CliResult bigx = call({"rate-mixture", "--r", "100", "--rho", "0",
                               "--gamma", "1/5", "--backend", "exact"});
  CHECK(bigx.code == 0);
  CHECK(bigx.out.find('/') != std::string::npos);
}

TEST_CASE("rate-pattern with an explicit pattern") {
  const CliResult r =
      call({"rate-pattern", "--r", "3", "--rho", "1/3", "--pattern", "AABB"});
  CHECK(r.code == 0);
  CHECK(r.out == "4/163\n");

  const CliResult grouped = call(
      {"rate-pattern", "--r", "3", "--rho", "1/3", "--pattern", "(AB)^2 B"});
  CHECK(grouped.out == "3613392/47747645\n");
}

TEST_CASE("rate-pattern --absb uses the closed form at rho 0") {
  const CliResult r = call({"rate-pattern", "--r", "3", "--rho", "0", "--absb",
                            "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("mu") == "9/25");
  CHECK(j.at("method") == "absb-closed-form");
  CHECK(j.at("pattern") == "ABABB");

  // Away from rho = 0 the same flag runs the composite analysis.
  const nlohmann::json j2 = nlohmann::json::parse(
      call({"rate-pattern", "--r", "3", "--rho", "1/3", "--absb", "2",
            "--format", "json"})
          .out);
  CHECK(j2.at("mu") == "3613392/47747645");
  CHECK(j2.at("method") == "pattern-composite");
}

TEST_CASE("rate-pattern parity flag") {
  const CliResult odd = call({"rate-pattern", "--r", "4", "--rho", "0",
                              "--absb", "2", "--parity", "odd"});
  CHECK(odd.out == "0\n");
  const CliResult even = call({"rate-pattern", "--r", "4", "--rho", "0",
                               "--absb", "2", "--parity", "even"});
  CHECK(even.out == "1/2\n");
}

TEST_CASE("simulate csv is deterministic and shaped right") {
  const std::vector<std::string> args{"simulate", "--r",    "3",    "--rho",
                                      "0",        "--gamma", "0.5", "--steps",
                                      "256",      "--seed", "7"};
  const CliResult a = call(args);
  const CliResult b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,S_n,S_n/n");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 9);  // n = 1,2,...,256

  const CliResult other = call({"simulate", "--r", "3", "--rho", "0",
                                "--gamma", "0.5", "--steps", "256", "--seed",
                                "8"});
  CHECK(other.out != a.out);
}

TEST_CASE("simulate json with labels") {
  const CliResult r =
      call({"simulate", "--r", "3", "--rho", "0", "--pattern", "ABABB",
            "--steps", "10", "--seed", "3", "--labels", "--format", "json"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("game_labels") == "ABABBABABB");
  CHECK(j.at("n_steps") == 10);
  CHECK(j.at("pattern") == "ABABB");
  CHECK(j.at("seed") == 3);
}

TEST_CASE("slln-check squares the simulation against the exact rate") {
  const CliResult r =
      call({"slln-check", "--r", "3", "--rho", "0", "--gamma", "0.5",
            "--steps", "20000", "--reps", "4", "--seed", "11", "--threads",
            "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("mu").get<double>() == doctest::Approx(9.0 / 70.0));
  CHECK(j.at("replicas").size() == 4);
  CHECK(j.at("flagged").is_boolean());

  const CliResult text =
      call({"slln-check", "--r", "3", "--rho", "0", "--gamma", "0.5",
            "--steps", "4000", "--reps", "2", "--seed", "11"});
  CHECK(text.out.find("mu=") == 0);
  CHECK(text.out.find("stream 0:") != std::string::npos);

  const CliResult csv =
      call({"slln-check", "--r", "3", "--rho", "0", "--gamma", "0.5",
            "--steps", "4000", "--reps", "2", "--seed", "11", "--format",
            "csv"});
  CHECK(csv.out.rfind("stream,rate,abs_error,within_bound\n", 0) == 0);
}

TEST_CASE("sweep-s reports the exact tie at r = 10") {
  const CliResult r = call({"sweep-s", "--r", "10", "--format", "json"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("argmax_s") == nlohmann::json::array({2, 3}));
  CHECK(j.at("max_mu") == "5/8");
  CHECK(j.at("gap") == "3/8");
}

TEST_CASE("sweep-gamma json and profile output") {
  const CliResult r = call({"sweep-gamma", "--r", "10", "--format", "json"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("argmax_gamma").get<double>() ==
        doctest::Approx(0.366017).epsilon(3e-6));
  CHECK(j.at("unimodal") == true);

  const CliResult prof =
      call({"sweep-gamma", "--r", "10", "--profile", "5"});
  REQUIRE(prof.code == 0);
  std::istringstream lines(prof.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "gamma,mu");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("doubled-chain json carries the exact identities") {
  const CliResult r = call({"doubled-chain", "--r", "4", "--rho", "1/3",
                            "--gamma", "1/2"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j.at("rate") == "6/109");
  CHECK(j.at("two_step_mean") == "12/109");
  CHECK(j.at("sigma1") == nlohmann::json::array({0, 2}));
  CHECK(j.count("pair_matrix") == 0);

  const CliResult with_m = call({"doubled-chain", "--r", "4", "--rho", "1/3",
                                 "--gamma", "1/2", "--matrices"});
  const nlohmann::json jm = nlohmann::json::parse(with_m.out);
  CHECK(jm.count("pair_matrix") == 1);
  CHECK(jm.count("transition_matrix") == 1);

  const CliResult odd = call({"doubled-chain", "--r", "5", "--rho", "1/3",
                              "--gamma", "1/2"});
  CHECK(odd.code == 2);
  CHECK(odd.err.find("even") != std::string::npos);
}

TEST_CASE("--out writes the payload to a file") {
  const std::string path = "cli_out_test.csv";
  const CliResult r =
      call({"rate-mixture", "--r", "3", "--rho", "1/3", "--gamma", "1/2",
            "--format", "csv", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream file(path);
  REQUIRE(file.good());
  std::string header;
  std::getline(file, header);
  CHECK(header == "r,rho,gamma,mu,mu_decimal,method,parity_note,backend");
  file.close();
  std::remove(path.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  for (const std::vector<std::string>& bad :
       {std::vector<std::string>{"rate-mixture", "--r", "2", "--rho", "1/3",
                                 "--gamma", "1/2"},
        {"rate-mixture", "--r", "3", "--rho", "1", "--gamma", "1/2"},
        {"rate-mixture", "--r", "3", "--rho", "1/3", "--gamma", "0"},
        {"rate-mixture", "--r", "3", "--rho", "nonsense", "--gamma", "1/2"},
        {"rate-mixture", "--r", "3", "--rho", "1/3"},
        {"rate-mixture", "--r", "3", "--rho", "1/3", "--gamma", "1/2",
         "--format", "yaml"},
        {"rate-mixture", "--r", "3", "--rho", "1/3", "--gamma", "1/2",
         "--frobnicate"},
        {"rate-pattern", "--r", "3", "--rho", "0"},
        {"rate-pattern", "--r", "3", "--rho", "0", "--pattern", "AABB",
         "--absb", "2"},
        {"rate-pattern", "--r", "3", "--rho", "0", "--pattern", "AXB"},
        {"rate-pattern", "--r", "3", "--rho", "0", "--absb", "-2"},
        {"simulate", "--r", "3", "--rho", "0", "--steps", "10"},
        {"simulate", "--r", "3", "--rho", "0", "--gamma", "0.5", "--pattern",
         "AB", "--steps", "10"},
        {"slln-check", "--r", "3", "--rho", "0", "--gamma", "0.5", "--steps",
         "100", "--reps", "0"},
        {"doubled-chain", "--r", "4", "--rho", "1/3", "--gamma", "2.5e-1",
         "--backend", "exact"},
        {"not-a-command"}}) {
    const CliResult r = call(bad);
    CHECK(r.code == 2);
    CHECK(!r.err.empty());
    CHECK(r.err.find("error") != std::string::npos);
  }
}

TEST_CASE("help exits cleanly") {
  const CliResult top = call({"--help"});
  CHECK(top.code == 0);
  CHECK(top.out.find("rate-mixture") != std::string::npos);

  const CliResult sub = call({"rate-mixture", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--gamma") != std::string::npos);

  const CliResult none = call({});
  CHECK(none.code == 2);
}
