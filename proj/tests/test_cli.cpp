#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(EGL_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) out += buf.data();
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

}  // namespace

TEST_CASE("cli: fit report carries provenance and the expected estimate") {
  auto r = run_cli("fit --dataset bank --family exponential --seed 9");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  CHECK(doc.contains("version"));
  CHECK(doc["seed"] == 9);
  CHECK(doc["config"]["command"] == "fit");
  CHECK(doc["config"]["dataset"] == "bank");
  CHECK(doc["dataset"]["n"] == 100);
  CHECK(doc["dataset"].contains("digest"));
  auto row = doc["results"][0];
  CHECK(row["family"] == "exponential");
  double rate = row["estimates"]["theta"].get<double>();
  CHECK(rate == doctest::Approx(0.10124531740407006).epsilon(1e-6));
  CHECK(row["converged"].get<bool>());
  CHECK(row["conf_intervals"]["theta"][0].get<double>() < rate);
  CHECK(row["conf_intervals"]["theta"][1].get<double>() > rate);
}

TEST_CASE("cli: identical invocations produce identical bytes") {
  const std::string invocations[] = {
      "fit --dataset bank --family exponential,lindley --seed 4",
      "compare --dataset bank --family exponential,lindley --seed 4",
      "sample --n 20 --seed 11 --lambda 1 --theta 1 --alpha 2",
      "eval --which pdf --grid 0:5:21 --lambda 1 --theta 0.7 --alpha 1.3",
  };
  for (const auto& inv : invocations) {
    auto a = run_cli(inv);
    auto b = run_cli(inv);
    REQUIRE(a.exit_code == 0);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.output == b.output);
  }
}

TEST_CASE("cli: eval at zero matches the closed-form density intercept") {
  auto r = run_cli(
      "eval --which pdf --grid 0:0:1 --lambda 2 --theta 0.5 --alpha 1.5");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  REQUIRE(doc["table"].size() == 1);
  double value = doc["table"][0][1].get<double>();
  // alpha theta^2 lambda / (1 + theta)
  CHECK(value == doctest::Approx(1.5 * 0.25 * 2.0 / 1.5).epsilon(1e-14));
}

TEST_CASE("cli: cdf tends to one far in the tail") {
  auto r = run_cli(
      "eval --which cdf --grid 200:200:1 --lambda 1 --theta 1 --alpha 1");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  double v = doc["table"][0][1].get<double>();
  CHECK(v > 1.0 - 1e-6);
  CHECK(v <= 1.0);
}

TEST_CASE("cli: hazard table is nonincreasing in the decreasing regime") {
  auto r = run_cli(
      "eval --which hazard --grid 0:20:41 --lambda 1 --theta 1 --alpha 0.3");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  double prev = std::numeric_limits<double>::infinity();
  for (const auto& row : doc["table"]) {
    double h = row[1].get<double>();
    CHECK(h <= prev + 1e-12);
    prev = h;
  }
}

TEST_CASE("cli: quantile eval takes a probability grid") {
  auto r = run_cli(
      "eval --which quantile --grid 0.1:0.9:9 --lambda 1 --theta 1 --alpha 1");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  REQUIRE(doc["table"].size() == 9);
  double prev = 0.0;
  for (const auto& row : doc["table"]) {
    double q = row[1].get<double>();
    CHECK(q > prev);  // strictly increasing in gamma
    prev = q;
  }
  // Median of the unit triple.
  CHECK(doc["table"][4][1].get<double>() ==
        doctest::Approx(1.1461932206205826).epsilon(1e-12));
}

TEST_CASE("cli: csv format emits a plain two-column table") {
  auto r = run_cli(
      "eval --which cdf --grid 1:3:3 --lambda 1 --theta 1 --alpha 1 "
      "--format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.rfind("x,cdf\n", 0) == 0);
  int lines = 0;
  for (char c : r.output) lines += c == '\n';
  CHECK(lines == 4);  // header + 3 rows
}

TEST_CASE("cli: sample stream is one value per line and seed-stable") {
  auto a = run_cli("sample --n 5 --seed 123 --lambda 1 --theta 1 --alpha 1");
  auto b = run_cli("sample --n 5 --seed 123 --lambda 1 --theta 1 --alpha 1");
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  int lines = 0;
  for (char c : a.output) lines += c == '\n';
  CHECK(lines == 5);
  auto c = run_cli("sample --n 5 --seed 124 --lambda 1 --theta 1 --alpha 1");
  CHECK(a.output != c.output);
  auto d = run_cli(
      "sample --n 5 --seed 123 --method transform --lambda 1 --theta 1 "
      "--alpha 1");
  REQUIRE(d.exit_code == 0);
  CHECK(a.output != d.output);
}

TEST_CASE("cli: usage errors exit with status 2 and a machine-readable object") {
  auto no_sub = run_cli("");
  CHECK(no_sub.exit_code == 2);

  auto bad_flag = run_cli("fit --dataset bank --no-such-flag");
  CHECK(bad_flag.exit_code == 2);

  auto bad_family = run_cli("fit --dataset bank --family weibull");
  CHECK(bad_family.exit_code == 2);
  auto doc = nlohmann::json::parse(bad_family.output);
  CHECK(doc["error"].contains("kind"));
  CHECK(doc["error"].contains("message"));

  auto bad_grid = run_cli("eval --which pdf --grid 5:1:10");
  CHECK(bad_grid.exit_code == 2);

  auto bad_which = run_cli("eval --which foo --grid 0:1:2");
  CHECK(bad_which.exit_code == 2);
}

TEST_CASE("cli: data errors exit with status 3") {
  auto missing = run_cli("fit --data no_such_file.csv --family lindley");
  CHECK(missing.exit_code == 3);
  auto doc = nlohmann::json::parse(missing.output);
  CHECK(doc["error"]["kind"] == "Io");

  auto no_source = run_cli("fit --family lindley");
  CHECK(no_source.exit_code == 3);

  std::ofstream bad("egl_cli_bad_input.csv", std::ios::binary);
  bad << "1.0\n-2.0\n";
  bad.close();
  auto negative = run_cli("fit --data egl_cli_bad_input.csv --family lindley");
  CHECK(negative.exit_code == 3);
  std::remove("egl_cli_bad_input.csv");
}

TEST_CASE("cli: --out writes the report to a file") {
  std::string path = "egl_cli_out_test.json";
  auto r = run_cli("fit --dataset bank --family exponential --out " + path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream f(path);
  REQUIRE(f.good());
  nlohmann::json doc;
  f >> doc;
  CHECK(doc["results"][0]["family"] == "exponential");
  f.close();
  std::remove(path.c_str());
}

TEST_CASE("cli: simulated single-parameter data round-trips through fit") {
  std::string path = "egl_cli_lindley_sim.csv";
  auto s = run_cli("sample --n 4000 --seed 21 --lambda 1 --theta 1.7 "
                   "--alpha 1 --out " + path);
  REQUIRE(s.exit_code == 0);
  // alpha = 1 samples are Lindley(theta) in lambda*x with lambda = 1.
  auto r = run_cli("fit --data " + path + " --family lindley");
  REQUIRE(r.exit_code == 0);
  auto doc = nlohmann::json::parse(r.output);
  double theta = doc["results"][0]["estimates"]["theta"].get<double>();
  CHECK(std::abs(theta - 1.7) < 0.17);
  std::remove(path.c_str());
}
