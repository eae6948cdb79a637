#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bergproj/cli.hpp"

using bergproj::cli::run;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct TmpFile {
  std::string path;
  explicit TmpFile(const std::string& name) : path("/tmp/bergproj_test_" + name) {}
  ~TmpFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("norms table values and format") {
  TmpFile tmp("norms.csv");
  CHECK(run({"norms", "--p", "2,4", "--alpha", "0", "--out", tmp.path}) == 0);
  const std::string text = slurp(tmp.path);
  CHECK(text.find("p,alpha,lower_formula,upper_formula,dostanic\n") == 0);
  CHECK(text.find("4,0,1.57079633,4.44288294,1.41421356") != std::string::npos);
}

TEST_CASE("norms json is well-formed") {
  TmpFile tmp("norms.json");
  CHECK(run({"norms", "--p", "3", "--alpha", "0.5", "--format", "json", "--out",
             tmp.path}) == 0);
  const auto j = nlohmann::json::parse(slurp(tmp.path));
  CHECK(j["suite"] == "norms");
  CHECK(j["rows"].size() == 1);
  CHECK(j["rows"][0].contains("lower_formula"));
  CHECK(j["rows"][0].contains("upper_formula"));
  CHECK(j["rows"][0].contains("dostanic"));
}

TEST_CASE("identical argv gives byte-identical output") {
  TmpFile a("det_a.csv"), b("det_b.csv");
  const std::vector<std::string> args1 = {
      "verify", "--trials", "3",  "--seed", "99", "--nr", "64",
      "--ntheta", "128",    "--refine", "2"};
  auto with_out = [&](const std::string& path) {
    auto v = args1;
    v.push_back("--out");
    v.push_back(path);
    return v;
  };
  CHECK(run(with_out(a.path)) == 0);
  CHECK(run(with_out(b.path)) == 0);
  CHECK(slurp(a.path) == slurp(b.path));

  TmpFile c("det_c.csv"), d("det_d.csv");
  CHECK(run({"hv-search", "--p", "1.5", "--samples", "20000", "--seed", "5",
             "--out", c.path}) == 0);
  CHECK(run({"hv-search", "--p", "1.5", "--samples", "20000", "--seed", "5",
             "--out", d.path}) == 0);
  CHECK(slurp(c.path) == slurp(d.path));
}

TEST_CASE("sweep-eps emits the schedule against the upper bound") {
  TmpFile tmp("eps.csv");
  CHECK(run({"sweep-eps", "--p", "2", "--alpha", "0", "--eps", "1,0.1", "--out",
             tmp.path}) == 0);
  const std::string text = slurp(tmp.path);
  CHECK(text.find("eps,value,upper_bound\n") == 0);
  CHECK(text.find("1,1.73205081,3.14159265") != std::string::npos);

  TmpFile tq("eps_quad.csv");
  CHECK(run({"sweep-eps", "--p", "2", "--alpha", "0", "--eps", "1", "--quad",
             "--out", tq.path}) == 0);
  const std::string quad = slurp(tq.path);
  CHECK(quad.find("eps,value,quad_value,g_norm,h_norm,upper_bound\n") == 0);
  CHECK(quad.find("1,1.73205081,1.73205081,1,1,") != std::string::npos);
}

TEST_CASE("norms --full json carries the estimate schedules") {
  TmpFile tmp("full.json");
  CHECK(run({"norms", "--p", "2", "--alpha", "0", "--full", "--xi", "0.5",
             "--eps", "1,0.1", "--format", "json", "--out", tmp.path}) == 0);
  const auto j = nlohmann::json::parse(slurp(tmp.path));
  const auto& row = j["rows"][0];
  CHECK(row["rayleigh_estimates"].size() == 1);
  CHECK(row["rayleigh_estimates"][0]["quotient"].get<double>() <= 1.0 + 1e-6);
  CHECK(row["bilinear_estimates"].size() == 2);
  CHECK(row["bilinear_estimates"][0]["value"].get<double>() ==
        doctest::Approx(1.73205081));
}

TEST_CASE("sweep-xi monotone quotient column") {
  TmpFile tmp("xi.csv");
  CHECK(run({"sweep-xi", "--p", "4", "--alpha", "0", "--xi", "0.5,0.9", "--out",
             tmp.path}) == 0);
  std::istringstream lines(slurp(tmp.path));
  std::string header, row;
  std::getline(lines, header);
  CHECK(header ==
        "xi,quotient,phi_norm,psi_norm,upsilon_norm,f_norm,residual");
  double prev = 0.0;
  while (std::getline(lines, row)) {
    const auto c1 = row.find(',');
    const auto c2 = row.find(',', c1 + 1);
    const double quot = std::stod(row.substr(c1 + 1, c2 - c1 - 1));
    CHECK(quot >= prev);
    prev = quot;
  }
  CHECK(prev > 1.0);
}

TEST_CASE("hy-check passes and reports") {
  TmpFile tmp("hy.csv");
  CHECK(run({"hy-check", "--p", "2,4", "--alpha", "0", "--trials", "5", "--out",
             tmp.path}) == 0);
  const std::string text = slurp(tmp.path);
  CHECK(text.find("p,alpha,trials,min_margin,status") == 0);
  CHECK(text.find("FAIL") == std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run({"norms", "--bogus"}) == 2);
  CHECK(run({"no-such-subcommand"}) == 2);
  CHECK(run({}) == 2);
}
