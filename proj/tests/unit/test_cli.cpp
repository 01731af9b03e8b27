#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "kpl/cli.hpp"
#include "kpl/cost.hpp"
#include "kpl/report.hpp"

using namespace kpl;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "kpl");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("cost") {
  const auto r = invoke({"cost", "--m", "1,2,4"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2u);
  CHECK(l[0] == "m,N,M,cost,ratio");
  CHECK(l[1] == "1|2|4,7,3,0.25," + format_number(0.25 / optimum_cost(7)));
}

TEST_CASE("invalid vector is a usage error naming the entry") {
  const auto r = invoke({"cost", "--m", "0,2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("entry 0") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"cost"}).code == 2);
  CHECK(invoke({"lossy", "--m", "1", "--eta", "0"}).code == 2);
  CHECK(invoke({"lossy", "--m", "1", "--eta", "0.5", "--mode", "guess"}).code == 2);
  CHECK(invoke({"report-fig3", "--eta", "1", "--n-max", "10"}).code == 2);
  CHECK(invoke({"cost", "--m", "1", "--format", "svg"}).code == 2);
}

TEST_CASE("help") {
  const auto r = invoke({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify-shor") != std::string::npos);
  const auto sub = invoke({"lossy", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("KPL_EXACT_LOSS_CAP") != std::string::npos);
}

TEST_CASE("bounds table") {
  const auto r = invoke({"bounds", "--n-max", "10"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 11u);
  CHECK(l[0] == "n,optimum,kitaev,bound_m2,bound_m3");
  for (std::uint64_t n = 1; n <= 10; ++n) {
    CHECK(l[n].rfind(std::to_string(n) + "," + format_number(optimum_cost(n)) + ",", 0) == 0);
  }
  CHECK(l[3] == "3," + format_number(optimum_cost(3)) + ",0.5,,0.5");
}

TEST_CASE("profile") {
  CHECK(invoke({"profile", "--m", "1,1"}).out == "n,J\n0,1\n1,2\n2,1\n");
  CHECK(invoke({"profile", "--doubled", "4"}).out == "n,J\n0,1\n1,2\n2,3\n3,4\n4,3\n5,2\n6,1\n");
  CHECK(invoke({"profile", "--product", "2"}).out == "n,J\n0,1\n1,2\n2,1\n");
  CHECK(lines(invoke({"profile", "--kitaev", "3"}).out).size() == 9u);
  CHECK(invoke({"profile", "--doubled", "3"}).code == 2);
  CHECK(invoke({"profile"}).code == 2);
  CHECK(invoke({"profile", "--m", "1", "--kitaev", "2"}).code == 2);
}

TEST_CASE("lossy") {
  const auto exact = lines(invoke({"lossy", "--m", "1,1", "--eta", "0.5"}).out);
  REQUIRE(exact.size() == 2u);
  CHECK(exact[1] == "1|1,0.5,exact,1.14644660941,2");
  const auto adj = lines(invoke({"lossy", "--m", "1,2", "--eta", "0.9", "--mode", "resource"}).out);
  REQUIRE(adj.size() == 2u);
  CHECK(adj[1] == "1|2,0.9,resource,0.5," + format_number(1 / 0.9 + 2 / 0.81));
  CHECK(invoke({"lossy", "--m", "1,1,1", "--eta", "0.5", "--exact-cap", "2"}).code == 1);
}

TEST_CASE("search") {
  const auto r = invoke({"search", "--n-min", "1", "--n-max", "12", "--alphabet", "pow2"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 13u);
  CHECK(l[0] == "n,best_m,cost,ratio");
  CHECK(l[2].rfind("2,1|1,", 0) == 0);
  CHECK(invoke({"search", "--n-max", "30", "--strategy", "exhaustive"}).code == 1);
  CHECK(invoke({"search", "--n-max", "20", "--tiers", "bad"}).code == 2);
  CHECK(invoke({"search", "--n-max", "20", "--eta", "0.9"}).code == 0);
}

TEST_CASE("verify-shor") {
  const auto r = invoke({"verify-shor", "--m-count", "3"});
  CHECK(r.code == 0);
  const auto l = lines(r.out);
  REQUIRE(l.size() == 2u);
  CHECK(l[1].rfind("PASS,3,8,1|2|4,0.25,1,", 0) == 0);
  CHECK(invoke({"verify-shor", "--m-count", "3", "--cap", "2"}).code == 2);
  CHECK(invoke({"verify-shor", "--m-count", "0"}).code == 2);
}

TEST_CASE("simulate is reproducible") {
  const std::vector<std::string> args{"simulate", "--m", "1,1", "--samples", "5000", "--seed", "9"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out)[0] == "m,phi,samples,seed,mean,std_error,analytic");
}

TEST_CASE("--out writes a file") {
  const std::string path = "kpl_cli_test_out.csv";
  const auto r = invoke({"--out", path, "cost", "--m", "1,1"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().rfind("m,N,M,cost,ratio\n1|1,2,2,", 0) == 0);
  std::remove(path.c_str());
}

TEST_CASE("reports") {
  const auto csv = invoke({"report-fig2", "--n-max", "20"});
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("series,x,y\n", 0) == 0);
  const auto svg = invoke({"report-fig2", "--n-max", "20", "--format", "svg"});
  CHECK(svg.out.find("<svg") != std::string::npos);
  const auto fig3 = invoke({"report-fig3", "--eta", "0.5,0.9", "--n-max", "50"});
  CHECK(fig3.code == 0);
  CHECK(fig3.out.find("best_found_eta=0.5") != std::string::npos);
}
