#include <cstdio>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <doctest.h>

#include "horder/io.hpp"

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(HORDER_CLI_PATH) + " " + args +
                          " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

horder::ordered_json json_of(const CliResult& r) {
  return horder::io::parse_json_text(r.out);
}

}  // namespace

TEST_CASE("cli compare golden example") {
  const CliResult r =
      run_cli(R"(compare --mode hyperbolic '{"roots":[1,3]}' '{"roots":[0,4]}')");
  CHECK(r.code == 0);
  const auto j = json_of(r);
  CHECK(j.at("relation") == "Less");
  CHECK(j.at("forward").at("holds") == true);
}

TEST_CASE("cli compare incomparable pair exits 1") {
  const CliResult r = run_cli(
      R"(compare --mode hyperbolic '{"roots":[0,1,5]}' '{"roots":[-1,3,4]}')");
  CHECK(r.code == 1);
  CHECK(json_of(r).at("relation") == "Incomparable");
}

TEST_CASE("cli compare complex and realparts modes") {
  const CliResult c = run_cli(
      R"(compare --mode complex '{"coeffs":[-1,0,0,1]}' '{"coeffs":[-1.002,-0.03,0,1]}')");
  CHECK(c.code == 1);
  CHECK(json_of(c).at("relation") == "Incomparable");

  const CliResult rp = run_cli(
      R"(compare --mode realparts '{"coeffs":[-1,0,0,1]}' '{"coeffs":[-1.002,-0.03,0,1]}')");
  CHECK(rp.code == 0);
}

TEST_CASE("cli dlam echoes at lambda zero and shifts otherwise") {
  const CliResult id = run_cli(R"(dlam --lambda 0 '{"coeffs":[-1,0,1]}')");
  CHECK(id.code == 0);
  CHECK(json_of(id).at("coeffs") == horder::ordered_json({-1.0, 0.0, 1.0}));

  const CliResult one = run_cli(R"(dlam --lambda 1 '{"coeffs":[-1,0,1]}')");
  CHECK(json_of(one).at("coeffs") == horder::ordered_json({-2.0, 0.0, 1.0}));

  const CliResult ci =
      run_cli(R"(dlam --complex-lambda 0,1 '{"coeffs":[-1,0,1]}')");
  CHECK(ci.code == 0);
  const auto cj = json_of(ci);
  CHECK(cj.at("coeffs")[0][0] == doctest::Approx(0.0));
  CHECK(cj.at("coeffs")[0][1] == doctest::Approx(0.0));
}

TEST_CASE("cli roots and hyperbolic") {
  const CliResult r = run_cli(R"(roots '{"coeffs":[1,0,1]}')");
  CHECK(r.code == 0);
  const auto j = json_of(r);
  CHECK(j.at("roots")[0][1] == doctest::Approx(-1.0));
  CHECK(j.at("roots")[1][1] == doctest::Approx(1.0));

  CHECK(run_cli(R"(hyperbolic '{"coeffs":[-1,0,1]}')").code == 0);
  const CliResult nh = run_cli(R"(hyperbolic '{"coeffs":[1,0,1]}')");
  CHECK(nh.code == 1);
  CHECK(json_of(nh).at("hyperbolic") == false);
}

TEST_CASE("cli witness and birkhoff") {
  const CliResult w = run_cli(R"(witness '{"roots":[1,1]}' '{"roots":[0,2]}')");
  CHECK(w.code == 0);
  const auto wj = json_of(w);
  CHECK(wj.at("matrix")[0][0] == doctest::Approx(0.5));
  CHECK(wj.at("matrix")[1][1] == doctest::Approx(0.5));

  CHECK(run_cli(R"(witness '{"roots":[0,4]}' '{"roots":[1,3]}')").code == 1);

  const CliResult b = run_cli(R"(birkhoff '[[0.5,0.5],[0.5,0.5]]')");
  CHECK(b.code == 0);
  const auto bj = json_of(b);
  CHECK(bj.at("terms").size() == 2);
  CHECK(run_cli(R"(birkhoff '[[1,0],[0.5,0.5]]')").code == 2);
}

TEST_CASE("cli chain") {
  const CliResult r = run_cli(R"(chain --from '[0,2]' --to '[0.5,1.5]')");
  CHECK(r.code == 0);
  const auto j = json_of(r);
  CHECK(j.at("steps").size() == 1);
  CHECK(j.at("final")[0] == doctest::Approx(0.5));
  CHECK(j.at("final")[1] == doctest::Approx(1.5));

  CHECK(run_cli(R"(chain --from '[1,3]' --to '[0,4]')").code == 1);
}

TEST_CASE("cli sweep emits the golden rows") {
  const CliResult r = run_cli(
      R"(sweep --lambda-min 0 --lambda-max 1 --steps 2 '{"coeffs":[-1,0,1]}')");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  CHECK(header == "lambda,x_1,x_2,max,min,spread,top_1");
  CHECK(row0 == "0,-1,1,1,-1,2,1");
  CHECK(row1.substr(0, 2) == "1,");
  CHECK(row1.find("1.4142135623730") != std::string::npos);
}

TEST_CASE("cli verify runs a small suite") {
  const CliResult r = run_cli("verify --suite orbit --trials 5 --seed 7");
  CHECK(r.code == 0);
  const auto j = json_of(r);
  CHECK(j.at("suite") == "orbit");
  CHECK(j.at("trials") == 5);
  CHECK(j.at("failures").empty());

  CHECK(run_cli("verify --suite nonsense --trials 1").code == 2);
}

TEST_CASE("cli conjecture1 subcommand") {
  const CliResult r = run_cli("conjecture1 --trials 20 --seed 3");
  CHECK(r.code == 0);
  CHECK(json_of(r).at("suite") == "conjecture1");
}

TEST_CASE("cli usage errors exit 2") {
  CHECK(run_cli("compare --mode bogus '{\"roots\":[1]}' '{\"roots\":[2]}'").code ==
        2);
  CHECK(run_cli("roots 'not json at all {'").code == 2);
  CHECK(run_cli("roots '{\"coeffs\":[-1,0,1],\"roots\":[1]}'").code == 2);
  CHECK(run_cli("dlam --lambda 1").code == 2);
}

TEST_CASE("cli round trip: printed polynomials re-parse identically") {
  const CliResult r = run_cli(R"(dlam --lambda 0.25 '{"roots":[-3,0.5,2]}')");
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  const CliResult again = run_cli("dlam --lambda 0 '" + j.dump() + "'");
  REQUIRE(again.code == 0);
  CHECK(json_of(again).at("coeffs") == j.at("coeffs"));
}
