#include <sstream>

#include "commands.hpp"
#include "problem_file.hpp"
#include "support.hpp"

using namespace cstar;
using namespace cstar::cli;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(CSTAR_FIXTURE_DIR) + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("fixtures parse") {
  const ProblemFile bn = load_problem(fixture("badnear.json"));
  CHECK(bn.subalgebra.real_herm_dim() == 4);
  CHECK(element_norm(bn.element("Z")) == doctest::Approx(5.0));
  CHECK(element_norm(bn.element("A")) == doctest::Approx(7.0));
  CHECK(load_problem(fixture("non_unique.json")).elements.size() == 1);
  CHECK(load_problem(fixture("exercise.json")).elements.size() == 1);
}

TEST_CASE("parser is strict") {
  const std::string base = R"("algebra": {"blocks": [2]}, "elements": {"X": [[[[0,0],[1,0]],[[1,0],[0,0]]]]})";
  CHECK_NOTHROW(parse_problem_text("{" + base + R"(, "subalgebra": {"kind": "diagonal"}})"));
  CHECK_NOTHROW(parse_problem_text("{" + base + R"(, "subalgebra": {"generators": ["X"]}})"));
  CHECK_THROWS_AS(parse_problem_text("{" + base + R"(, "subalgebra": {"kind": "diagonal"}, "extra": 1})"), ParseError);
  CHECK_THROWS_AS(parse_problem_text("{" + base + R"(, "subalgebra": {"kind": "bogus"}})"), ParseError);
  CHECK_THROWS_AS(parse_problem_text("{" + base + R"(, "subalgebra": {"generators": ["Y"]}})"), ParseError);
  CHECK_THROWS_AS(parse_problem_text("{" + base + R"(, "subalgebra": {"kind": "diagonal", "tol": 1}})"), ParseError);
  CHECK_THROWS_AS(parse_problem_text(R"({"algebra": {"blocks": [2]}, "elements": {"X": [[[1,0]]]}, "subalgebra": {"kind": "scalars"}})"), ParseError);
  CHECK_THROWS_AS(parse_problem_text(R"({"algebra": {"blocks": [2]}, "elements": {"X": [[[1,2],[3,4]]]}, "subalgebra": {"kind": "scalars"}})"), ParseError);
  CHECK_THROWS_AS(parse_problem_text(R"({"algebra": {"blocks": [1.5]}, "elements": {}, "subalgebra": {"kind": "scalars"}})"), ParseError);
  CHECK_THROWS_AS(parse_problem_text("{not json"), ParseError);
}

TEST_CASE("dist on badnear Z is certified") {
  const Run r = run_cli({"dist", fixture("badnear.json"), "Z", "--certify", "--json"});
  REQUIRE(r.code == ExitCode::ok);
  const json j = json::parse(r.out);
  CHECK_NOTHROW(validate_dist_report(j));
  CHECK(std::abs(j["radius"].get<double>() - 5.0) < 1e-6);
  CHECK(j["certificate"]["weights"].size() == 4);
  const Element back = element_from_json(BlockAlgebra({2, 2, 2}), j["minimizer"]);
  CHECK(element_norm(back) < 1e-5);
}

TEST_CASE("dist: member of the subalgebra and the non-unique example") {
  const Run b = run_cli({"dist", fixture("badnear.json"), "B", "--certify", "--json"});
  REQUIRE(b.code == ExitCode::ok);
  const json jb = json::parse(b.out);
  CHECK_NOTHROW(validate_dist_report(jb));
  CHECK(jb["radius"].get<double>() < 1e-9);

  const Run n = run_cli({"dist", fixture("non_unique.json"), "A", "--json"});
  REQUIRE(n.code == ExitCode::ok);
  const json jn = json::parse(n.out);
  CHECK_NOTHROW(validate_dist_report(jn));
  CHECK(jn["certificate"].is_null());
  CHECK(std::abs(jn["radius"].get<double>() - 1.0) < 1e-6);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"dist", fixture("exercise.json"), "A", "--certify", "--json"};
  CHECK(run_cli(args).out == run_cli(args).out);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"dist", fixture("missing.json"), "Z"}).code == ExitCode::parse_error);
  CHECK(run_cli({"dist", fixture("badnear.json"), "Q"}).code == ExitCode::parse_error);
  CHECK(run_cli({"witness", fixture("exercise.json"), "A"}).code == ExitCode::certification);
  CHECK(run_cli({"witness", fixture("badnear.json"), "Z"}).code == ExitCode::ok);
  CHECK(run_cli({"dist", fixture("badnear.json"), "A", "--max-iterations", "5"}).code == ExitCode::budget);
  CHECK(run_cli({"nonsense"}).code == ExitCode::usage);
}

TEST_CASE("other commands") {
  const Run g = run_cli({"gns", fixture("badnear.json"), "Z", "--emit-unitary", "--json"});
  REQUIRE(g.code == ExitCode::ok);
  const json jg = json::parse(g.out);
  CHECK(std::abs(jg["commutator_seminorm"].get<double>() - 5.0) < 1e-5);
  CHECK(jg["unitary"].size() == jg["dim"].get<std::size_t>());

  const Run nm = run_cli({"norm", fixture("badnear.json"), "A"});
  CHECK(nm.code == ExitCode::ok);
  CHECK(std::stod(nm.out) == doctest::Approx(7.0));

  const Run c = run_cli({"check", fixture("badnear.json"), "--property", "leibniz", "--trials", "5", "--seed", "3", "--json"});
  CHECK(c.code == ExitCode::ok);
  CHECK(json::parse(c.out)["pass"].get<bool>());

  CHECK(run_cli({"examples"}).code == ExitCode::ok);
}
