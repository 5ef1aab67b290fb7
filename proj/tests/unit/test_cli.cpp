#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "problem.hpp"

using namespace autoclose::cli;

namespace {

ProblemDocument parse_text(std::string_view text) { return parse_problem(text); }

json load(const std::string& name) {
  std::ifstream in(std::string(AUTOCLOSE_EXAMPLES_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return json::parse(ss.str());
}

/// Report body without the timing field.
json stable_body(const Report& r) {
  json b = r.body();
  b.erase("timing_ms");
  return b;
}

std::string error_path(const json& doc) {
  try {
    parse_problem(doc);
  } catch (const InputError& e) {
    return e.path();
  }
  return "<accepted>";
}

json verify_doc(const Report& r) {
  json payload = r.body();
  return json{{"version", 1}, {"command", "verify"}, {"payload", payload}};
}

}  // namespace

TEST(Cli, MinimalCounterexampleDocument) {
  const auto doc = parse_text(R"({"version": 1, "command": "counterexample", "field": "z",
                                     "payload": {"which": "example1"}})");
  EXPECT_EQ(doc.command, "counterexample");
  EXPECT_EQ(doc.field, autoclose::Field::integer());
}

TEST(Cli, SchemaErrorsNameTheirPath) {
  json doc = load("cohom_cyclic2_dims.json");
  doc["field"] = "z";
  EXPECT_EQ(error_path(doc), "/field");

  doc = load("cohom_integer_counting.json");
  doc["payload"]["cochain"]["values"][2] = "1/0";
  EXPECT_EQ(error_path(doc), "/payload/cochain/values/2");

  doc = load("solve_example1.json");
  doc["command"] = "integrate";
  EXPECT_EQ(error_path(doc), "/command");

  doc = load("solve_example1.json");
  doc["version"] = 2;
  EXPECT_EQ(error_path(doc), "/version");

  doc = load("solve_example1.json");
  doc["payload"]["map"]["builtin"] = "example1_integer";
  EXPECT_EQ(error_path(doc), "/payload/map/builtin");

  doc = load("cohom_free2_roundtrip.json");
  doc["payload"]["representation"]["matrices"][0] = json::array({json::array({"1", "0"})});
  EXPECT_EQ(error_path(doc), "/payload/representation/matrices/0/0");

  EXPECT_THROW(parse_text("{not json"), InputError);
}

TEST(Cli, InvalidRationalMessage) {
  json doc = load("cohom_integer_counting.json");
  doc["payload"]["cochain"]["values"][2] = "1/0";
  try {
    parse_problem(doc);
    FAIL() << "accepted 1/0";
  } catch (const InputError& e) {
    EXPECT_NE(e.message().find("invalid rational"), std::string::npos);
  }
}

TEST(Cli, SolveExample1AndVerify) {
  const Report r = run(parse_problem(load("solve_example1.json")));
  EXPECT_EQ(r.exit_code, kOk);
  EXPECT_EQ(r.status, "ok");
  EXPECT_TRUE(r.result["certificate"]["verified"].get<bool>());
  EXPECT_EQ(r.result["certificate"]["v"].size(), 20u);

  const Report v = run(parse_problem(verify_doc(r)));
  EXPECT_EQ(v.exit_code, kOk);
  EXPECT_EQ(v.status, "verified");

  json tampered = r.body();
  tampered["result"]["certificate"]["v"][4][0] = "7";
  const Report bad = run(parse_problem(json{{"version", 1}, {"command", "verify"}, {"payload", tampered}}));
  EXPECT_EQ(bad.exit_code, kNotSolvable);
  EXPECT_EQ(bad.status, "rejected");
}

TEST(Cli, ReportsAreDeterministic) {
  for (const char* name : {"solve_example1.json", "solve_difference_f3.json", "cohom_cyclic2_dims.json",
                           "cohom_integer_counting.json"}) {
    const auto doc = parse_problem(load(name));
    EXPECT_EQ(stable_body(run(doc)), stable_body(run(doc))) << name;
  }
}

TEST(Cli, CohomDimsAndRejection) {
  const Report dims = run(parse_problem(load("cohom_cyclic2_dims.json")));
  EXPECT_EQ(dims.exit_code, kOk);
  EXPECT_EQ(dims.result["dims"]["cocycles"], 1);
  EXPECT_EQ(dims.result["dims"]["coboundaries"], 0);
  EXPECT_EQ(dims.result["dims"]["cohomology"], 1);

  const Report rej = run(parse_problem(load("cohom_integer_counting.json")));
  EXPECT_EQ(rej.exit_code, kNotSolvable);
  EXPECT_EQ(rej.result["failure"]["level"], 1);
}

TEST(Cli, CohomSolveCertificateReverifies) {
  const Report r = run(parse_problem(load("cohom_free2_roundtrip.json")));
  ASSERT_EQ(r.exit_code, kOk) << r.body().dump(2);
  EXPECT_TRUE(r.result["coboundary_matches"].get<bool>());
  const Report v = run(parse_problem(verify_doc(r)));
  EXPECT_EQ(v.exit_code, kOk);
}

TEST(Cli, ExitCodesStayApart) {
  json doc = load("solve_example1.json");
  doc["payload"]["map"]["builtin"] = "zero";
  doc["payload"]["target"] = json{{"top", {{"level", 3}, {"vector", {"0", "0", "1"}}}}};
  doc.erase("depth");
  const Report not_solvable = run(parse_problem(doc));
  EXPECT_EQ(not_solvable.exit_code, kNotSolvable);

  // The kernel at level 1 only dies at the last level of the fixture, so its
  // stabilization cannot be observed.
  const Report late = run(parse_text(R"({"version": 1, "command": "solve", "field": "q", "depth": 1,
    "payload": {
      "map": {"source": {"builtin": "constant", "dim": 1},
              "target": {"dims": [0, 0, 0, 1], "q_matrices": [[], [], []]},
              "levels": [{"read_level": 1, "matrix": []}, {"read_level": 1, "matrix": []},
                         {"read_level": 1, "matrix": []}, {"read_level": 1, "matrix": [["1"]]}]},
      "target": {"prefix": [[], [], [], ["0"]]}}})"));
  EXPECT_EQ(late.exit_code, kDepthInsufficient) << late.body().dump(2);

  EXPECT_EQ(input_error_report("solve", "x", "/").exit_code, kInputError);
  EXPECT_NE(kNotSolvable, kInputError);
  EXPECT_NE(kDepthInsufficient, kInputError);
}

TEST(Cli, CounterexampleReports) {
  const Report e1 = run(parse_text(R"({"version": 1, "command": "counterexample", "field": "z", "depth": 8,
                                          "payload": {"which": "example1", "q": "1,0,..."}})"));
  EXPECT_EQ(e1.exit_code, kOk);
  ASSERT_EQ(e1.result["levels"].size(), 8u);
  EXPECT_EQ(e1.result["levels"][7]["min_norm"], "85");

  const Report e2 = run(parse_text(R"({"version": 1, "command": "counterexample", "field": "z",
                                          "payload": {"which": "example2", "t": "0.5", "eps": "0.001"}})"));
  EXPECT_EQ(e2.exit_code, kOk);
  EXPECT_TRUE(e2.result["stable_under_doubling"].get<bool>());
}
