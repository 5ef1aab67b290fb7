#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json_io.hpp"

#include "autoclose/scalar.hpp"
#include "autoclose/tower.hpp"

namespace autoclose::cli {

inline constexpr const char* kToolName = "autoclose";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNotSolvable = 2,
  kDepthInsufficient = 3,
};

struct ProblemDocument {
  int version = 1;
  std::string command;
  Field field = Field::rational();
  std::optional<Level> depth;
  std::uint64_t seed = 0;
  std::optional<Level> window;
  json payload = json::object();
};

/// Validates the envelope and the command-specific payload. Throws InputError.
ProblemDocument parse_problem(std::string_view text);
ProblemDocument parse_problem(const json& doc);

json to_json(const ProblemDocument& doc);

struct Report {
  int exit_code = kOk;
  std::string command;
  std::string status;
  json result = json::object();
  /// The document that produced the report, echoed by solve for later verification.
  std::optional<json> problem;
  std::string human;
  double timing_ms = 0;

  json body() const;
};

/// Dispatches to the solver, cohomology or counterexample pipelines.
Report run(const ProblemDocument& doc);

/// Report for an input error, with the offending path.
Report input_error_report(const std::string& command, const std::string& message, const std::string& path);

}  // namespace autoclose::cli
