#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "problem.hpp"

#include "autoclose/counterexamples.hpp"

namespace {

using autoclose::cli::json;

struct Flags {
  std::string input;
  std::optional<std::size_t> depth;
  std::optional<std::string> field;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> window;
  std::string csv;
  std::optional<std::string> which;
  std::optional<std::string> q;
  std::optional<std::string> t;
  std::optional<std::string> eps;
  std::optional<long> bound;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--input", f.input, "Problem document (JSON); '-' or absent reads stdin");
  cmd->add_option("--depth", f.depth, "Number of levels to solve or scan");
  cmd->add_option("--field", f.field, "q, fp:<p> or z");
  cmd->add_option("--seed", f.seed, "Seed for random targets and cochains");
  cmd->add_option("--window", f.window, "Stabilization confirmation window");
}

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

void write_csv(const std::string& path, const json& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  if (result.contains("levels")) {
    out << "i,min_norm,two_pow_i_over_3\n";
    for (const auto& row : result["levels"]) {
      mpq_class third(row["two_pow_over_three"].get<std::string>());
      out << row["level"].get<std::size_t>() << "," << row["min_norm"].get<std::string>() << "," << autoclose::decimal_string(third, 6)
          << "\n";
    }
  } else if (result.value("found", false)) {
    out << "m,n,residual_lo,residual_hi\n"
        << result["m"].get<long>() << "," << result["n"].get<long>() << "," << result["residual_lo"].get<std::string>() << ","
        << result["residual_hi"].get<std::string>() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact closure solver for tower maps, bar-resolution cohomology and integer counterexamples"};
  app.require_subcommand(1);
  app.set_version_flag("--version", autoclose::cli::kToolVersion);
  Flags flags;
  auto* solve = app.add_subcommand("solve", "Construct a preimage certificate for a tower map");
  auto* cohom = app.add_subcommand("cohom", "Cohomology dimensions, cocycle checks and coboundary solving");
  auto* counter = app.add_subcommand("counterexample", "Integer band obstruction and density demo");
  auto* verify = app.add_subcommand("verify", "Re-check a certificate emitted by solve or cohom");
  for (auto* cmd : {solve, cohom, counter, verify}) add_common(cmd, flags);
  counter->add_option("--which", flags.which, "example1 or example2")->check(CLI::IsMember({"example1", "example2"}));
  counter->add_option("--q", flags.q, "Comma-separated q; a trailing ',...' repeats the pattern");
  counter->add_option("--t", flags.t, "Target t for example2");
  counter->add_option("--eps", flags.eps, "Tolerance for example2");
  counter->add_option("--bound", flags.bound, "Search bound on |m|, |n| for example2");
  counter->add_option("--csv", flags.csv, "Write a CSV of the per-level table");
  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  autoclose::cli::Report report;
  try {
    json doc = json::object();
    const bool from_stdin = flags.input.empty() || flags.input == "-";
    if (!(command == "counterexample" && flags.input.empty())) {
      std::string text;
      if (from_stdin) {
        text = read_all(std::cin);
      } else {
        std::ifstream in(flags.input);
        if (!in) throw autoclose::cli::InputError("/", "cannot open " + flags.input);
        text = read_all(in);
      }
      try {
        doc = json::parse(text);
      } catch (const json::parse_error& e) {
        throw autoclose::cli::InputError("/", std::string("malformed JSON: ") + e.what());
      }
      if (!doc.is_object()) throw autoclose::cli::InputError("/", "expected a JSON object");
    }
    if (command == "verify" && (!doc.contains("command") || doc.contains("problem"))) {
      // A bare solve report is accepted as the verify payload.
      json wrapped{{"command", "verify"}, {"payload", doc}};
      doc = wrapped;
    }
    if (!doc.contains("command")) doc["command"] = command;
    if (doc["command"] != command) {
      throw autoclose::cli::InputError("/command", "document is for " + doc["command"].dump() + " but \"" + command + "\" was requested");
    }
    if (flags.depth) doc["depth"] = *flags.depth;
    if (flags.field) doc["field"] = *flags.field;
    if (flags.seed) doc["seed"] = *flags.seed;
    if (flags.window) doc["window"] = *flags.window;
    if (command == "counterexample") {
      if (!doc.contains("field")) doc["field"] = "z";
      json& payload = doc["payload"];
      if (payload.is_null()) payload = json::object();
      if (flags.which) payload["which"] = *flags.which;
      if (flags.q) payload["q"] = *flags.q;
      if (flags.t) payload["t"] = *flags.t;
      if (flags.eps) payload["eps"] = *flags.eps;
      if (flags.bound) payload["bound"] = *flags.bound;
    }
    autoclose::cli::ProblemDocument problem = autoclose::cli::parse_problem(doc);
    report = autoclose::cli::run(problem);
    if (!flags.csv.empty() && report.exit_code != autoclose::cli::kInputError) write_csv(flags.csv, report.result);
  } catch (const autoclose::cli::InputError& e) {
    report = autoclose::cli::input_error_report(command, e.message(), e.path());
  } catch (const std::exception& e) {
    report = autoclose::cli::input_error_report(command, e.what(), "/");
  }
  std::cout << report.body().dump(2) << "\n";
  std::cerr << report.human;
  return report.exit_code;
}
