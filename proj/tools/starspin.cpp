#include <array>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "starspin/checks.hpp"
#include "starspin/demos.hpp"
#include "starspin/errors.hpp"
#include "starspin/expr.hpp"
#include "starspin/io.hpp"

namespace {

std::array<double, 3> parse_field(const std::string& text) {
  std::array<double, 3> b{};
  size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const size_t comma = text.find(',', start);
    const bool last = i == 2;
    if (last != (comma == std::string::npos))
      throw CLI::ValidationError("--B", "expected three comma-separated values");
    const std::string part =
        text.substr(start, last ? std::string::npos : comma - start);
    size_t used = 0;
    try {
      b[i] = std::stod(part, &used);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--B", "bad number '" + part + "'");
    }
    if (used != part.size())
      throw CLI::ValidationError("--B", "bad number '" + part + "'");
    start = comma + 1;
  }
  return b;
}

int run_eval(const std::vector<std::string>& lets, const std::string& expr,
             bool as_json) {
  std::vector<std::string> sources;
  std::vector<std::pair<std::string, std::string>> bindings;
  for (const std::string& let : lets) {
    const size_t eq = let.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --let needs the form NAME=EXPR, got '" << let
                << "'\n";
      return 2;
    }
    bindings.emplace_back(let.substr(0, eq), let.substr(eq + 1));
    sources.push_back(bindings.back().second);
  }
  sources.push_back(expr);
  starspin::Session session(sources);
  for (const auto& [name, source] : bindings) session.let(name, source);
  const starspin::Multivector value = session.eval(expr);
  if (as_json)
    std::cout << starspin::to_json(value).dump() << '\n';
  else
    std::cout << starspin::to_canonical(value) << '\n';
  return 0;
}

int run_checks_command() {
  bool all_pass = true;
  int passed = 0;
  const std::vector<starspin::CheckResult> results = starspin::run_all_checks();
  for (const starspin::CheckResult& r : results) {
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-62s worst=%.3e tol=%.0e",
                  r.pass ? "ok" : "FAIL", r.name.c_str(), r.worst, r.tol);
    std::cout << line << '\n';
    all_pass = all_pass && r.pass;
    passed += r.pass ? 1 : 0;
  }
  std::cout << passed << '/' << results.size() << " suites passed\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford star-product calculator for spin systems"};
  app.require_subcommand(1);

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate an expression and print it");
  std::string expr;
  bool as_json = false;
  std::vector<std::string> lets;
  eval_cmd->add_option("expr", expr, "expression to evaluate")->required();
  eval_cmd->add_flag("--json", as_json, "print the blade-to-coefficient map");
  eval_cmd->add_option("--let", lets,
                       "bind NAME=EXPR before evaluating (repeatable)");

  CLI::App* demo_cmd = app.add_subcommand("demo", "print a worked table");
  demo_cmd->require_subcommand(1);
  CLI::App* precession_cmd =
      demo_cmd->add_subcommand("precession", "generator rotation over a period");
  double omega = 1.0;
  int steps = 16;
  precession_cmd->add_option("--omega", omega, "rotation frequency");
  precession_cmd->add_option("--steps", steps, "rows per period");
  CLI::App* projectors_cmd =
      demo_cmd->add_subcommand("projectors", "level projector identities");
  CLI::App* landau_cmd =
      demo_cmd->add_subcommand("landau", "charged particle in a constant field");
  std::string field_text = "0,0,1";
  double charge = 1.0;
  double mass = 1.0;
  landau_cmd->add_option("--B", field_text, "field as bx,by,bz");
  landau_cmd->add_option("--e", charge, "charge");
  landau_cmd->add_option("--m", mass, "mass");
  CLI::App* path_cmd = demo_cmd->add_subcommand(
      "path-integral", "sliced propagator convergence table");
  int slices = 4;
  path_cmd->add_option("--slices", slices, "largest slice count");

  CLI::App* check_cmd =
      app.add_subcommand("check", "run the verification suites");
  std::string target;
  check_cmd->add_option("target", target, "which suites to run ('all')")
      ->required();

  try {
    app.parse(argc, argv);
    if (landau_cmd->parsed()) parse_field(field_text);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval_cmd->parsed()) return run_eval(lets, expr, as_json);
    if (precession_cmd->parsed()) {
      std::cout << starspin::demo_precession(omega, steps);
      return 0;
    }
    if (projectors_cmd->parsed()) {
      std::cout << starspin::demo_projectors();
      return 0;
    }
    if (landau_cmd->parsed()) {
      std::cout << starspin::demo_landau(parse_field(field_text), charge, mass);
      return 0;
    }
    if (path_cmd->parsed()) {
      std::cout << starspin::demo_path_integral(slices);
      return 0;
    }
    if (check_cmd->parsed()) {
      if (target != "all") {
        std::cerr << "error: unknown check target '" << target
                  << "', expected 'all'\n";
        return 2;
      }
      return run_checks_command();
    }
  } catch (const starspin::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
