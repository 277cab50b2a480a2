#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "entrolab/errors.hpp"
#include "entrolab/scenario.hpp"

namespace fs = std::filesystem;
using entrolab::Error;
using entrolab::ErrorCode;
using entrolab::json;
using entrolab::RunOverrides;
using entrolab::ScenarioResult;

namespace {

bool is_budget(ErrorCode c) {
  return c == ErrorCode::closure_budget_exceeded ||
         c == ErrorCode::product_budget_exceeded ||
         c == ErrorCode::order_budget_exceeded;
}

void write_text(const std::string& text, const std::optional<std::string>& cli_out,
                const std::optional<std::string>& scen_out) {
  std::optional<std::string> path = cli_out ? cli_out : scen_out;
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream o(*path);
  if (!o) entrolab::fail(ErrorCode::schema_error, "cannot write " + *path);
  o << text;
}

int exit_for(const std::string& status, bool strict) {
  if (status == "pass") return 0;
  if (status == "inconclusive") return strict ? 2 : 3;
  return 2;  // violation | mismatch | error
}

int run_single(const std::string& path, const RunOverrides& ov,
               const std::optional<std::string>& out, bool strict,
               const std::string& subcommand) {
  ScenarioResult res = entrolab::run_scenario_file(path, ov);
  bool mode_ok = (subcommand == "entropy" && res.mode == "entropy") ||
                 (subcommand == "ladder" && res.mode == "ladder") ||
                 (subcommand == "series" && res.mode == "series") ||
                 (subcommand == "at-check" &&
                  (res.mode == "at" || res.mode == "chain")) ||
                 (subcommand == "dagger-check" && res.mode == "dagger");
  if (!mode_ok) {
    std::cerr << "error: scenario mode '" << res.mode
              << "' does not fit subcommand '" << subcommand << "'\n";
    return 1;
  }
  if (res.mode == "entropy")
    write_text(res.csv, out, res.out_path);
  else
    write_text(res.report.dump(2) + "\n", out, res.out_path);
  for (const std::string& m : res.mismatches)
    std::cerr << "expect mismatch: " << m << "\n";
  if (res.status != "pass") std::cerr << "status: " << res.status << "\n";
  return exit_for(res.status, strict);
}

int run_selftest(const std::string& dir, const RunOverrides& ov,
                 const std::optional<std::string>& out, bool strict) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json")
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty())
    entrolab::fail(ErrorCode::schema_error, "no scenarios in " + dir);

  json entries = json::array();
  int passed = 0;
  bool any_fail = false, any_inconclusive = false;
  for (const fs::path& f : files) {
    json entry;
    entry["file"] = f.filename().string();
    try {
      ScenarioResult res = entrolab::run_scenario_file(f.string(), ov);
      entry["name"] = res.name;
      entry["mode"] = res.mode;
      entry["status"] = res.status;
      entry["report"] = res.report;
      if (!res.mismatches.empty()) entry["mismatches"] = res.mismatches;
      if (res.status == "pass")
        ++passed;
      else if (res.status == "inconclusive")
        any_inconclusive = true;
      else
        any_fail = true;
    } catch (const Error& e) {
      entry["status"] = is_budget(e.code()) ? "inconclusive" : "error";
      entry["report"] = {{"error", e.what()},
                         {"code", entrolab::error_code_name(e.code())}};
      (is_budget(e.code()) ? any_inconclusive : any_fail) = true;
    }
    entries.push_back(std::move(entry));
  }
  json summary;
  summary["scenarios"] = std::move(entries);
  summary["total"] = files.size();
  summary["passed"] = passed;
  write_text(summary.dump(2) + "\n", out, std::nullopt);
  if (any_fail) return 2;
  if (any_inconclusive) return strict ? 2 : 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "entrolab: growth of trajectories T_n = F * phi(F) * ... * phi^{n-1}(F) "
      "in locally finite groups — entropy tables, additivity checks, counting "
      "certificates"};
  app.require_subcommand(1);
  app.footer(
      "Environment: ENTROLAB_THREADS caps the worker count (default: hardware "
      "concurrency).\nExit codes: 0 pass, 1 usage error, 2 violation or "
      "mismatch, 3 inconclusive (budget).");

  std::string scenario_path, scenarios_dir;
  RunOverrides ov;
  std::optional<std::string> out;
  bool strict = false;

  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--n-max", ov.n_max, "override scenario n_max");
    sc->add_option("--window", ov.window, "override stabilization window");
    sc->add_option("--product-budget", ov.product_budget,
                   "max trajectory set size");
    sc->add_option("--closure-budget", ov.closure_budget,
                   "max generated subgroup size");
    sc->add_option("--seed", ov.seed, "seed for the sampled verifications");
    sc->add_option("--out", out, "write the report here instead of stdout");
    sc->add_flag("--strict-inconclusive", strict,
                 "treat inconclusive results as failures (exit 2, not 3)");
  };

  const char* single_cmds[] = {"entropy", "ladder", "series", "at-check",
                               "dagger-check"};
  const char* single_help[] = {
      "trajectory growth table (CSV) for one scenario",
      "entropy along an ascending ladder of finite subgroups",
      "central/derived series report for a finite-family group",
      "additivity check h(phi) = h(phi|H) + h(induced) on a scenario",
      "counting certificate |T_n(phi,F)| <= |T_n(quot)|*|T_n(kernel)|"};
  for (int i = 0; i < 5; ++i) {
    CLI::App* sc = app.add_subcommand(single_cmds[i], single_help[i]);
    sc->add_option("scenario", scenario_path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    add_common(sc);
  }
  CLI::App* st =
      app.add_subcommand("selftest", "run a scenario directory, emit summary");
  st->add_option("dir", scenarios_dir, "directory of scenario JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  add_common(st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help/version exit cleanly; real usage errors exit 1
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub->get_name() == "selftest")
      return run_selftest(scenarios_dir, ov, out, strict);
    return run_single(scenario_path, ov, out, strict, sub->get_name());
  } catch (const Error& e) {
    std::cerr << "error [" << entrolab::error_code_name(e.code())
              << "]: " << e.what() << "\n";
    return is_budget(e.code()) ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
