// Command-line front end; talks to the solver only through the C interface.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nonalter/nonalter.h"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitFailure = 1;

struct Flags {
  std::string problem;
  double tol = 1e-7;
  int grid_res = 401;
  std::vector<double> bounds{-10.0, 10.0};
  double eps = 1e-6;
  std::uint64_t seed = 0;
  long long samples = 100000;
  std::string format = "text";
  bool trace = false;
  int assumption = 0;
  std::string pattern = "gt,ge";
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("problem", f.problem, "Problem file (JSON)")->required();
  cmd->add_option("--tol", f.tol, "Residual and value tolerance")->capture_default_str();
  cmd->add_option("--grid-res", f.grid_res, "Oracle grid points per axis")->capture_default_str();
  cmd->add_option("--bounds", f.bounds, "Search box lo hi")->expected(2)->capture_default_str();
  cmd->add_option("--eps", f.eps, "Oracle feasibility slack and witness margin")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Seed for sampled searches")->capture_default_str();
  cmd->add_option("--samples", f.samples, "Random samples for witness search")->capture_default_str();
  cmd->add_option("--format", f.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_flag("--trace", f.trace, "Record the dual search trace");
}

int fail(na_status s) {
  std::cerr << "error: " << na_status_name(s) << ": " << na_last_error() << "\n";
  return s == NA_ERR_PARSE || s == NA_ERR_DIMENSION || s == NA_ERR_ASYMMETRIC ? kExitUsage : kExitFailure;
}

bool parse_pattern(const std::string& text, na_sign& g, na_sign& h) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return false;
  auto one = [](const std::string& s, na_sign& out) {
    if (s == "gt") out = NA_SIGN_STRICT;
    else if (s == "ge") out = NA_SIGN_WEAK;
    else return false;
    return true;
  };
  return one(text.substr(0, comma), g) && one(text.substr(comma + 1), h);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-constraint quadratic programs: classification, solution and brute-force checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(na_version()));
  Flags flags;
  std::vector<std::pair<std::string, CLI::App*>> cmds;
  for (const char* name : {"classify", "solve", "oracle", "reduce", "check", "witness"}) {
    static const std::map<std::string, std::string> kHelp = {
        {"classify", "Check the five assumptions and report the problem class"},
        {"solve", "Compute the optimal value and an optimal point"},
        {"oracle", "Brute-force grid minimum (dimension at most 3)"},
        {"reduce", "Canonical forms and the reduced problem"},
        {"check", "Run a single assumption checker"},
        {"witness", "Search for a point with the given sign pattern of (g, h)"}};
    CLI::App* cmd = app.add_subcommand(name, kHelp.at(name));
    add_common(cmd, flags);
    cmds.emplace_back(name, cmd);
  }
  cmds[4].second->add_option("--assumption", flags.assumption, "Assumption number 1-5")
      ->required()
      ->check(CLI::Range(1, 5));
  cmds[5].second->add_option("--pattern", flags.pattern, "Sign pattern: gt|ge for g, then h")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::string command;
  for (const auto& [name, cmd] : cmds) {
    if (cmd->parsed()) command = name;
  }

  na_options* opt = na_options_create();
  na_status s = NA_OK;
  if (s == NA_OK) s = na_options_set_tol(opt, flags.tol);
  if (s == NA_OK) s = na_options_set_grid_res(opt, flags.grid_res);
  if (s == NA_OK) s = na_options_set_bounds(opt, flags.bounds[0], flags.bounds[1]);
  if (s == NA_OK) s = na_options_set_eps(opt, flags.eps);
  if (s == NA_OK) s = na_options_set_seed(opt, flags.seed);
  if (s == NA_OK) s = na_options_set_samples(opt, flags.samples);
  if (s == NA_OK) s = na_options_set_trace(opt, flags.trace ? 1 : 0);
  if (s != NA_OK) {
    na_options_free(opt);
    std::cerr << "error: " << na_last_error() << "\n";
    return kExitUsage;
  }

  na_problem* prob = nullptr;
  s = na_problem_load(flags.problem.c_str(), &prob);
  if (s != NA_OK) {
    na_options_free(opt);
    return fail(s);
  }
  for (size_t i = 0; i < na_problem_warning_count(prob); ++i) {
    std::cerr << "warning: " << na_problem_warning(prob, i) << "\n";
  }

  na_report* rep = nullptr;
  if (command == "classify") {
    s = na_classify(prob, opt, &rep);
  } else if (command == "solve") {
    s = na_solve(prob, opt, &rep);
  } else if (command == "oracle") {
    s = na_oracle(prob, opt, &rep);
  } else if (command == "reduce") {
    s = na_reduce(prob, opt, &rep);
  } else if (command == "check") {
    s = na_check(prob, opt, flags.assumption, &rep);
  } else {
    na_sign gs = NA_SIGN_STRICT, hs = NA_SIGN_WEAK;
    if (!parse_pattern(flags.pattern, gs, hs)) {
      std::cerr << "error: --pattern expects two of gt|ge separated by a comma\n";
      na_problem_free(prob);
      na_options_free(opt);
      return kExitUsage;
    }
    s = na_witness(prob, opt, gs, hs, &rep);
  }
  na_problem_free(prob);
  na_options_free(opt);
  if (s != NA_OK) return fail(s);

  std::fputs(flags.format == "json" ? na_report_json(rep) : na_report_text(rep), stdout);
  for (size_t i = 0; i < na_report_warning_count(rep); ++i) {
    std::cerr << "warning: " << na_report_warning(rep, i) << "\n";
  }
  const int code = na_report_exit_code(rep);
  na_report_free(rep);
  return code;
}
