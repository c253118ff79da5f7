// rgslab: command-line runner for the randomly generated semigroup checks.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid configuration,
// 3 unexpected internal error.

#include "rgs/experiment.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
  std::string config;
  std::string group;
  std::string rep;
  std::string semigroup;
  std::string measure;
  std::string check;
  int dim = 0;
  std::string times;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double t0 = 0.0;
  bool richardson = false;
  int samples = 0;
  unsigned threads = 1;
  std::string output;
  std::string csv;
};

struct Options {
  CLI::Option* group;
  CLI::Option* rep;
  CLI::Option* semigroup;
  CLI::Option* measure;
  CLI::Option* check;
  CLI::Option* dim;
  CLI::Option* times;
  CLI::Option* budget;
  CLI::Option* seed;
  CLI::Option* tol;
  CLI::Option* t0;
  CLI::Option* richardson;
  CLI::Option* samples;
  CLI::Option* threads;
  CLI::Option* output;
  CLI::Option* csv;
};

Options add_options(CLI::App& sub, Flags& f) {
  sub.add_option("--config", f.config, "JSON config file; flags override its values");
  return {
      sub.add_option("--group", f.group, "Z2, Z3, Z2xZ2, Zn, T, Rn, SU2, SUn"),
      sub.add_option("--rep", f.rep, "character:k | defining | weyl | regular | two_sided | adjoint(<rep>)"),
      sub.add_option("--semigroup", f.semigroup,
                     "dirac_flow:x,... | compound_poisson:<rate>:<jump> | gaussian:c | brownian:c[:K]"),
      sub.add_option("--measure", f.measure, "uniform | delta(p,q) | semigroup (tomographic)"),
      sub.add_option("--check", f.check, "twirl: cptp|dual|generator; tomographic: intertwining|exhaustive|isometry|idempotence"),
      sub.add_option("--dim", f.dim, "Weyl dimension d (group Z_d x Z_d)"),
      sub.add_option("--times", f.times, "comma-separated times"),
      sub.add_option("--budget", f.budget, "sample budget N for empirical semigroups"),
      sub.add_option("--seed", f.seed, "RNG seed (default: RGS_SEED)"),
      sub.add_option("--tol", f.tol, "tolerance (command default if omitted)"),
      sub.add_option("--t0", f.t0, "generator step"),
      sub.add_flag("--richardson", f.richardson, "Richardson extrapolation for generator estimates"),
      sub.add_option("--samples", f.samples, "number of random samples"),
      sub.add_option("--threads", f.threads, "sampling threads (output does not depend on this)"),
      sub.add_option("--output", f.output, "report path (default: stdout)"),
      sub.add_option("--csv", f.csv, "CSV path for tabular output"),
  };
}

rgs::ExperimentConfig build_config(const std::string& command, const Flags& f, const Options& o) {
  rgs::ExperimentConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw rgs::ConfigError("cannot read config file '" + f.config + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw rgs::ConfigError(std::string("config file: ") + e.what());
    }
    c = rgs::config_from_json(j);
    if (!c.command.empty() && c.command != command) {
      throw rgs::ConfigError("config file is for '" + c.command + "', not '" + command + "'");
    }
  }
  c.command = command;
  if (o.group->count()) c.group = f.group;
  if (o.rep->count()) c.representation = f.rep;
  if (o.semigroup->count()) c.semigroup = f.semigroup;
  if (o.measure->count()) c.measure = f.measure;
  if (o.check->count()) c.check = f.check;
  if (o.dim->count()) c.dim = f.dim;
  if (o.times->count()) c.times = rgs::parse_times(f.times);
  if (o.budget->count()) c.budget = f.budget;
  if (o.seed->count()) c.seed = f.seed;
  if (o.tol->count()) c.tol = f.tol;
  if (o.t0->count()) c.t0 = f.t0;
  if (o.richardson->count()) c.richardson = f.richardson;
  if (o.samples->count()) c.samples = f.samples;
  if (o.threads->count()) c.threads = f.threads;
  if (o.output->count()) c.output = f.output;
  if (o.csv->count()) c.csv = f.csv;
  if (!c.seed) {
    if (const char* env = std::getenv("RGS_SEED")) {
      try {
        c.seed = std::stoull(env);
      } catch (const std::exception&) {
        throw rgs::ConfigError(std::string("RGS_SEED is not an integer: '") + env + "'");
      }
    }
  }
  return c;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rgs::ConfigError("cannot write '" + path + "'");
  out << text;
}

int fail(const std::string& kind, const std::string& message, int code) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for randomly generated operators and semigroups"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<std::pair<CLI::App*, Options>> subs;
  for (const auto& name : rgs::experiment_commands()) {
    CLI::App* sub = app.add_subcommand(name, "Exercises: " + rgs::command_identity(name));
    subs.emplace_back(sub, add_options(*sub, flags));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("config", e.what(), 2);
  }

  try {
    for (const auto& [sub, opts] : subs) {
      if (!sub->parsed()) continue;
      const rgs::ExperimentConfig config = build_config(sub->get_name(), flags, opts);
      const auto start = std::chrono::steady_clock::now();
      const rgs::ExperimentResult result = rgs::run_experiment(config);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const std::string text = result.document.dump(2) + "\n";
      const nlohmann::json timing = {{"command", config.command}, {"wall_seconds", seconds}};
      if (config.output.empty()) {
        std::cout << text;
        std::cerr << timing.dump() << '\n';
      } else {
        write_file(config.output, text);
        write_file(config.output + ".timing.json", timing.dump(2) + "\n");
      }
      if (!config.csv.empty() && !result.csv.empty()) write_file(config.csv, result.csv);
      return result.report.pass ? 0 : 1;
    }
  } catch (const rgs::ConfigError& e) {
    return fail("config", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 3);
  }
  return 2;
}
