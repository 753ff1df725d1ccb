// zevrpp: run cases, sweep parameters, verify oracles, re-emit reports, fit surrogates.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zevrpp/app/report.hpp"
#include "zevrpp/app/run.hpp"
#include "zevrpp/fit/fit_io.hpp"
#include "zevrpp/oracles/suite.hpp"

namespace fs = std::filesystem;
using namespace zevrpp;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes the report set for `format` into dir, or to stdout when dir is empty.
void emit(const std::vector<model::FleetSolution>& all, const std::string& format, const std::string& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  if (format == "json") {
    files.emplace_back("solutions.json", app::solutions_to_json(all));
  } else if (format == "csv") {
    files.emplace_back("design.csv", app::design_csv(all));
    files.emplace_back("speeds.csv", app::speeds_csv(all));
    files.emplace_back("chargers.csv", app::chargers_csv(all));
    files.emplace_back("costs.csv", app::costs_csv(all));
  } else {
    files.emplace_back("report.txt", app::table_text(all));
  }
  for (auto& [name, text] : files) {
    if (dir.empty()) {
      if (files.size() > 1) fmt::print("# {}\n", name);
      fmt::print("{}", text);
    } else {
      write_file(fs::path(dir) / name, text);
    }
  }
}

model::Scenario load(const std::string& path, const std::string& id, const std::vector<std::string>& overrides) {
  auto sc = model::load_scenario(path, id);
  for (auto& o : overrides) {
    auto [name, v] = app::parse_override(o);
    try {
      app::apply_override(sc, name, v);
    } catch (const std::out_of_range& e) {
      throw InputError(fmt::format("--param {}: {}", o, e.what()));
    }
  }
  sc.validate();
  return sc;
}

std::pair<double, double> parse_range(const std::string& text) {
  auto sep = text.find_first_of(":,");
  if (sep == std::string::npos) throw InputError("--range expects lo:hi, got '" + text + "'");
  try {
    size_t a = 0, b = 0;
    auto lo_s = text.substr(0, sep), hi_s = text.substr(sep + 1);
    double lo = std::stod(lo_s, &a), hi = std::stod(hi_s, &b);
    if (a != lo_s.size() || b != hi_s.size()) throw std::invalid_argument("trailing text");
    return {lo, hi};
  } catch (const std::exception&) {
    throw InputError("--range expects lo:hi, got '" + text + "'");
  }
}

int cmd_run(const std::string& scenario, std::vector<std::string> cases, const std::vector<std::string>& params,
            const std::string& format, const std::string& out) {
  if (cases.empty()) cases = model::list_cases(scenario);
  app::FitsCache fits;
  std::vector<model::FleetSolution> solved;
  int code = app::kOptimal;
  for (auto& id : cases) {
    auto sc = load(scenario, id, params);
    auto r = app::run_case(sc, fits);
    if (r.fleet) {
      fmt::print(stderr, "case {}: {}, {:.6g} EUR/yr, {} nodes, {:.2f} s\n", id, gp::to_string(r.status),
                 r.fleet->objective, r.fleet->bnb_nodes, r.seconds);
      solved.push_back(*r.fleet);
    } else {
      fmt::print(stderr, "case {}: {}{}\n", id,
                 r.code == app::kValidationFailure ? "validation failure" : gp::to_string(r.status),
                 r.error.empty() ? "" : ": " + r.error);
    }
    code = std::max(code, static_cast<int>(r.code));
  }
  if (!solved.empty()) emit(solved, format, out);
  return code;
}

int cmd_sweep(const std::string& scenario, std::string id, const std::vector<std::string>& params,
              const std::string& param, const std::string& range, int steps, int threads, const std::string& format,
              const std::string& out) {
  if (id.empty()) id = model::list_cases(scenario).at(0);
  auto sc = load(scenario, id, params);
  auto [lo, hi] = parse_range(range);
  app::FitsCache fits;
  std::vector<app::SweepPoint> pts;
  try {
    pts = app::sweep(sc, param, lo, hi, steps, threads, fits);
  } catch (const std::out_of_range& e) {
    throw InputError(fmt::format("--param {}: {}", param, e.what()));
  }
  std::string text;
  if (format == "json") {
    text = "[\n";
    for (size_t k = 0; k < pts.size(); ++k) {
      auto& o = pts[k].outcome;
      text += fmt::format("{{\"{}\": {}, \"status\": \"{}\", \"solution\": {}}}{}\n", param, pts[k].value,
                          gp::to_string(o.status), o.fleet ? app::to_json(*o.fleet) : "null",
                          k + 1 < pts.size() ? "," : "");
    }
    text += "]\n";
  } else {
    text = app::sweep_csv(param, pts);
  }
  if (out.empty())
    fmt::print("{}", text);
  else
    write_file(out, text);
  int failed = 0;
  for (auto& p : pts) failed += p.outcome.code != app::kOptimal;
  fmt::print(stderr, "{} points, {} not optimal\n", pts.size(), failed);
  return app::kOptimal;  // failed points are marked in the output
}

int cmd_verify(const std::string& data, bool quick, const std::string& format, const std::string& out) {
  oracles::SuiteOptions opt;
  opt.data_dir = data;
  if (quick) {
    opt.baltic = false;
    opt.migp_instances = 5;
  }
  auto results = oracles::run_suite(opt);
  std::string text;
  int unexpected = 0;
  for (auto& r : results) unexpected += !r.pass() && r.known.empty();
  if (format == "csv") {
    text = "criterion,check,value,limit,pass\n";
    for (auto& r : results)
      for (auto& c : r.checks)
        text += fmt::format("{},\"{}\",{:.6g},{:.6g},{}\n", r.id, c.name, c.value, c.limit, c.pass ? 1 : 0);
  } else if (format == "json") {
    text = "[\n";
    for (size_t i = 0; i < results.size(); ++i) {
      auto& r = results[i];
      text += fmt::format("  {{\"criterion\": \"{}\", \"title\": \"{}\", \"pass\": {}, \"known\": \"{}\", \"checks\": [",
                          r.id, r.title, r.pass(), r.known);
      for (size_t k = 0; k < r.checks.size(); ++k) {
        auto& c = r.checks[k];
        text += fmt::format("{}\n    {{\"name\": \"{}\", \"value\": {:.17g}, \"limit\": {:.17g}, \"pass\": {}}}",
                            k ? "," : "", c.name, c.value, c.limit, c.pass);
      }
      text += fmt::format("]}}{}\n", i + 1 < results.size() ? "," : "");
    }
    text += "]\n";
  } else {
    for (auto& r : results) {
      text += fmt::format("{:<4}{:<6}{}\n", r.id, r.pass() ? "PASS" : r.known.empty() ? "FAIL" : "KNOWN", r.title);
      for (auto& c : r.checks)
        text += fmt::format("      {:<5}{} = {:.6g} (limit {:.3g})\n", c.pass ? "ok" : "FAIL", c.name, c.value,
                            c.limit);
    }
  }
  if (out.empty())
    fmt::print("{}", text);
  else
    write_file(out, text);
  return unexpected ? app::kValidationFailure : app::kOptimal;
}

int cmd_report(const std::string& in, const std::string& format, const std::string& out) {
  std::vector<model::FleetSolution> all;
  try {
    all = app::solutions_from_json(read_file(in));
    for (auto& s : all) app::check_report(s);
  } catch (const std::invalid_argument& e) {
    throw InputError(fmt::format("{}: {}", in, e.what()));
  }
  emit(all, format, out);
  return app::kOptimal;
}

int cmd_fit(const std::string& scenario, const std::string& out) {
  auto sc = model::load_scenario(scenario, model::list_cases(scenario).at(0));
  auto fits = propulsion::build_resistance_fits(sc.resistance, sc.prm.beta);
  fit::save_fits(out, fits.table());
  fmt::print(stderr, "C_R^std: K={} log RMSE {:.3e} on Fr [{}, {}]\n", fits.cr_std.K, fits.cr_std.rmse_log,
             fits.cr_lo, fits.cr_hi);
  fmt::print(stderr, "rho^rho: K={} log RMSE {:.3e} on [{:.4f}, {:.4f}]\n", fits.crcrit.K, fits.crcrit.rmse_log,
             fits.rho_lo, fits.rho_hi);
  return app::kOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Zero-emission vessel route planning: fleet design, frequencies, speeds and chargers"};
  cli.require_subcommand(1);
  std::string scenario, format = "table", out, in, param, range, data = ZEVRPP_DATA_DIR;
  std::string one_case;
  std::vector<std::string> cases, params;
  int steps = 5, threads = app::default_threads();
  bool quick = false;
  const std::vector<std::string> formats{"csv", "json", "table"};

  auto* run = cli.add_subcommand("run", "solve cases and write reports");
  run->add_option("--scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--case", cases, "case id (repeatable, default all)");
  run->add_option("--param", params, "parameter override name=value (repeatable)");
  run->add_option("--format", format)->check(CLI::IsMember(formats));
  run->add_option("--out", out, "output directory (default stdout)");

  auto* sw = cli.add_subcommand("sweep", "solve one case over a parameter grid");
  sw->add_option("--scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
  sw->add_option("--case", one_case, "case id (default the first)");
  sw->add_option("--param", param, "parameter to sweep, or u_min")->required();
  sw->add_option("--set", params, "fixed override name=value (repeatable)");
  sw->add_option("--range", range, "lo:hi")->required();
  sw->add_option("--steps", steps, "grid points")->check(CLI::Range(2, 10000));
  sw->add_option("--threads", threads, "workers (default ZEVRPP_THREADS or all cores)")->check(CLI::PositiveNumber);
  sw->add_option("--format", format)->check(CLI::IsMember(std::vector<std::string>{"csv", "json"}));
  sw->add_option("--out", out, "output file (default stdout)");

  auto* ver = cli.add_subcommand("verify", "run the oracle suite");
  ver->add_option("--data", data, "data directory")->check(CLI::ExistingDirectory);
  ver->add_flag("--quick", quick, "skip the Baltic solves and use fewer random instances");
  ver->add_option("--format", format)->check(CLI::IsMember(formats));
  ver->add_option("--out", out, "output file (default stdout)");

  auto* rep = cli.add_subcommand("report", "re-emit reports from a solutions.json");
  rep->add_option("--in", in, "solutions.json")->required()->check(CLI::ExistingFile);
  rep->add_option("--format", format)->check(CLI::IsMember(formats));
  rep->add_option("--out", out, "output directory (default stdout)");

  auto* fit = cli.add_subcommand("fit", "fit the resistance surrogates for a scenario");
  fit->add_option("--scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);
  fit->add_option("--out", out, "fit file")->required();

  auto* prm = cli.add_subcommand("params", "print the parameter defaults with provenance");

  auto* ls = cli.add_subcommand("cases", "list the cases of a scenario");
  ls->add_option("--scenario", scenario, "scenario file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(cli, argc, argv);
  if (sw->parsed() && format == "table") format = "csv";

  try {
    if (run->parsed()) return cmd_run(scenario, cases, params, format, out);
    if (sw->parsed()) return cmd_sweep(scenario, one_case, params, param, range, steps, threads, format, out);
    if (ver->parsed()) return cmd_verify(data, quick, format, out);
    if (rep->parsed()) return cmd_report(in, format, out);
    if (fit->parsed()) return cmd_fit(scenario, out);
    if (prm->parsed()) {
      fmt::print("{}", model::params_ini(model::ModelParams{}));
      return 0;
    }
    if (ls->parsed()) {
      for (auto& c : model::list_cases(scenario)) fmt::print("{}\n", c);
      return 0;
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return app::kInputError;
  }
  return 0;
}
