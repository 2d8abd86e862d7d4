// Command-line front end: single-point bound evaluation, sweeps over the
// common link capacity C, CSV emission, and gnuplot script generation.
//
// Exit codes: 0 success, 1 usage or input error, 2 internal invariant
// violation (indicates an optimizer bug, not bad input).

#include <algorithm>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "diamond/bounds.hpp"
#include "diamond/core_model.hpp"
#include "diamond/mimo_bc.hpp"
#include "diamond/oracle.hpp"
#include "diamond/sweep.hpp"

namespace {

struct ChannelFlags {
  double a = 0.0;
  double b = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--a", a, "gain of user 2 at relay 1")->required();
    cmd->add_option("--b", b, "gain of user 1 at relay 2")->required();
    cmd->add_option("--p1", p1, "power of user 1")->required();
    cmd->add_option("--p2", p2, "power of user 2")->required();
  }
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::pair<std::string, std::string>> parse_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read config file: " + path);
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

// Pulls `--config PATH` out of the argument list and splices the file's
// key = value entries in as flags. Flags given on the command line keep
// precedence: a key is injected only when its flag is absent.
std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::string path;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw std::invalid_argument("--config requires a path");
      }
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      out.push_back(args[i]);
    }
  }
  if (path.empty()) return out;
  if (out.empty()) {
    throw std::invalid_argument("--config requires a subcommand");
  }

  static const std::map<std::string, std::set<std::string>> kAllowedKeys = {
      {"eval", {"a", "b", "p1", "p2", "c1", "c2", "tol"}},
      {"sweep",
       {"a", "b", "p1", "p2", "c-min", "c-max", "step", "out", "tol"}},
      {"plot", {"csv", "out"}},
  };
  const auto allowed = kAllowedKeys.find(out[0]);
  if (allowed == kAllowedKeys.end()) {
    throw std::invalid_argument("--config is not supported for '" + out[0] +
                                "'");
  }
  for (const auto& [key, value] : parse_config_file(path)) {
    if (allowed->second.count(key) == 0) {
      throw std::invalid_argument("unknown config key '" + key + "' for '" +
                                  out[0] + "'");
    }
    const std::string flag = "--" + key;
    const bool given_on_cli =
        std::any_of(out.begin(), out.end(), [&flag](const std::string& s) {
          return s == flag || s.rfind(flag + "=", 0) == 0;
        });
    if (!given_on_cli) {
      out.push_back(flag);
      out.push_back(value);
    }
  }
  return out;
}

int run(const std::vector<std::string>& raw_args) {
  CLI::App app{"upper bounds on the sum capacity of the two-user Gaussian "
               "diamond channel"};
  app.name("diamond");
  app.require_subcommand(1);
  app.footer("Each subcommand also accepts --config PATH: a plain\n"
             "key = value file supplying defaults; flags override it.");

  // --- eval ---------------------------------------------------------------
  auto* eval_cmd =
      app.add_subcommand("eval", "evaluate all bounds at one configuration");
  ChannelFlags eval_ch;
  double eval_c1 = 0.0, eval_c2 = 0.0, eval_tol = 1e-4;
  eval_ch.add_to(eval_cmd);
  eval_cmd->add_option("--c1", eval_c1, "capacity of link 1")->required();
  eval_cmd->add_option("--c2", eval_c2, "capacity of link 2")->required();
  eval_cmd->add_option("--tol", eval_tol, "accuracy target in bits");

  // --- sweep --------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "sweep the common link capacity C1 = C2 = C and write CSV");
  ChannelFlags sweep_ch;
  double c_min = 0.0, c_max = 0.0, c_step = 0.0, sweep_tol = 1e-4;
  std::string sweep_out;
  sweep_ch.add_to(sweep_cmd);
  sweep_cmd->add_option("--c-min", c_min, "first C value")->required();
  sweep_cmd->add_option("--c-max", c_max, "last C value")->required();
  sweep_cmd->add_option("--step", c_step, "C increment")->required();
  sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();
  sweep_cmd->add_option("--tol", sweep_tol, "accuracy target in bits");

  // --- plot ---------------------------------------------------------------
  auto* plot_cmd =
      app.add_subcommand("plot", "generate a gnuplot script for a sweep CSV");
  std::string plot_csv, plot_out;
  plot_cmd->add_option("--csv", plot_csv, "input CSV path")->required();
  plot_cmd->add_option("--out", plot_out, "output script path")->required();

  // --- oracle (hidden) ----------------------------------------------------
  auto* oracle_cmd =
      app.add_subcommand("oracle", "brute-force reference computations");
  oracle_cmd->group("");  // hidden from help
  oracle_cmd->require_subcommand(1);

  auto* gs_cmd = oracle_cmd->add_subcommand(
      "grid-sum", "exhaustive covariance-search sum capacity");
  ChannelFlags gs_ch;
  double gs_rho = 0.0;
  int gs_ntheta = 33, gs_nq = 17;
  gs_ch.add_to(gs_cmd);
  gs_cmd->add_option("--rho", gs_rho, "input correlation")->required();
  gs_cmd->add_option("--ntheta", gs_ntheta, "angle grid size");
  gs_cmd->add_option("--nq", gs_nq, "eigenvalue grid size");

  auto* mm_cmd = oracle_cmd->add_subcommand(
      "max-min", "exhaustive maximize-min over a bound's term set");
  ChannelFlags mm_ch;
  double mm_c1 = 0.0, mm_c2 = 0.0;
  int mm_n = 20001;
  std::string mm_set = "102";
  mm_ch.add_to(mm_cmd);
  mm_cmd->add_option("--c1", mm_c1, "capacity of link 1")->required();
  mm_cmd->add_option("--c2", mm_c2, "capacity of link 2")->required();
  mm_cmd->add_option("--set", mm_set, "term set: 102, 101a or 101b")
      ->check(CLI::IsMember({"102", "101a", "101b"}));
  mm_cmd->add_option("--n", mm_n, "grid size");

  auto* n3_cmd = oracle_cmd->add_subcommand(
      "n3", "residual of the averaged-bound substitution identity");
  ChannelFlags n3_ch;
  double n3_rho = 0.0;
  n3_ch.add_to(n3_cmd);
  n3_cmd->add_option("--rho", n3_rho, "input correlation")->required();

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*eval_cmd) {
    const diamond::ChannelConfig cfg{eval_ch.a, eval_ch.b, eval_ch.p1,
                                     eval_ch.p2, eval_c1,  eval_c2};
    const auto opts = diamond::OptimizerOptions::with_tolerance(eval_tol);
    const diamond::BoundReport rep = diamond::eval_point(cfg, opts);
    std::cout << diamond::format_report_text(cfg, rep);
    return 0;
  }

  if (*sweep_cmd) {
    diamond::SweepSpec spec;
    spec.base = {sweep_ch.a, sweep_ch.b, sweep_ch.p1,
                 sweep_ch.p2, c_min,      c_min};
    spec.c_min = c_min;
    spec.c_max = c_max;
    spec.step = c_step;
    const auto opts = diamond::OptimizerOptions::with_tolerance(sweep_tol);
    const auto rows = diamond::run_sweep(spec, opts);
    diamond::write_csv(rows, sweep_out);
    std::cout << "wrote " << rows.size() << " rows to " << sweep_out << "\n";
    return 0;
  }

  if (*plot_cmd) {
    diamond::emit_plot_script(plot_csv, plot_out);
    std::cout << "wrote plot script to " << plot_out << "\n";
    return 0;
  }

  if (*gs_cmd) {
    const diamond::ChannelConfig cfg{gs_ch.a, gs_ch.b, gs_ch.p1,
                                     gs_ch.p2, 0.0,    0.0};
    const double bits =
        diamond::grid_sum_capacity(diamond::Rho(gs_rho), cfg, gs_ntheta, gs_nq);
    std::printf("%.12f\n", bits);
    return 0;
  }

  if (*mm_cmd) {
    const diamond::ChannelConfig cfg{mm_ch.a, mm_ch.b, mm_ch.p1,
                                     mm_ch.p2, mm_c1,  mm_c2};
    const diamond::OptimizerOptions opts;
    diamond::SumCapacityCache cm(cfg, opts);
    std::vector<diamond::RhoFn> fns;
    diamond::Interval domain(-1.0, 1.0);
    if (mm_set == "102") {
      fns = diamond::theorem1_terms_102(cfg, cm);
    } else {
      fns = diamond::theorem1_terms_101(cfg, cm);
      const double x = mm_set == "101a" ? cfg.a : cfg.b;
      domain = diamond::interval_a_x(x, cfg);
    }
    const diamond::MaxMinResult res = diamond::grid_max_min(fns, domain, mm_n);
    std::printf("%.12f %.12f\n", res.value, static_cast<double>(res.argmax));
    return 0;
  }

  if (*n3_cmd) {
    const diamond::ChannelConfig cfg{n3_ch.a, n3_ch.b, n3_ch.p1,
                                     n3_ch.p2, 0.0,    0.0};
    const double residual =
        diamond::n3_identity_residual(diamond::Rho(n3_rho), cfg);
    std::printf("%.12e\n", residual);
    return 0;
  }

  return 1;  // unreachable: require_subcommand(1)
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const diamond::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
