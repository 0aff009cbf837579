#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cstirap/adiabatic.hpp"
#include "cstirap/config.hpp"
#include "cstirap/csv.hpp"
#include "cstirap/dynamics.hpp"
#include "cstirap/eigen.hpp"
#include "cstirap/sweep.hpp"

namespace {

using namespace cstirap;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> sets;
  std::string out_path;
  bool dump_config_flag = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, const std::string& default_out) {
  cmd->add_option("-c,--config", opt.config_path, "key=value config file")->required();
  cmd->add_option("-s,--set", opt.sets, "override a config key (key=value, repeatable)");
  cmd->add_option("-o,--out", opt.out_path, "output path")->default_val(default_out);
  cmd->add_flag("--dump-config", opt.dump_config_flag,
                "echo the effective config to stdout and continue");
}

RunConfig load_config(const CommonOptions& opt) {
  std::ifstream in(opt.config_path);
  if (!in) throw config_error("cannot open config file '" + opt.config_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  RunConfig config = parse_config(buffer.str());
  for (const std::string& kv : opt.sets) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw config_error("--set expects key=value, got '" + kv + "'");
    apply_setting(config, std::string_view(kv).substr(0, eq),
                  std::string_view(kv).substr(eq + 1));
  }
  validate_config(config);
  if (opt.dump_config_flag) std::cout << dump_config(config);
  return config;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw config_error("cannot open output file '" + path + "'");
  return os;
}

std::string plot_script_path(const std::string& csv_path) {
  const std::size_t dot = csv_path.rfind('.');
  const std::size_t slash = csv_path.rfind('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return csv_path.substr(0, dot) + ".gp";
  return csv_path + ".gp";
}

std::string base_name(const std::string& path) {
  const std::size_t slash = path.rfind('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

void print_conditions(const RunConfig& config) {
  const AdiabaticityReport rep =
      check_conditions(config.tau_p, config.pulses(), config.params());
  std::cerr << "adiabaticity at the pump peak:\n" << conditions_summary(rep) << "\n";
}

int cmd_simulate(const CommonOptions& opt) {
  const RunConfig config = load_config(opt);
  const Trajectory traj = propagate(config.pulses(), config.params(), config.window(),
                                    config.tolerances(), config.sample_count);
  auto os = open_out(opt.out_path);
  write_trajectory_csv(os, traj);
  print_conditions(config);
  std::cout << "simulate: " << signals_summary(signals_from(traj)) << "\n";
  return kExitOk;
}

int cmd_analytic(const CommonOptions& opt) {
  const RunConfig config = load_config(opt);
  const Trajectory traj = analytic_trajectory(config.pulses(), config.params(),
                                              config.window(), config.sample_count);
  auto os = open_out(opt.out_path);
  write_trajectory_csv(os, traj);
  std::cout << "analytic: " << signals_summary(analytic_signals(config.pulses(), config.params()))
            << "\n";
  return kExitOk;
}

int cmd_compare(const CommonOptions& opt) {
  const RunConfig config = load_config(opt);
  const Trajectory numeric = propagate(config.pulses(), config.params(), config.window(),
                                       config.tolerances(), config.sample_count);
  const Trajectory analytic = analytic_trajectory(config.pulses(), config.params(),
                                                  config.window(), config.sample_count);
  {
    auto os = open_out(opt.out_path + "_numeric.csv");
    write_trajectory_csv(os, numeric);
  }
  {
    auto os = open_out(opt.out_path + "_analytic.csv");
    write_trajectory_csv(os, analytic);
  }

  double dp1 = 0, dp2 = 0, dpc = 0, df = 0, dion = 0;
  for (std::size_t i = 0; i < numeric.samples.size(); ++i) {
    const TrajectorySample& a = numeric.samples[i];
    const TrajectorySample& b = analytic.samples[i];
    dp1 = std::max(dp1, std::fabs(a.p1 - b.p1));
    dp2 = std::max(dp2, std::fabs(a.p2 - b.p2));
    dpc = std::max(dpc, std::fabs(a.pc - b.pc));
    df = std::max(df, std::fabs(a.fluorescence - b.fluorescence));
    dion = std::max(dion, std::fabs(a.ionized - b.ionized));
  }
  const Signals sn = signals_from(numeric);
  const Signals sa = analytic_signals(config.pulses(), config.params());
  std::cout << "compare: max|dP1|=" << format_g9(dp1) << " max|dP2|=" << format_g9(dp2)
            << " max|dPc|=" << format_g9(dpc) << " max|dF|=" << format_g9(df)
            << " max|dIacc|=" << format_g9(dion)
            << " dI=" << format_g9(std::fabs(sn.ionization - sa.ionization))
            << " dF=" << format_g9(std::fabs(sn.fluorescence - sa.fluorescence)) << "\n";
  return kExitOk;
}

AxisSpec parse_axis_flag(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 4 || parts.size() > 5)
    throw config_error("axis spec must be name:min:max:count[:log], got '" + text + "'");

  const auto param = parse_sweep_parameter(parts[0]);
  if (!param) throw config_error("unknown sweep parameter '" + parts[0] + "'");

  AxisSpec axis;
  axis.parameter = *param;
  try {
    axis.min = std::stod(parts[1]);
    axis.max = std::stod(parts[2]);
    axis.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw config_error("axis spec has malformed numbers: '" + text + "'");
  }
  if (parts.size() == 5) {
    if (parts[4] == "log")
      axis.scale = AxisScale::log;
    else if (parts[4] == "linear")
      axis.scale = AxisScale::linear;
    else
      throw config_error("axis scale must be 'log' or 'linear', got '" + parts[4] + "'");
  }
  axis.validate();
  return axis;
}

int cmd_sweep(const CommonOptions& opt, const std::string& x_flag, const std::string& y_flag,
              const std::string& mode_flag, bool fixed_window) {
  const RunConfig config = load_config(opt);

  std::vector<AxisSpec> axes;
  axes.push_back(parse_axis_flag(x_flag));
  if (!y_flag.empty()) axes.push_back(parse_axis_flag(y_flag));

  SweepMode mode;
  if (mode_flag == "numeric")
    mode = SweepMode::numeric;
  else if (mode_flag == "analytic")
    mode = SweepMode::analytic;
  else
    throw config_error("sweep mode must be numeric or analytic, got '" + mode_flag + "'");

  SweepOptions options;
  options.tolerances = config.tolerances();
  options.padding = config.padding;
  options.fixed_window = fixed_window;
  // an explicit window key pins the sweep window to the base-config window
  if (config.t_start || config.t_end) options.window_override = config.window();

  const SweepResult result = sweep(config.pulses(), config.params(), axes, mode, options);
  {
    auto os = open_out(opt.out_path);
    write_grid_csv(os, result);
  }
  {
    auto os = open_out(plot_script_path(opt.out_path));
    write_grid_plot_script(os, result, base_name(opt.out_path));
  }
  if (result.failures > 0)
    std::cerr << "sweep: " << result.failures << " grid point(s) failed (NaN markers)\n";

  const ArgmaxResult best = argmax(result);
  std::cout << "sweep: max I = " << format_g9(best.ionization) << " at "
            << to_string(result.axes[0].parameter) << " = " << format_g9(best.values[0]);
  if (result.axes.size() == 2)
    std::cout << ", " << to_string(result.axes[1].parameter) << " = "
              << format_g9(best.values[1]);
  std::cout << "\n";
  return kExitOk;
}

int cmd_eigen(const CommonOptions& opt) {
  const RunConfig config = load_config(opt);
  const EigenCurves curves = eigenvalue_curves(config.pulses(), config.params(),
                                               config.window(), config.sample_count);
  auto os = open_out(opt.out_path);
  write_eigen_csv(os, curves);
  std::cout << "eigen: wrote " << curves.times.size() << " samples to " << opt.out_path
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulsed two-photon ionization dynamics: STIRAP into continuum and "
               "LICS-STIRAP"};
  app.require_subcommand(1);

  CommonOptions sim_opt, ana_opt, cmp_opt, swp_opt, eig_opt;
  std::string x_flag, y_flag, mode_flag = "numeric";
  bool fixed_window = false;

  CLI::App* sim = app.add_subcommand("simulate", "numeric propagation -> trajectory CSV");
  add_common(sim, sim_opt, "trajectory.csv");

  CLI::App* ana = app.add_subcommand("analytic", "closed-form populations -> trajectory CSV");
  add_common(ana, ana_opt, "analytic.csv");

  CLI::App* cmp = app.add_subcommand("compare",
                                     "numeric and analytic runs plus a deviation summary");
  add_common(cmp, cmp_opt, "compare");

  CLI::App* swp = app.add_subcommand("sweep", "signal grid over 1-2 swept parameters");
  add_common(swp, swp_opt, "grid.csv");
  swp->add_option("-x,--x", x_flag, "axis spec name:min:max:count[:log]")->required();
  swp->add_option("-y,--y", y_flag, "second axis spec");
  swp->add_option("--mode", mode_flag, "numeric|analytic")->default_val("numeric");
  swp->add_flag("--fixed-window", fixed_window,
                "compute the time window once from the base config");

  CLI::App* eig = app.add_subcommand("eigen", "continuity-tracked eigenvalue curves CSV");
  add_common(eig, eig_opt, "eigen.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_opt);
    if (ana->parsed()) return cmd_analytic(ana_opt);
    if (cmp->parsed()) return cmd_compare(cmp_opt);
    if (swp->parsed()) return cmd_sweep(swp_opt, x_flag, y_flag, mode_flag, fixed_window);
    if (eig->parsed()) return cmd_eigen(eig_opt);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitConfig;
}
