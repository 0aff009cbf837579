#include "cstirap/csv.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace cstirap {

std::string format_g9(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  os << "# t,P1,P2,Pc,F,Iacc\n";
  for (const TrajectorySample& s : trajectory.samples) {
    os << format_g9(s.t) << ',' << format_g9(s.p1) << ',' << format_g9(s.p2) << ','
       << format_g9(s.pc) << ',' << format_g9(s.fluorescence) << ','
       << format_g9(s.ionized) << '\n';
  }
}

void write_eigen_csv(std::ostream& os, const EigenCurves& curves) {
  if (curves.dim == 3)
    os << "# t,re_eps_plus,im_eps_plus,re_eps_0,im_eps_0,re_eps_minus,im_eps_minus\n";
  else
    os << "# t,re_eps_1,im_eps_1,re_eps_2,im_eps_2\n";
  for (std::size_t i = 0; i < curves.times.size(); ++i) {
    os << format_g9(curves.times[i]);
    for (int k = 0; k < curves.dim; ++k)
      os << ',' << format_g9(curves.values[i][k].real()) << ','
         << format_g9(curves.values[i][k].imag());
    os << '\n';
  }
}

namespace {

void write_grid_row(std::ostream& os, const SweepResult& result, std::size_t idx,
                    double x, const double* y) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const std::optional<Signals>& cell = result.grid[idx];
  os << format_g9(x);
  if (y) os << ',' << format_g9(*y);
  const double vals[5] = {cell ? cell->ionization : nan,
                          cell ? cell->fluorescence : nan,
                          cell ? cell->residual_p1 : nan,
                          cell ? cell->residual_p2 : nan,
                          cell ? cell->residual_pc : nan};
  for (double v : vals) os << ',' << format_g9(v);
  os << '\n';
}

}  // namespace

void write_grid_csv(std::ostream& os, const SweepResult& result) {
  const bool twod = result.axes.size() == 2;
  os << "# " << to_string(result.axes[0].parameter);
  if (twod) os << ',' << to_string(result.axes[1].parameter);
  os << ",I,F,P1,P2,Pc\n";

  const int nx = result.axes[0].count;
  const int ny = twod ? result.axes[1].count : 1;
  for (int ix = 0; ix < nx; ++ix) {
    const double x = result.axes[0].value_at(ix);
    for (int iy = 0; iy < ny; ++iy) {
      const std::size_t idx = static_cast<std::size_t>(ix) * ny + iy;
      if (twod) {
        const double y = result.axes[1].value_at(iy);
        write_grid_row(os, result, idx, x, &y);
      } else {
        write_grid_row(os, result, idx, x, nullptr);
      }
    }
    if (twod && ix + 1 < nx) os << '\n';  // pm3d block separator
  }
}

void write_grid_plot_script(std::ostream& os, const SweepResult& result,
                            std::string_view csv_name) {
  const bool twod = result.axes.size() == 2;
  os << "# gnuplot commands for " << csv_name << "\n";
  os << "set datafile separator \",\"\n";
  os << "set datafile missing \"NaN\"\n";
  os << "set xlabel \"" << to_string(result.axes[0].parameter) << "\"\n";
  if (result.axes[0].scale == AxisScale::log) os << "set logscale x\n";
  if (twod) {
    os << "set ylabel \"" << to_string(result.axes[1].parameter) << "\"\n";
    if (result.axes[1].scale == AxisScale::log) os << "set logscale y\n";
    os << "set pm3d map\n";
    os << "splot \"" << csv_name << "\" using 1:2:3 notitle\n";
  } else {
    os << "set ylabel \"signal\"\n";
    os << "plot \"" << csv_name << "\" using 1:2 with lines title \"I\", \\\n"
       << "     \"" << csv_name << "\" using 1:3 with lines title \"F\"\n";
  }
}

std::string signals_summary(const Signals& signals) {
  std::string out = "I=" + format_g9(signals.ionization) +
                    " F=" + format_g9(signals.fluorescence) +
                    " P1=" + format_g9(signals.residual_p1) +
                    " P2=" + format_g9(signals.residual_p2) +
                    " Pc=" + format_g9(signals.residual_pc);
  if (signals.window_warning)
    out += "  [warning: residual excited population > 1e-4, window may be too short]";
  return out;
}

std::string conditions_summary(const AdiabaticityReport& r) {
  auto flag = [](bool ok) { return ok ? " (>>1 ok)" : " (not >>1)"; };
  std::string out;
  out += "pump area = " + format_g9(r.pump_area) + flag(r.pump_area_large) + "\n";
  out += "ionizing area = " + format_g9(r.ionizing_area) + flag(r.ionizing_area_large) + "\n";
  out += "(Gamma_i+Gamma)/Omega = " + format_g9(r.hierarchy_ratio) + flag(r.hierarchy_large) + "\n";
  out += "Omega^2 T/(Gamma_i+Gamma) = " + format_g9(r.depletion_ratio);
  return out;
}

}  // namespace cstirap
