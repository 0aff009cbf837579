#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include "cstirap/dynamics.hpp"
#include "cstirap/eigen.hpp"
#include "cstirap/model.hpp"
#include "cstirap/sweep.hpp"

namespace cstirap {

// 9 significant digits; NaN renders as the literal token "NaN"
std::string format_g9(double v);

// columns t,P1,P2,Pc,F,Iacc (Pc stays 0 for two-level runs)
void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

// columns t plus (re, im) per tracked eigenvalue branch
void write_eigen_csv(std::ostream& os, const EigenCurves& curves);

// header "# param1[,param2],I,F,P1,P2,Pc", rows in x-major order with a blank
// line between x-blocks of a 2D grid (gnuplot pm3d layout)
void write_grid_csv(std::ostream& os, const SweepResult& result);

// companion gnuplot commands referencing the CSV by name only
void write_grid_plot_script(std::ostream& os, const SweepResult& result,
                            std::string_view csv_name);

std::string signals_summary(const Signals& signals);
std::string conditions_summary(const AdiabaticityReport& report);

}  // namespace cstirap
