// Acceptance suite: one test case per release criterion, each printing a
// single PASS/FAIL line.  Tolerances are pinned here, not configurable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "cstirap/adiabatic.hpp"
#include "cstirap/dynamics.hpp"
#include "cstirap/eigen.hpp"
#include "cstirap/sweep.hpp"

using namespace cstirap;
namespace fs = std::filesystem;

namespace {

void report(int criterion, const std::string& what, bool pass,
            const std::string& detail = "") {
  std::printf("criterion %d (%s): %s%s%s\n", criterion, what.c_str(),
              pass ? "PASS" : "FAIL", detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
}

PulseSet pulses(double omega0, double gamma_i0, double tau_i, double gamma_c0 = 0.0,
                double tau_c = -0.5) {
  return {GaussianPulse(omega0, 0.0, 1.0), GaussianPulse(gamma_i0, tau_i, 1.0),
          GaussianPulse(gamma_c0, tau_c, 1.0)};
}

ModelParams three_level(double gamma, double q, double delta, double delta_c) {
  ModelParams p;
  p.kind = ModelKind::three_level;
  p.gamma_loss = gamma;
  p.fano_q = q;
  p.delta_pump = delta;
  p.delta_control = delta_c;
  return p;
}

Signals run_signals(const PulseSet& p, const ModelParams& mp) {
  return signals_from(propagate(p, mp, time_window(p), {}, 0));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

TEST_CASE("criterion 1: reference ionization without the control field") {
  const auto start = std::chrono::steady_clock::now();
  const double gammas[3] = {1.0, 10.0, 100.0};
  const double expected[3] = {0.978, 0.822, 0.317};
  bool pass = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const Signals sig =
        run_signals(pulses(50, 50, -1.0), three_level(gammas[i], 3.0, 0.0, 10.0));
    const double dev = std::fabs(sig.ionization - expected[i]);
    detail += "I(G=" + fmt(gammas[i]) + ")=" + fmt(sig.ionization) + " ";
    if (dev > 0.015) pass = false;
    CHECK(dev <= 0.015);
  }
  const double secs = elapsed_s(start);
  detail += "in " + fmt(secs) + "s";
  if (secs >= 1.0) pass = false;
  CHECK(secs < 1.0);
  report(1, "no-control reference values", pass, detail);
}

TEST_CASE("criterion 2: control-field sweep recovers the reference optimum") {
  bool pass = true;
  double best = 0.0;
  std::string detail;
  for (double q : {1.0, 3.0, 6.0}) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<AxisSpec> axes = {
        {SweepParameter::tau_c, -3.0, 2.0, 50, AxisScale::linear},
        {SweepParameter::gamma_c0, 2.0, 100.0, 50, AxisScale::linear}};
    const SweepResult grid =
        sweep(pulses(50, 50, -1.0, 50.0, -0.5), three_level(100.0, q, 0.0, 10.0), axes,
              SweepMode::numeric, {});
    const ArgmaxResult top = argmax(grid);
    best = std::max(best, top.ionization);
    const double secs = elapsed_s(start);
    detail += "q=" + fmt(q) + ": max I=" + fmt(top.ionization) + " (" + fmt(secs) + "s) ";
    if (secs >= 60.0) pass = false;
    CHECK(secs < 60.0);
  }
  if (best < 0.85 || std::fabs(best - 0.875) > 0.03) pass = false;
  CHECK(best >= 0.85);
  CHECK(std::fabs(best - 0.875) <= 0.03);
  report(2, "LICS improvement at strong loss", pass, detail + "best=" + fmt(best));
}

TEST_CASE("criterion 3: analytic curves track the propagation over the delay scan") {
  const ModelParams mp = three_level(100.0, 3.0, 10.0, 10.0);
  double worst_i = 0.0, worst_f = 0.0;
  for (int k = 0; k < 41; ++k) {
    const double tau_i = -3.0 + 4.0 * k / 40.0;
    const PulseSet p = pulses(50, 50, tau_i, 50.0, -0.5);
    const Signals num = run_signals(p, mp);
    const Signals ana = analytic_signals(p, mp);
    worst_i = std::max(worst_i, std::fabs(num.ionization - ana.ionization));
    worst_f = std::max(worst_f, std::fabs(num.fluorescence - ana.fluorescence));
  }
  const bool pass = worst_i <= 0.05 && worst_f <= 0.05;
  CHECK(worst_i <= 0.05);
  CHECK(worst_f <= 0.05);
  report(3, "analytic-numeric agreement", pass,
         "max|dI|=" + fmt(worst_i) + " max|dF|=" + fmt(worst_f));
}

TEST_CASE("criterion 4: counterintuitive ordering advantage") {
  ModelParams mp;
  mp.kind = ModelKind::two_level;
  mp.gamma_loss = 100.0;
  const double i_counter = run_signals(pulses(50, 50, -1.0), mp).ionization;
  const double i_intuitive = run_signals(pulses(50, 50, +1.0), mp).ionization;
  const double margin = i_counter - i_intuitive;
  const bool pass = margin >= 0.1;
  CHECK(margin >= 0.1);
  report(4, "ionizing-before-pump advantage", pass,
         "I(-1)=" + fmt(i_counter) + " I(+1)=" + fmt(i_intuitive));
}

TEST_CASE("criterion 5: technique ordering across the loss-rate scan") {
  bool ordering = true;
  for (int k = 0; k < 20; ++k) {
    const double gamma =
        std::exp(std::log(10.0) + (std::log(300.0) - std::log(10.0)) * k / 19.0);
    const ModelParams mp = three_level(gamma, 3.0, 10.0, 10.0);
    const double lics = run_signals(pulses(50, 50, -1.0, 50.0, -0.5), mp).ionization;
    const double cstirap = run_signals(pulses(50, 50, -1.0), mp).ionization;
    const double tpi = run_signals(pulses(50, 50, 0.0), mp).ionization;
    if (!(lics >= cstirap && cstirap >= tpi)) ordering = false;
    CHECK(lics >= cstirap);
    CHECK(cstirap >= tpi);
  }
  const ModelParams mp100 = three_level(100.0, 3.0, 10.0, 10.0);
  const double gap = run_signals(pulses(50, 50, -1.0, 50.0, -0.5), mp100).ionization -
                     run_signals(pulses(50, 50, 0.0), mp100).ionization;
  const bool pass = ordering && gap >= 0.1;
  CHECK(gap >= 0.1);
  report(5, "LICS >= c-STIRAP >= TPI", pass, "gap at G=100: " + fmt(gap));
}

TEST_CASE("criterion 6: invariants on random parameter draws") {
  std::mt19937 gen(987654321u);
  std::uniform_real_distribution<double> rate(0.0, 100.0);
  std::uniform_real_distribution<double> det(-20.0, 20.0);
  std::uniform_real_distribution<double> q(-6.0, 6.0);

  bool monotone = true, accounting = true, reduction = true;
  for (int draw = 0; draw < 100; ++draw) {
    const PulseSet p = pulses(rate(gen), rate(gen), -1.0, rate(gen), -0.5);
    const ModelParams mp = three_level(rate(gen), q(gen), det(gen), det(gen));
    const Trajectory traj = propagate(p, mp, time_window(p), {}, 400);

    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
      const auto& a = traj.samples[i - 1];
      const auto& b = traj.samples[i];
      if (b.p1 + b.p2 + b.pc > a.p1 + a.p2 + a.pc + 1e-6) monotone = false;
      if (b.ionized < a.ionized - 1e-6) monotone = false;
    }
    const Signals sig = signals_from(traj);
    const double total = sig.ionization + sig.fluorescence + sig.residual_p1 +
                         sig.residual_p2 + sig.residual_pc;
    if (std::fabs(total - 1.0) > 1e-6) accounting = false;

    // control off: the three-level run must collapse onto the two-level one
    const PulseSet p2{p.pump, p.ionizing, GaussianPulse(0.0, -0.5, 1.0)};
    ModelParams two = mp;
    two.kind = ModelKind::two_level;
    const Signals s3 = signals_from(propagate(p2, mp, time_window(p2), {}, 0));
    const Signals s2 = signals_from(propagate(p2, two, time_window(p2), {}, 0));
    if (std::fabs(s3.ionization - s2.ionization) > 1e-8 ||
        std::fabs(s3.fluorescence - s2.fluorescence) > 1e-8)
      reduction = false;
  }
  const bool pass = monotone && accounting && reduction;
  CHECK(monotone);
  CHECK(accounting);
  CHECK(reduction);
  report(6, "norm/ionized monotonicity, accounting, reduction", pass);
}

TEST_CASE("criterion 7: eigensolver residuals and perturbative convergence") {
  std::mt19937 gen(123456789u);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  double worst_rel = 0.0;
  for (int i = 0; i < 1000; ++i) {
    ComplexMatrix m;
    m.dim = 3;
    for (int r = 0; r < 3; ++r)
      for (int c = r; c < 3; ++c) m(r, c) = m(c, r) = complexd{u(gen), u(gen)};
    const ExactEigensystem sys = exact_eigensystem(m);
    for (int k = 0; k < 3; ++k) {
      double res = 0.0;
      for (int r = 0; r < 3; ++r) {
        complexd acc{};
        for (int c = 0; c < 3; ++c) acc += m(r, c) * sys.eigenvectors[k][c];
        res = std::max(res, std::abs(acc - sys.eigenvalues[k] * sys.eigenvectors[k][r]));
      }
      worst_rel = std::max(worst_rel, res / m.frobenius_norm());
    }
  }
  const bool residual_ok = worst_rel <= 1e-10;
  CHECK(residual_ok);

  // log-log slope of the eps_0 error as the pump is halved from 50
  const ModelParams mp = three_level(100.0, 3.0, 0.0, 10.0);
  std::vector<double> lx, ly;
  for (int k = 0; k <= 6; ++k) {
    const double omega0 = 50.0 / (1 << k);
    const PulseSet p = pulses(omega0, 50.0, -1.0, 50.0, -0.5);
    const PerturbativeEigensystem pert = perturbative_eigensystem(0.0, p, mp);
    const ExactEigensystem exact = exact_eigensystem(hamiltonian_3(0.0, p, mp));
    double err = 1e300;
    for (int j = 0; j < 3; ++j)
      err = std::min(err, std::abs(exact.eigenvalues[j] - pert.eigenvalues[1]));
    lx.push_back(std::log(omega0));
    ly.push_back(std::log(err));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= lx.size();
  my /= ly.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = num / den;
  const bool slope_ok = slope >= 3.0;
  CHECK(slope_ok);
  report(7, "oracle equivalence", residual_ok && slope_ok,
         "max residual/|H|=" + fmt(worst_rel) + " slope=" + fmt(slope));
}

TEST_CASE("criterion 8: resonant pulse-area theorem") {
  ModelParams mp;
  mp.kind = ModelKind::two_level;
  bool pass = true;
  std::string detail;
  for (double cycles : {1.0, 2.0, 3.0}) {
    const double area = cycles * std::acos(-1.0);
    const double omega0 = area / std::sqrt(std::acos(-1.0));
    const Signals sig = run_signals(pulses(omega0, 0.0, 0.0), mp);
    const double expected = std::pow(std::cos(area / 2.0), 2);
    const double dev = std::fabs(sig.residual_p1 - expected);
    detail += "A=" + fmt(cycles) + "pi: dev=" + fmt(dev) + " ";
    if (dev > 1e-6) pass = false;
    CHECK(dev <= 1e-6);
  }
  report(8, "P1(inf) = cos^2(area/2)", pass, detail);
}

TEST_CASE("criterion 9: sweep output is byte-identical across worker counts") {
  const char* bin = std::getenv("CSTIRAP_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CSTIRAP_BIN must point at the cstirap binary");

  const fs::path dir =
      fs::temp_directory_path() / ("cstirap_acc9_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "model = three_level\nomega0 = 50\ngamma_i0 = 50\n"
                        "tau_i = -1\ngamma_c0 = 50\ntau_c = -0.5\ngamma = 100\n"
                        "fano_q = 3\ndelta_pump = 10\ndelta_control = 10\n";

  auto run_with_workers = [&](int workers, const fs::path& out) {
    const std::string cmd = "SWEEP_WORKERS=" + std::to_string(workers) + " " +
                            std::string(bin) + " sweep -c " + cfg.string() +
                            " -x tau_c:-2:1:6 -y gamma_c0:10:90:5 -o " + out.string() +
                            " > /dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  const fs::path out1 = dir / "grid_w1.csv";
  const fs::path out4 = dir / "grid_w4.csv";
  const int rc1 = run_with_workers(1, out1);
  const int rc4 = run_with_workers(4, out4);
  CHECK(rc1 == 0);
  CHECK(rc4 == 0);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string a = slurp(out1);
  const std::string b = slurp(out4);
  const bool pass = rc1 == 0 && rc4 == 0 && !a.empty() && a == b;
  CHECK(a == b);
  CHECK_FALSE(a.empty());
  report(9, "deterministic sweep output", pass,
         "bytes=" + std::to_string(a.size()));
}
