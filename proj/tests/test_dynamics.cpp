#include <cmath>
#include <doctest.h>
#include <numbers>

#include "cstirap/dynamics.hpp"
#include "test_helpers.hpp"

using namespace cstirap;

TEST_SUITE("dynamics") {

TEST_CASE("state norm") {
  StateVector s;
  s.dim = 3;
  s.amplitudes = {complexd{1, 0}, {}, {}};
  CHECK(norm(s) == doctest::Approx(1.0));

  s.dim = 2;
  s.amplitudes = {complexd{0.6, 0}, complexd{0, 0.8}, {}};
  CHECK(norm(s) == doctest::Approx(1.0));

  s.amplitudes = {};
  CHECK(norm(s) == doctest::Approx(0.0));
}

TEST_CASE("no coupling leaves the population in state 1") {
  const PulseSet p = testcfg::pulses(0.0, 50.0, -1.0);
  const Trajectory traj = propagate(p, testcfg::two_level(100.0), time_window(p), {}, 200);
  for (const TrajectorySample& s : traj.samples) {
    CHECK(s.p1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s.fluorescence <= 1e-12);
  }
  const Signals sig = signals_from(traj);
  CHECK(sig.ionization == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(sig.fluorescence <= 1e-12);
}

TEST_CASE("resonant pulse-area theorem") {
  // lossless two-level on resonance: P1(inf) = cos^2(area/2)
  for (double cycles : {1.0, 2.0, 3.0}) {
    const double area = cycles * std::numbers::pi;
    const double omega0 = area / std::sqrt(std::numbers::pi);  // width 1
    const PulseSet p = testcfg::pulses(omega0, 0.0, 0.0);
    const Trajectory traj = propagate(p, testcfg::two_level(0.0), time_window(p), {}, 0);
    const double expected = std::pow(std::cos(area / 2.0), 2);
    CHECK(signals_from(traj).residual_p1 == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::fabs(signals_from(traj).residual_p1 - expected) <= 1e-6);
  }
}

TEST_CASE("strong-loss ionization signals match the reference values") {
  // I = 0.978, 0.822, 0.317 for Gamma = 1, 10, 100
  const PulseSet p = testcfg::strong_loss_pulses();
  const double expected[3] = {0.978, 0.822, 0.317};
  const double gammas[3] = {1.0, 10.0, 100.0};
  for (int i = 0; i < 3; ++i) {
    const Trajectory traj =
        propagate(p, testcfg::two_level(gammas[i]), time_window(p), {}, 0);
    CHECK(std::fabs(signals_from(traj).ionization - expected[i]) <= 0.015);
  }
}

TEST_CASE("counterintuitive ordering beats intuitive ordering") {
  const ModelParams mp = testcfg::two_level(100.0);
  const PulseSet counter = testcfg::pulses(50, 50, -1.0);
  const PulseSet intuitive = testcfg::pulses(50, 50, +1.0);
  const double i_counter =
      signals_from(propagate(counter, mp, time_window(counter), {}, 0)).ionization;
  const double i_intuitive =
      signals_from(propagate(intuitive, mp, time_window(intuitive), {}, 0)).ionization;
  CHECK(i_counter > i_intuitive + 0.1);
}

TEST_CASE("norm and ionized-fraction monotonicity along a trajectory") {
  const Trajectory traj = propagate(testcfg::lics_pulses(), testcfg::lics_params(),
                                    time_window(testcfg::lics_pulses()), {}, 2000);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const TrajectorySample& a = traj.samples[i - 1];
    const TrajectorySample& b = traj.samples[i];
    const double norm_a = a.p1 + a.p2 + a.pc;
    const double norm_b = b.p1 + b.p2 + b.pc;
    CHECK(norm_b <= norm_a + 1e-9);
    CHECK(b.ionized >= a.ionized - 1e-9);
    CHECK(b.fluorescence >= a.fluorescence - 1e-12);
    for (double pop : {b.p1, b.p2, b.pc}) {
      CHECK(pop >= -1e-9);
      CHECK(pop <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("accounting identity at the end of the run") {
  const Trajectory traj = propagate(testcfg::lics_pulses(), testcfg::lics_params(),
                                    time_window(testcfg::lics_pulses()), {}, 0);
  const Signals sig = signals_from(traj);
  const double total = sig.ionization + sig.fluorescence + sig.residual_p1 +
                       sig.residual_p2 + sig.residual_pc;
  CHECK(std::fabs(total - 1.0) <= 1e-6);
}

TEST_CASE("halving tolerances leaves the signals unchanged") {
  const PulseSet p = testcfg::strong_loss_pulses();
  const ModelParams mp = testcfg::two_level(100.0);
  const TimeWindow win = time_window(p);
  const double i_default =
      signals_from(propagate(p, mp, win, {1e-9, 1e-12}, 0)).ionization;
  const double i_halved =
      signals_from(propagate(p, mp, win, {0.5e-9, 0.5e-12}, 0)).ionization;
  CHECK(std::fabs(i_default - i_halved) < 1e-6);
}

TEST_CASE("two-level and control-free three-level agree") {
  const PulseSet p = testcfg::pulses(50, 50, -1.0, 0.0);
  ModelParams mp2 = testcfg::two_level(100.0);
  ModelParams mp3 = testcfg::three_level(100.0, 3.0, 0.0, 10.0);
  const TimeWindow win = time_window(p);
  const Signals s2 = signals_from(propagate(p, mp2, win, {}, 0));
  const Signals s3 = signals_from(propagate(p, mp3, win, {}, 0));
  CHECK(std::fabs(s2.ionization - s3.ionization) <= 1e-8);
  CHECK(std::fabs(s2.fluorescence - s3.fluorescence) <= 1e-8);
}

TEST_CASE("window warning when the pulses are cut off") {
  const PulseSet p = testcfg::pulses(50, 50, -1.0);
  // stop on the rising edge of the pump, while state 2 still holds population
  const Trajectory traj =
      propagate(p, testcfg::two_level(1.0), TimeWindow{-6.0, -1.0}, {}, 0);
  CHECK(signals_from(traj).window_warning);

  const Trajectory full =
      propagate(p, testcfg::two_level(1.0), time_window(p), {}, 0);
  CHECK_FALSE(signals_from(full).window_warning);
}

TEST_CASE("step underflow is signalled") {
  const PulseSet p = testcfg::pulses(50, 50, -1.0);
  CHECK_THROWS_AS(
      propagate(p, testcfg::two_level(1.0), TimeWindow{-1e12, 1e12}, {}, 0),
      numeric_error);
}

TEST_CASE("two-level runs reject a live control pulse") {
  const PulseSet p = testcfg::pulses(50, 50, -1.0, 25.0);
  CHECK_THROWS_AS(propagate(p, testcfg::two_level(1.0), time_window(p), {}, 0),
                  config_error);
}

TEST_CASE("trajectory endpoints and sample grid") {
  const PulseSet p = testcfg::strong_loss_pulses();
  const TimeWindow win = time_window(p);
  const Trajectory traj = propagate(p, testcfg::two_level(100.0), win, {}, 500);
  REQUIRE(traj.samples.size() == 500);
  CHECK(traj.samples.front().t == doctest::Approx(win.t_start));
  CHECK(traj.samples.back().t == doctest::Approx(win.t_end));
  for (std::size_t i = 1; i < traj.samples.size(); ++i)
    CHECK(traj.samples[i].t > traj.samples[i - 1].t);
}

}  // TEST_SUITE
