#include <cmath>
#include <complex>
#include <doctest.h>
#include <numbers>
#include <random>

#include "cstirap/quadrature.hpp"
#include "test_helpers.hpp"

using namespace cstirap;

TEST_SUITE("quadrature") {

TEST_CASE("gaussian area against the closed form") {
  auto f = [](double t) { return 50.0 * std::exp(-t * t); };
  const double exact = 50.0 * std::sqrt(std::numbers::pi);
  const double got = integrate_adaptive<double>(f, -10.0, 10.0, 1e-10);
  CHECK(got == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("oscillatory complex integrand") {
  // int_0^1 exp(i w t) dt = (exp(i w) - 1) / (i w)
  const double w = 37.0;
  auto f = [w](double t) { return std::exp(complexd{0.0, w * t}); };
  const complexd exact = (std::exp(complexd{0.0, w}) - 1.0) / complexd{0.0, w};
  const complexd got = integrate_adaptive<complexd>(f, 0.0, 1.0, 1e-10);
  CHECK(std::abs(got - exact) <= 1e-10);
}

TEST_CASE("cumulative integral agrees with direct evaluation") {
  auto f = [](double t) {
    return std::exp(-t * t) * complexd{std::cos(3.0 * t), std::sin(2.0 * t)};
  };
  const CumulativeIntegral<complexd> cum(f, -5.0, 5.0, 1e-9);

  std::uniform_real_distribution<double> pick(-5.0, 5.0);
  for (int i = 0; i < 40; ++i) {
    const double t = pick(testcfg::rng());
    const complexd direct = integrate_adaptive<complexd>(f, -5.0, t, 1e-11);
    CHECK(std::abs(cum.at(t) - direct) <= 1e-8);
  }
  CHECK(std::abs(cum.at(-5.0)) == 0.0);
  CHECK(std::abs(cum.at(7.0) - cum.total()) == 0.0);  // clamped to the window
}

TEST_CASE("zero integrand settles immediately") {
  const CumulativeIntegral<double> cum([](double) { return 0.0; }, 0.0, 1.0, 1e-9);
  CHECK(cum.total() == 0.0);
  CHECK(cum.at(0.3) == 0.0);
}

}  // TEST_SUITE
