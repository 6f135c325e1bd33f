#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qfreq/quadrature.hpp"

using namespace qfreq;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid validation") {
  CHECK_NOTHROW((GridSpec{8, 16}.validate()));
  CHECK_THROWS_AS((GridSpec{7, 16}.validate()), parameter_error);
  CHECK_THROWS_AS((GridSpec{8, 15}.validate()), parameter_error);  // odd
  CHECK_THROWS_AS((GridSpec{8, 14}.validate()), parameter_error);
  const GridSpec g{64, 128};
  CHECK(g.doubled().angular == 128);
  CHECK(g.doubled().radial == 256);
  CHECK(g.halved().angular == 32);
  CHECK(g.halved().radial == 64);
}

TEST_CASE("disk integral is exact on smooth closed forms") {
  const GridSpec grid{64, 64};
  const double R = 1.7;
  const double area = disk_integral([](Complex) { return 1.0; }, {0.0, 0.0}, R, grid);
  CHECK(area == doctest::Approx(kPi * R * R).epsilon(1e-12));

  const double m2 = disk_integral([](Complex z) { return std::norm(z); }, {0.0, 0.0}, R, grid);
  CHECK(m2 == doctest::Approx(kPi * R * R * R * R / 2.0).epsilon(1e-12));

  // Angular harmonics integrate to zero on centered disks.
  const double h3 = disk_integral([](Complex z) { return std::pow(z, 3).real(); },
                                  {0.0, 0.0}, R, grid);
  CHECK(std::abs(h3) <= 1e-13);
}

TEST_CASE("disk integral handles integrable center singularities") {
  // Integral of |z|^p over the disk of radius R: 2 pi R^(p+2) / (p + 2).
  const GridSpec grid{64, 256};
  const double R = 1.0;
  for (double p : {-1.0, -0.5, -4.0 / 3.0}) {
    const double got = disk_integral(
        [p](Complex z) { return std::pow(std::abs(z), p); }, {0.0, 0.0}, R, grid);
    const double want = 2.0 * kPi * std::pow(R, p + 2.0) / (p + 2.0);
    CHECK(got == doctest::Approx(want).epsilon(1e-6));
  }
}

TEST_CASE("serial and parallel disk integrals are bit-identical") {
  const auto g = [](Complex z) {
    return std::exp(z.real()) * std::cos(3.0 * z.imag()) + std::norm(z);
  };
  for (const GridSpec grid : {GridSpec{32, 48}, GridSpec{64, 64}, GridSpec{100, 130}}) {
    const double a = disk_integral(g, {0.3, -0.2}, 1.1, grid, ExecutionPolicy::Serial);
    const double b = disk_integral(g, {0.3, -0.2}, 1.1, grid, ExecutionPolicy::Parallel);
    CHECK(a == b);
  }
}

TEST_CASE("disk integral is translation invariant for translated integrands") {
  const Complex c{2.0, -1.5};
  const auto base = [](Complex z) { return std::norm(z) + z.real(); };
  const auto shifted = [c, base](Complex z) { return base(z - c); };
  const GridSpec grid{96, 96};
  const double a = disk_integral(base, {0.0, 0.0}, 1.3, grid);
  const double b = disk_integral(shifted, c, 1.3, grid);
  CHECK(a == doctest::Approx(b).epsilon(1e-13));
}

TEST_CASE("circle integral oracles") {
  const double got = circle_integral([](Complex) { return 1.0; }, {0.0, 0.0}, 2.5, 64);
  CHECK(got == doctest::Approx(2.0 * kPi * 2.5).epsilon(1e-14));

  // |z|^2 on a circle about w: integrates to 2 pi r (|w|^2 + r^2).
  const Complex w{1.0, 2.0};
  const double r = 0.7;
  const double m = circle_integral([](Complex z) { return std::norm(z); }, w, r, 128);
  CHECK(m == doctest::Approx(2.0 * kPi * r * (std::norm(w) + r * r)).epsilon(1e-13));

  // Trapezoid rule on periodic trig polynomials is exact below the node count.
  const double trig = circle_integral(
      [](Complex z) { return std::pow(z.real(), 4); }, {0.0, 0.0}, 1.0, 16);
  CHECK(trig == doctest::Approx(2.0 * kPi * 3.0 / 8.0).epsilon(1e-13));
}

TEST_CASE("circle_nodes start at angle zero and wind counterclockwise") {
  const auto nodes = circle_nodes({1.0, 1.0}, 2.0, 8);
  REQUIRE(nodes.size() == 8);
  CHECK(nodes[0].real() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(nodes[0].imag() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(nodes[2].real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(nodes[2].imag() == doctest::Approx(3.0).epsilon(1e-14));
  for (const Complex& z : nodes)
    CHECK(std::abs(z - Complex{1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("quadrature argument guards") {
  const auto one = [](Complex) { return 1.0; };
  CHECK_THROWS_AS((disk_integral(one, {0.0, 0.0}, 0.0, GridSpec{64, 64})), parameter_error);
  CHECK_THROWS_AS((disk_integral(one, {0.0, 0.0}, -1.0, GridSpec{64, 64})), parameter_error);
  CHECK_THROWS_AS((disk_integral(one, {0.0, 0.0}, 1.0, GridSpec{4, 64})), parameter_error);
  CHECK_THROWS_AS((circle_integral(one, {0.0, 0.0}, 1.0, 7)), parameter_error);
  CHECK_THROWS_AS((circle_integral(one, {0.0, 0.0}, 0.0, 64)), parameter_error);
  CHECK_THROWS_AS((circle_nodes({0.0, 0.0}, -0.1, 64)), parameter_error);
  CHECK_NOTHROW((circle_nodes({0.0, 0.0}, 0.0, 8)));
}

TEST_CASE("refinement improves a non-polynomial integrand") {
  const auto g = [](Complex z) { return std::sqrt(1.0 + std::norm(z)); };
  const double fine = disk_integral(g, {0.0, 0.0}, 1.0, GridSpec{256, 256});
  const double coarse = disk_integral(g, {0.0, 0.0}, 1.0, GridSpec{32, 32});
  const double finest = disk_integral(g, {0.0, 0.0}, 1.0, GridSpec{512, 512});
  CHECK(std::abs(fine - finest) <= std::abs(coarse - finest));
  // The innermost power-law block models a smooth integrand only to O(rho^4),
  // so agreement saturates near 1e-8 relative rather than at Simpson order.
  CHECK(std::abs(fine - finest) <= 1e-7 * std::abs(finest));
}
