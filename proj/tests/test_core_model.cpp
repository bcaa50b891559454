#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "phasekit/core_model.hpp"
#include "phasekit/phase_engine.hpp"
#include "phasekit/quadrature.hpp"

using namespace phasekit;

namespace {

SpacePoint rotate(SpacePoint p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

}  // namespace

TEST_CASE("arc_length examples") {
  CHECK(arc_length(Path({{0.0, 0.0}}, 1.0)) == 0.0);
  CHECK(arc_length(Path({{0.0, 0.0}, {3.0, 4.0}}, 1.0)) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(arc_length(Path({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}}, 1.0)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("arc_length is invariant under rigid motions") {
  std::mt19937_64 rng(20261019);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_int_distribution<int> count(2, 40);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SpacePoint> v(static_cast<std::size_t>(count(rng)));
    for (auto& p : v) p = {coord(rng), coord(rng)};
    const double a = angle(rng);
    const SpacePoint shift{coord(rng), coord(rng)};
    std::vector<SpacePoint> moved;
    for (const auto& p : v) moved.push_back(rotate(p, a) + shift);
    const double base = arc_length(Path(v, 1.0));
    CHECK(std::abs(arc_length(Path(moved, 1.0)) - base) <= 1e-12 * base);
  }
}

TEST_CASE("domain types reject invalid construction") {
  CHECK_THROWS_AS(ModelParams(0.0, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(ModelParams(1.0, -1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, NAN, 1.0), Error);
  CHECK_THROWS_AS(ModelParams(1.0, 1.0, 1.0, 0.0), Error);
  CHECK_NOTHROW(ModelParams(1.0, 1.0, -2.0, 1.0));

  CHECK_THROWS_AS(Path({}, 1.0), Error);
  CHECK_THROWS_AS(Path({{0.0, 0.0}, {0.0, 0.0}}, 1.0), Error);
  CHECK_THROWS_AS(Path({{0.0, INFINITY}}, 1.0), Error);
  CHECK_THROWS_AS(Path({{0.0, 0.0}}, -1.0), Error);

  CHECK_THROWS_AS(FieldSpec::solenoid({0.0, 0.0}, 1.0, 0.0), Error);
  CHECK_THROWS_AS(Tabulated({0.0, 0.0}, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(Tabulated({0.0}, {1.0}), Error);
  CHECK_THROWS_AS(validate(Potential1D{Harmonic{-1.0}}), Error);
  CHECK_THROWS_AS(validate(Potential1D{LinearWell{0.0}}), Error);
}

TEST_CASE("fringe pattern validation") {
  FringePattern ok{{0.0, 1.0, 2.0}, {0.0, 4.0, 2.0}, std::nullopt};
  CHECK_NOTHROW(ok.validate());
  FringePattern unsorted{{0.0, 0.0, 2.0}, {0.0, 4.0, 2.0}, std::nullopt};
  CHECK_THROWS_AS(unsorted.validate(), Error);
  FringePattern too_bright{{0.0, 1.0}, {0.0, 4.5}, std::nullopt};
  CHECK_THROWS_AS(too_bright.validate(), Error);
  CHECK_NOTHROW(too_bright.validate(false));
  FringePattern ragged{{0.0, 1.0}, {0.0}, std::nullopt};
  CHECK_THROWS_AS(ragged.validate(false), Error);
}

TEST_CASE("gradient field circulation vanishes on closed polylines") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-5.0, 5.0);
  std::uniform_int_distribution<int> sides(3, 64);
  const auto field = quadratic_gauge(0.7, -1.3, 0.4, 2.0, -0.5) +
                     FieldSpec::gradient([](SpacePoint p) { return std::sin(p.x) * std::cos(p.y); },
                                         [](SpacePoint p) {
                                           return SpacePoint{std::cos(p.x) * std::cos(p.y),
                                                             -std::sin(p.x) * std::sin(p.y)};
                                         });
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SpacePoint> v(static_cast<std::size_t>(sides(rng)));
    for (auto& p : v) p = {coord(rng), coord(rng)};
    v.push_back(v.front());
    CHECK(std::abs(vector_potential_integral(Path(v, 0.0), field)) < 1e-9);
  }
}

TEST_CASE("field superposition adds potentials") {
  const auto a = quadratic_gauge(1.0, 0.0, 0.0);
  const auto b = FieldSpec::solenoid({0.0, 0.0}, 2.0 * std::numbers::pi, 0.1);
  const auto sum = a + b;
  CHECK(sum.components().size() == 2);
  const SpacePoint at{1.0, 0.0};
  const SpacePoint potential = sum.potential_at(at);
  CHECK(potential.x == doctest::Approx(2.0));
  CHECK(potential.y == doctest::Approx(1.0));  // flux / (2 pi r), counterclockwise
  CHECK(FieldSpec::none().components().empty());
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (std::size_t order : {1u, 2u, 5u, 16u, 32u, 128u}) {
    const auto& rule = gauss_legendre(order);
    double weight_sum = 0.0;
    for (double w : rule.weights()) weight_sum += w;
    CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-14));
    const int degree = static_cast<int>(2 * order - 1);
    const double got = rule.integrate([&](double x) { return std::pow(x, degree - 1) + std::pow(x, degree); },
                                      -1.0, 1.0);
    const double exact = (degree - 1) % 2 == 0 ? 2.0 / degree : 0.0;
    CHECK(got == doctest::Approx(exact).epsilon(1e-13));
  }
  CHECK(gauss_legendre(16).integrate([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-15));
  CHECK_THROWS_AS(GaussLegendre(0), Error);
}
