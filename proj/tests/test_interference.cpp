#include <cmath>
#include <numbers>

#include "doctest.h"
#include "phasekit/interference.hpp"

using namespace phasekit;

namespace {

constexpr double kPi = std::numbers::pi;

TwoSlitGeometry lab(double half_gap, double screen_x, double span, std::size_t samples) {
  TwoSlitGeometry g;
  g.source = {-1.0, 0.0};
  g.slit_a = {0.0, -half_gap};
  g.slit_b = {0.0, half_gap};
  g.screen_x = screen_x;
  g.screen_span = {-span, span};
  g.n_samples = samples;
  return g;
}

// Exact l1 - l2 from the geometry, written out independently of Path.
double path_difference(const TwoSlitGeometry& g, double s) {
  const auto len = [](SpacePoint a, SpacePoint b) { return std::hypot(a.x - b.x, a.y - b.y); };
  const SpacePoint target{g.screen_x, s};
  return len(g.source, g.slit_a) + len(g.slit_a, target) - len(g.source, g.slit_b) - len(g.slit_b, target);
}

// Screen point in (lo, hi) where (p / kappa) (l1 - l2) reaches `phase`.
double solve_phase(const TwoSlitGeometry& g, double p_over_kappa, double phase, double lo, double hi) {
  const auto f = [&](double s) { return p_over_kappa * path_difference(g, s) - phase; };
  const bool rising = f(hi) > f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

FringePattern synthetic(double period, double offset, std::size_t n, double lo, double hi) {
  FringePattern p;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    p.screen_coords.push_back(x);
    p.intensities.push_back(2.0 + 2.0 * std::cos(2.0 * kPi * x / period) + offset);
  }
  return p;
}

}  // namespace

TEST_CASE("two_slit_paths examples") {
  const auto g = lab(0.5, 10.0, 2.0, 8);
  const auto [a0, b0] = two_slit_paths(g, 0.0, 1.0);
  CHECK(arc_length(a0) == doctest::Approx(arc_length(b0)).epsilon(1e-15));

  TwoSlitGeometry tilted = g;
  tilted.slit_a = {0.0, 0.5};
  tilted.slit_b = {0.0, -0.5};
  const auto [a1, b1] = two_slit_paths(tilted, 1.0, 1.0);
  // sqrt(1.25) + sqrt(100.25) and sqrt(1.25) + sqrt(102.25)
  CHECK(arc_length(a1) == doctest::Approx(11.1305261860002877).epsilon(1e-15));
  CHECK(arc_length(b1) == doctest::Approx(11.2299081968282370).epsilon(1e-15));
  CHECK(a1.vertices().size() == 3);
  CHECK(a1.momentum() == b1.momentum());

  CHECK_NOTHROW(two_slit_paths(g, 2.0));
  CHECK_NOTHROW(two_slit_paths(g, -2.0));
  try {
    two_slit_paths(g, 2.0 + 1e-9);
    FAIL("expected OutOfSpan");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfSpan);
  }
}

TEST_CASE("geometry validation") {
  auto g = lab(0.5, 10.0, 2.0, 8);
  g.n_samples = 7;
  CHECK_THROWS_AS(g.validate(), Error);
  g = lab(0.5, 10.0, 2.0, 8);
  g.slit_b = g.slit_a;
  CHECK_THROWS_AS(g.validate(), Error);
  g = lab(0.5, 10.0, 2.0, 8);
  g.screen_x = 0.0;
  CHECK_THROWS_AS(g.validate(), Error);
  g = lab(0.5, 10.0, 2.0, 8);
  g.screen_span = {1.0, 1.0};
  CHECK_THROWS_AS(g.validate(), Error);
}

TEST_CASE("pattern examples") {
  const ModelParams unit;
  const auto g = lab(0.5, 100.0, 30.0, 513);
  const auto patt = pattern(g, unit, 2.0 * kPi);
  REQUIRE(patt.screen_coords[256] == 0.0);
  CHECK(patt.intensities[256] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_NOTHROW(patt.validate());

  // Destructive point, located by bisection on the exact path difference.
  const double p = 20.0;
  const double dark = solve_phase(g, p, kPi, 0.0, 30.0);
  auto edge = g;
  edge.screen_span = {-dark, dark};
  edge.n_samples = 9;
  const auto dark_patt = pattern(edge, unit, p);
  CHECK(dark_patt.intensities.front() < 1e-9);
  CHECK(dark_patt.intensities.back() < 1e-9);

  CHECK_THROWS_AS(pattern(g, unit, 0.0), Error);
}

TEST_CASE("near-axis maxima are spaced by kappa L 2 pi / (p d)") {
  // lambda = 2 pi kappa / p = 1, slit gap 10, slit-to-screen 1000: spacing ~ 100.
  const ModelParams unit;
  auto g = lab(5.0, 1000.0, 250.0, 512);
  g.source = {-10.0, 0.0};
  const double p = 2.0 * kPi;
  const auto fit = fit_fringe_spacing(pattern(g, unit, p));
  REQUIRE(fit.peaks.size() == 5);

  const double centre = solve_phase(g, p, 0.0, -50.0, 50.0);
  const double first = solve_phase(g, p, 2.0 * kPi, 50.0, 150.0);
  CHECK(std::abs(centre) < 1e-9);
  CHECK(std::abs(fit.peaks[2] - centre) < 1e-3);
  CHECK(fit.peaks[3] == doctest::Approx(first).epsilon(1e-4));
  CHECK(first - centre == doctest::Approx(100.0).epsilon(0.01));
}

TEST_CASE("pattern equals 2 + 2 cos of the exact phase and is mirror symmetric") {
  const ModelParams params(0.8, 1.0, 1.0, 1.0);
  const auto g = lab(1.5, 60.0, 40.0, 401);
  const double p = 7.0;
  const auto patt = pattern(g, params, p);
  for (std::size_t i = 0; i < patt.screen_coords.size(); ++i) {
    const double expected = 2.0 + 2.0 * std::cos(p / params.kappa() * path_difference(g, patt.screen_coords[i]));
    CHECK(std::abs(patt.intensities[i] - expected) < 1e-10);
    const std::size_t mirror = patt.screen_coords.size() - 1 - i;
    CHECK(std::abs(patt.intensities[i] - patt.intensities[mirror]) < 1e-10);
  }

  // Each sample is computed on its own: a single-point evaluation reproduces it bitwise.
  const std::size_t k = 123;
  const auto [l1, l2] = two_slit_paths(g, patt.screen_coords[k], p);
  const std::array<Amplitude, 2> psi{amplitude(l1, FieldSpec::none(), params),
                                     amplitude(l2, FieldSpec::none(), params)};
  CHECK(intensity(superpose(psi)) == patt.intensities[k]);
}

TEST_CASE("Aharonov-Bohm patterns") {
  const ModelParams params(1.0, 1.0, 1.0, 1.0);
  const auto g = lab(0.5, 100.0, 30.0, 513);
  const double p = 2.0 * kPi;
  const auto plain = pattern(g, params, p);

  const auto shifted = [&](double flux, SpacePoint centre = {0.0, 0.0}) {
    return ab_pattern(ABGeometry(g, IdealSolenoid{centre, flux, 0.05}), params, p);
  };
  const ABGeometry probe(g, IdealSolenoid{{0.0, 0.0}, 1.0, 0.05});
  CHECK(probe.winding() == 1);

  const auto zero = shifted(0.0);
  for (std::size_t i = 0; i < plain.intensities.size(); ++i) {
    CHECK(std::abs(zero.intensities[i] - plain.intensities[i]) < 1e-12);
  }

  const auto half = shifted(kPi);
  CHECK(plain.intensities[256] == doctest::Approx(4.0));
  CHECK(half.intensities[256] < 1e-6);

  const auto full = shifted(2.0 * kPi);
  for (std::size_t i = 0; i < plain.intensities.size(); ++i) {
    CHECK(std::abs(full.intensities[i] - plain.intensities[i]) < 1e-9);
  }

  // Every sample is the flux-free phase offset by q phi / kappa.
  const double flux = 1.234;
  const auto offset = shifted(flux);
  for (std::size_t i = 0; i < offset.intensities.size(); ++i) {
    const double theta = p / params.kappa() * path_difference(g, offset.screen_coords[i]);
    const double expected = 2.0 + 2.0 * std::cos(theta + params.charge() * flux / params.kappa());
    CHECK(std::abs(offset.intensities[i] - expected) < 1e-9);
  }

  // Moving the solenoid by 20% of the slit gap changes nothing.
  const auto moved = shifted(flux, {0.0, 0.2});
  const auto moved_back = shifted(flux, {0.0, -0.2});
  for (std::size_t i = 0; i < offset.intensities.size(); ++i) {
    CHECK(std::abs(moved.intensities[i] - offset.intensities[i]) < 1e-9);
    CHECK(std::abs(moved_back.intensities[i] - offset.intensities[i]) < 1e-9);
  }
}

TEST_CASE("solenoid placement is checked against every sampled path") {
  const auto g = lab(0.5, 100.0, 30.0, 64);
  try {
    ABGeometry(g, IdealSolenoid{{-0.5, 0.25}, 1.0, 0.05});
    FAIL("expected PathIntersectsSolenoidCore");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PathIntersectsSolenoidCore);
  }
  try {
    ABGeometry(g, IdealSolenoid{{0.0, 3.0}, 1.0, 0.05});
    FAIL("expected a not-enclosed rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("fringe_spacing examples") {
  const auto base = synthetic(5.0, 0.0, 512, 0.0, 50.0);
  const auto fit = fit_fringe_spacing(base);
  CHECK(fit.peaks.size() == 9);
  CHECK(std::abs(fit.spacing - 5.0) < 1e-3);

  const auto lifted = synthetic(5.0, 0.5, 512, 0.0, 50.0);
  CHECK(std::abs(fringe_spacing(lifted) - fit.spacing) < 1e-6);

  // Maxima at 5 and 10 only.
  const auto pair = synthetic(5.0, 0.0, 300, 2.0, 13.0);
  try {
    fringe_spacing(pair);
    FAIL("expected TooFewPeaks");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFewPeaks);
  }
}

TEST_CASE("extract_kappa round trips") {
  TwoSlitGeometry g;
  g.source = {-1000.0, 0.0};
  g.slit_a = {0.0, -1000.0};
  g.slit_b = {0.0, 1000.0};
  g.screen_x = 1e6;
  g.screen_span = {-5000.0, 5000.0};
  g.n_samples = 4096;

  for (double kappa : {1.0, 1.0546}) {
    const ModelParams params(kappa, 1.0, 1.0, 1.0);
    const auto estimate = extract_kappa(pattern(g, params, 2.0 * kPi), 2.0 * kPi, g);
    CHECK(estimate.kappa_hat == doctest::Approx(kappa).epsilon(1e-4));
    CHECK(estimate.peaks_used >= 3);
  }

  const ModelParams unit;
  const double before = extract_kappa(pattern(g, unit, 5.0), 5.0, g).kappa_hat;
  auto narrow = g;
  narrow.slit_a = {0.0, -500.0};
  narrow.slit_b = {0.0, 500.0};
  const double after = extract_kappa(pattern(narrow, unit, 10.0), 10.0, narrow).kappa_hat;
  CHECK(after == doctest::Approx(before).epsilon(1e-4));
  CHECK(after == doctest::Approx(1.0).epsilon(1e-4));
}
