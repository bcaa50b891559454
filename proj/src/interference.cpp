#include "phasekit/interference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace phasekit {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

void require_momentum(double p) {
  require(std::isfinite(p) && p > 0.0, "momentum must be > 0");
}

// Distance from c to the segment a -> b.
double segment_distance(SpacePoint a, SpacePoint b, SpacePoint c) {
  const SpacePoint ab = b - a;
  const double t = std::clamp(dot(c - a, ab) / dot(ab, ab), 0.0, 1.0);
  return distance(a + t * ab, c);
}

FringePattern sample_pattern(const TwoSlitGeometry& geom, const ModelParams& params,
                             double momentum, const FieldSpec& field) {
  FringePattern out;
  out.screen_coords = geom.screen_points();
  out.intensities.resize(out.screen_coords.size());
  for (std::size_t i = 0; i < out.screen_coords.size(); ++i) {
    const auto [l1, l2] = two_slit_paths(geom, out.screen_coords[i], momentum);
    const std::array<Amplitude, 2> psi{amplitude(l1, field, params), amplitude(l2, field, params)};
    out.intensities[i] = intensity(superpose(psi));
  }
  out.source = PatternSource{momentum, params, std::nullopt};
  return out;
}

}  // namespace

void TwoSlitGeometry::validate() const {
  require(source.finite() && slit_a.finite() && slit_b.finite() && std::isfinite(screen_x),
          "two-slit geometry coordinates must be finite");
  require(!(slit_a == slit_b), "slit_a and slit_b must differ");
  require(!(source == slit_a) && !(source == slit_b), "source must not coincide with a slit");
  require(screen_x > slit_a.x && screen_x > slit_b.x, "screen_x must lie beyond both slits");
  require(std::isfinite(screen_span.first) && std::isfinite(screen_span.second) &&
              screen_span.first < screen_span.second,
          "screen_span must be an increasing pair");
  require(n_samples >= 8, "n_samples must be >= 8");
}

std::vector<double> TwoSlitGeometry::screen_points() const {
  const auto [lo, hi] = screen_span;
  const double last = static_cast<double>(n_samples - 1);
  std::vector<double> points(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) / last;
    points[i] = (1.0 - t) * lo + t * hi;
  }
  points.back() = hi;
  return points;
}

ABGeometry::ABGeometry(TwoSlitGeometry base, IdealSolenoid solenoid)
    : base_(std::move(base)), solenoid_(solenoid) {
  base_.validate();
  require(solenoid_.center.finite() && std::isfinite(solenoid_.flux), "solenoid must be finite");
  require(std::isfinite(solenoid_.core_radius) && solenoid_.core_radius > 0.0,
          "solenoid core_radius must be > 0");

  for (double s : base_.screen_points()) {
    const auto [l1, l2] = two_slit_paths(base_, s);
    for (const Path* path : {&l1, &l2}) {
      const auto v = path->vertices();
      for (std::size_t i = 1; i < v.size(); ++i) {
        if (segment_distance(v[i - 1], v[i], solenoid_.center) < solenoid_.core_radius) {
          throw Error(ErrorCode::PathIntersectsSolenoidCore,
                      fmt::format("path to screen point {} passes through the solenoid core", s));
        }
      }
    }
    const int w = winding_number(l1.then(l2.reversed()), solenoid_.center);
    if (w == 0 || (winding_ != 0 && w != winding_)) {
      throw Error(ErrorCode::InvalidArgument,
                  fmt::format("solenoid is not enclosed between the paths for screen point {}", s));
    }
    winding_ = w;
  }
}

std::pair<Path, Path> two_slit_paths(const TwoSlitGeometry& geom, double screen_point,
                                     double momentum) {
  geom.validate();
  const auto [lo, hi] = geom.screen_span;
  if (!(screen_point >= lo && screen_point <= hi)) {
    throw Error(ErrorCode::OutOfSpan,
                fmt::format("screen point {} outside span [{}, {}]", screen_point, lo, hi));
  }
  const SpacePoint target{geom.screen_x, screen_point};
  return {Path({geom.source, geom.slit_a, target}, momentum),
          Path({geom.source, geom.slit_b, target}, momentum)};
}

FringePattern pattern(const TwoSlitGeometry& geom, const ModelParams& params, double momentum) {
  require_momentum(momentum);
  geom.validate();
  return sample_pattern(geom, params, momentum, FieldSpec::none());
}

FringePattern ab_pattern(const ABGeometry& geom, const ModelParams& params, double momentum) {
  require_momentum(momentum);
  const auto& s = geom.solenoid();
  auto out = sample_pattern(geom.base(), params, momentum,
                            FieldSpec::solenoid(s.center, s.flux, s.core_radius));
  out.source->solenoid = s;
  return out;
}

SpacingFit fit_fringe_spacing(const FringePattern& patt) {
  patt.validate(false);
  const auto& x = patt.screen_coords;
  const auto& w = patt.intensities;

  SpacingFit fit;
  if (x.size() >= 3) {
    const auto [lo_it, hi_it] = std::minmax_element(w.begin(), w.end());
    const double threshold = 0.5 * (*lo_it + *hi_it);
    for (std::size_t i = 1; i + 1 < x.size(); ++i) {
      if (!(w[i] > w[i - 1] && w[i] >= w[i + 1] && w[i] > threshold)) continue;
      // Vertex of the parabola through the three samples.
      const double d0 = x[i] - x[i - 1];
      const double d2 = x[i] - x[i + 1];
      const double numer = d0 * d0 * (w[i] - w[i + 1]) - d2 * d2 * (w[i] - w[i - 1]);
      const double denom = d0 * (w[i] - w[i + 1]) - d2 * (w[i] - w[i - 1]);
      fit.peaks.push_back(denom != 0.0 ? x[i] - 0.5 * numer / denom : x[i]);
    }
  }
  if (fit.peaks.size() < 3) {
    throw Error(ErrorCode::TooFewPeaks,
                fmt::format("found {} interior maxima, need at least 3", fit.peaks.size()));
  }

  const double k = static_cast<double>(fit.peaks.size());
  const double mean_index = 0.5 * (k - 1.0);
  double mean_pos = 0.0;
  for (double p : fit.peaks) mean_pos += p;
  mean_pos /= k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < fit.peaks.size(); ++i) {
    const double di = static_cast<double>(i) - mean_index;
    sxy += di * (fit.peaks[i] - mean_pos);
    sxx += di * di;
  }
  fit.spacing = sxy / sxx;
  return fit;
}

double path_difference_slope(const TwoSlitGeometry& geom, double screen_point) {
  const SpacePoint target{geom.screen_x, screen_point};
  const double la = distance(target, geom.slit_a);
  const double lb = distance(target, geom.slit_b);
  return (screen_point - geom.slit_a.y) / la - (screen_point - geom.slit_b.y) / lb;
}

KappaEstimate extract_kappa(const FringePattern& patt, double momentum, const TwoSlitGeometry& geom) {
  require_momentum(momentum);
  geom.validate();
  const auto fit = fit_fringe_spacing(patt);
  const double centre = 0.5 * (geom.screen_span.first + geom.screen_span.second);
  const double slope = std::abs(path_difference_slope(geom, centre));
  if (!(slope > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "path difference is stationary at the span centre");
  }
  const double period = slope * fit.spacing;
  return {momentum * period / (2.0 * std::numbers::pi), fit.spacing, fit.peaks.size()};
}

}  // namespace phasekit
