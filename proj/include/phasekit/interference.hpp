#pragma once

// Two-path interference: double slit, the same with an enclosed solenoid,
// and the inverse problem of reading kappa off a measured fringe spacing.

#include <cstddef>
#include <utility>
#include <vector>

#include "phasekit/core_model.hpp"
#include "phasekit/phase_engine.hpp"

namespace phasekit {

/// Point source, two point slits and a screen on the line x = screen_x.
/// Path l1 runs through slit_a, l2 through slit_b.
struct TwoSlitGeometry {
  SpacePoint source;
  SpacePoint slit_a;
  SpacePoint slit_b;
  double screen_x = 0.0;
  std::pair<double, double> screen_span{0.0, 0.0};
  std::size_t n_samples = 512;

  void validate() const;

  /// n_samples equally spaced points covering the closed span.
  std::vector<double> screen_points() const;
};

/// Two-slit geometry with an ideal solenoid enclosed between the two paths
/// for every sampled screen point (checked on construction).
class ABGeometry {
 public:
  ABGeometry(TwoSlitGeometry base, IdealSolenoid solenoid);

  const TwoSlitGeometry& base() const noexcept { return base_; }
  const IdealSolenoid& solenoid() const noexcept { return solenoid_; }

  /// Winding number of l1 followed by reversed l2 around the solenoid; the
  /// flux phase enters W as cos(theta + winding * q * flux / kappa).
  int winding() const noexcept { return winding_; }

 private:
  TwoSlitGeometry base_;
  IdealSolenoid solenoid_;
  int winding_ = 0;
};

std::pair<Path, Path> two_slit_paths(const TwoSlitGeometry& geom, double screen_point,
                                     double momentum = 1.0);

FringePattern pattern(const TwoSlitGeometry& geom, const ModelParams& params, double momentum);

FringePattern ab_pattern(const ABGeometry& geom, const ModelParams& params, double momentum);

struct SpacingFit {
  double spacing = 0.0;
  std::vector<double> peaks;  // refined positions, ascending
};

/// Interior maxima by 3-point comparison, refined by a parabola through each
/// maximum and its neighbours; the spacing is the least-squares slope of
/// peak position against peak index. Maxima below the midpoint between the
/// pattern's extreme values are ignored.
SpacingFit fit_fringe_spacing(const FringePattern& patt);

inline double fringe_spacing(const FringePattern& patt) { return fit_fringe_spacing(patt).spacing; }

/// d(l1 - l2)/d(screen coordinate) at the given screen point.
double path_difference_slope(const TwoSlitGeometry& geom, double screen_point);

struct KappaEstimate {
  double kappa_hat = 0.0;
  double fringe_spacing = 0.0;
  std::size_t peaks_used = 0;
};

/// kappa = p * (fringe spacing * path-difference slope at the span centre) / (2 pi).
KappaEstimate extract_kappa(const FringePattern& patt, double momentum, const TwoSlitGeometry& geom);

}  // namespace phasekit
