#pragma once

// Domain types shared by the phase engine, the interference geometry and the
// quantization solver. Everything here is immutable after construction.
//
// Units are dimensionless: kappa, mass, charge and the Coulomb constant are
// free inputs (default 1). Nothing in the library assumes kappa equals hbar.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phasekit/error.hpp"

namespace phasekit {

class ModelParams {
 public:
  ModelParams() = default;
  ModelParams(double kappa, double mass, double charge, double coulomb_constant);

  double kappa() const noexcept { return kappa_; }
  double mass() const noexcept { return mass_; }
  double charge() const noexcept { return charge_; }
  double coulomb_constant() const noexcept { return coulomb_constant_; }

  ModelParams with_kappa(double kappa) const;

 private:
  double kappa_ = 1.0;
  double mass_ = 1.0;
  double charge_ = 1.0;
  double coulomb_constant_ = 1.0;
};

/// Planar point / displacement. Problems here are either planar or 1-D
/// embedded on the x axis.
struct SpacePoint {
  double x = 0.0;
  double y = 0.0;

  friend SpacePoint operator+(SpacePoint a, SpacePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend SpacePoint operator-(SpacePoint a, SpacePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend SpacePoint operator*(double s, SpacePoint a) { return {s * a.x, s * a.y}; }
  friend bool operator==(SpacePoint, SpacePoint) = default;

  bool finite() const noexcept { return std::isfinite(x) && std::isfinite(y); }
};

inline double dot(SpacePoint a, SpacePoint b) { return a.x * b.x + a.y * b.y; }
inline double cross(SpacePoint a, SpacePoint b) { return a.x * b.y - a.y * b.x; }
inline double norm(SpacePoint a) { return std::hypot(a.x, a.y); }
inline double distance(SpacePoint a, SpacePoint b) { return norm(a - b); }

/// Polyline traversed at constant momentum magnitude along its local tangent.
class Path {
 public:
  Path(std::vector<SpacePoint> vertices, double momentum);

  std::span<const SpacePoint> vertices() const noexcept { return vertices_; }
  double momentum() const noexcept { return momentum_; }
  SpacePoint start() const noexcept { return vertices_.front(); }
  SpacePoint end() const noexcept { return vertices_.back(); }
  std::size_t segment_count() const noexcept { return vertices_.size() - 1; }

  /// Unit tangent of the last segment; zero vector for a single-vertex path.
  SpacePoint final_tangent() const noexcept;

  /// Concatenation; `next` must start where this path ends.
  Path then(const Path& next) const;
  Path reversed() const;
  Path with_end(SpacePoint end) const;

 private:
  std::vector<SpacePoint> vertices_;
  double momentum_;
};

double arc_length(const Path& path);

// Vector-potential components. A FieldSpec is a superposition of them.

struct NoField {};

/// Infinitely long ideal solenoid perpendicular to the plane. Outside the
/// core the potential is azimuthal, |A| = flux / (2 pi r), counterclockwise
/// for positive flux; there is no magnetic field there.
struct IdealSolenoid {
  SpacePoint center;
  double flux = 0.0;
  double core_radius = 0.0;
};

/// Pure-gauge potential A = grad chi. The gradient is carried explicitly.
struct GradientField {
  std::function<double(SpacePoint)> potential;
  std::function<SpacePoint(SpacePoint)> gradient;
};

using FieldComponent = std::variant<NoField, IdealSolenoid, GradientField>;

class FieldSpec {
 public:
  FieldSpec() = default;
  FieldSpec(FieldComponent component);  // NOLINT(google-explicit-constructor)

  static FieldSpec none() { return {}; }
  static FieldSpec solenoid(SpacePoint center, double flux, double core_radius);
  static FieldSpec gradient(std::function<double(SpacePoint)> potential,
                            std::function<SpacePoint(SpacePoint)> gradient);

  std::span<const FieldComponent> components() const noexcept { return components_; }

  /// Vector potential at a point (sum over components).
  SpacePoint potential_at(SpacePoint at) const;

  friend FieldSpec operator+(FieldSpec a, const FieldSpec& b);

 private:
  std::vector<FieldComponent> components_;
};

/// Quadratic gauge function chi = a x^2 + b y^2 + c x y + d x + e y.
FieldSpec quadratic_gauge(double a, double b, double c, double d = 0.0, double e = 0.0);

// Fringe data. `source` records how a pattern was generated, when known.

struct PatternSource {
  double momentum = 0.0;
  ModelParams params;
  std::optional<IdealSolenoid> solenoid;
};

struct FringePattern {
  std::vector<double> screen_coords;
  std::vector<double> intensities;
  std::optional<PatternSource> source;

  /// Checks equal lengths and strictly increasing coordinates. When
  /// `two_path` is set, also checks 0 <= W <= 4 (up to rounding).
  void validate(bool two_path = true) const;
};

// One-dimensional potentials.

/// V = m omega^2 x^2 / 2.
struct Harmonic {
  double omega = 1.0;
};

/// V = slope |x|.
struct LinearWell {
  double slope = 1.0;
};

/// Circular hydrogen-like orbit, V = -k q^2 / r in the orbit plane.
struct CoulombCircular {};

/// Piecewise-linear interpolant of (x, V) samples, x strictly increasing.
class Tabulated {
 public:
  Tabulated(std::vector<double> x, std::vector<double> v);

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> v() const noexcept { return v_; }

  double operator()(double at) const;
  std::size_t argmin() const noexcept { return argmin_; }

 private:
  std::vector<double> x_;
  std::vector<double> v_;
  std::size_t argmin_ = 0;
};

using Potential1D = std::variant<Harmonic, LinearWell, CoulombCircular, Tabulated>;

void validate(const Potential1D& potential);

enum class QuantizationRule {
  Integer,      // closed orbit: action = 2 pi kappa n
  HalfInteger,  // 1-D well: action = 2 pi kappa (n + 1/2)
};

struct QuantizationProblem {
  Potential1D potential;
  QuantizationRule rule = QuantizationRule::HalfInteger;
  unsigned level = 0;
};

}  // namespace phasekit
