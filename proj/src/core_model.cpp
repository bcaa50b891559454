#include "phasekit/core_model.hpp"

#include <algorithm>
#include <numbers>
#include <string>

namespace phasekit {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

ModelParams::ModelParams(double kappa, double mass, double charge, double coulomb_constant)
    : kappa_(kappa), mass_(mass), charge_(charge), coulomb_constant_(coulomb_constant) {
  require(positive_finite(kappa), "kappa must be > 0");
  require(positive_finite(mass), "mass must be > 0");
  require(std::isfinite(charge), "charge must be finite");
  require(positive_finite(coulomb_constant), "coulomb_constant must be > 0");
}

ModelParams ModelParams::with_kappa(double kappa) const {
  return {kappa, mass_, charge_, coulomb_constant_};
}

Path::Path(std::vector<SpacePoint> vertices, double momentum)
    : vertices_(std::move(vertices)), momentum_(momentum) {
  require(!vertices_.empty(), "path needs at least one vertex");
  require(std::isfinite(momentum_) && momentum_ >= 0.0, "path momentum must be finite and >= 0");
  for (const auto& v : vertices_) require(v.finite(), "path vertex is not finite");
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    require(distance(vertices_[i - 1], vertices_[i]) > 0.0, "path segment has zero length");
  }
}

SpacePoint Path::final_tangent() const noexcept {
  if (vertices_.size() < 2) return {};
  const SpacePoint d = vertices_.back() - vertices_[vertices_.size() - 2];
  return (1.0 / norm(d)) * d;
}

Path Path::then(const Path& next) const {
  require(distance(end(), next.start()) <= 1e-12 * std::max(1.0, norm(end())),
          "concatenated paths must share the joining point");
  std::vector<SpacePoint> joined = vertices_;
  joined.insert(joined.end(), next.vertices_.begin() + 1, next.vertices_.end());
  return {std::move(joined), momentum_};
}

Path Path::reversed() const {
  return {std::vector<SpacePoint>(vertices_.rbegin(), vertices_.rend()), momentum_};
}

Path Path::with_end(SpacePoint end) const {
  std::vector<SpacePoint> moved = vertices_;
  moved.back() = end;
  return {std::move(moved), momentum_};
}

double arc_length(const Path& path) {
  const auto v = path.vertices();
  double total = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) total += distance(v[i - 1], v[i]);
  return total;
}

FieldSpec::FieldSpec(FieldComponent component) {
  if (const auto* s = std::get_if<IdealSolenoid>(&component)) {
    require(s->center.finite() && std::isfinite(s->flux), "solenoid parameters must be finite");
    require(positive_finite(s->core_radius), "solenoid core_radius must be > 0");
  }
  if (const auto* g = std::get_if<GradientField>(&component)) {
    require(g->potential && g->gradient, "gradient field needs potential and gradient");
  }
  if (!std::holds_alternative<NoField>(component)) components_.push_back(std::move(component));
}

FieldSpec FieldSpec::solenoid(SpacePoint center, double flux, double core_radius) {
  return FieldSpec(IdealSolenoid{center, flux, core_radius});
}

FieldSpec FieldSpec::gradient(std::function<double(SpacePoint)> potential,
                              std::function<SpacePoint(SpacePoint)> gradient) {
  return FieldSpec(GradientField{std::move(potential), std::move(gradient)});
}

SpacePoint FieldSpec::potential_at(SpacePoint at) const {
  SpacePoint a{};
  for (const auto& c : components_) {
    if (const auto* s = std::get_if<IdealSolenoid>(&c)) {
      const SpacePoint r = at - s->center;
      const double r2 = dot(r, r);
      a = a + (s->flux / (2.0 * std::numbers::pi * r2)) * SpacePoint{-r.y, r.x};
    } else if (const auto* g = std::get_if<GradientField>(&c)) {
      a = a + g->gradient(at);
    }
  }
  return a;
}

FieldSpec operator+(FieldSpec a, const FieldSpec& b) {
  a.components_.insert(a.components_.end(), b.components_.begin(), b.components_.end());
  return a;
}

FieldSpec quadratic_gauge(double a, double b, double c, double d, double e) {
  return FieldSpec::gradient(
      [=](SpacePoint p) { return a * p.x * p.x + b * p.y * p.y + c * p.x * p.y + d * p.x + e * p.y; },
      [=](SpacePoint p) {
        return SpacePoint{2.0 * a * p.x + c * p.y + d, 2.0 * b * p.y + c * p.x + e};
      });
}

void FringePattern::validate(bool two_path) const {
  require(screen_coords.size() == intensities.size(),
          "fringe pattern coordinates and intensities differ in length");
  for (std::size_t i = 0; i < screen_coords.size(); ++i) {
    require(std::isfinite(screen_coords[i]) && std::isfinite(intensities[i]),
            "fringe pattern entries must be finite");
    if (i > 0) {
      require(screen_coords[i] > screen_coords[i - 1],
              "fringe pattern screen coordinates must be strictly increasing");
    }
    if (two_path) {
      require(intensities[i] >= -1e-12 && intensities[i] <= 4.0 + 1e-12,
              "two-path intensity outside [0, 4]");
    }
  }
}

Tabulated::Tabulated(std::vector<double> x, std::vector<double> v)
    : x_(std::move(x)), v_(std::move(v)) {
  require(x_.size() == v_.size(), "tabulated potential needs equal-length x and V");
  require(x_.size() >= 2, "tabulated potential needs at least two samples");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    require(std::isfinite(x_[i]) && std::isfinite(v_[i]), "tabulated samples must be finite");
    if (i > 0) require(x_[i] > x_[i - 1], "tabulated x must be strictly increasing");
  }
  argmin_ = static_cast<std::size_t>(std::min_element(v_.begin(), v_.end()) - v_.begin());
}

double Tabulated::operator()(double at) const {
  if (at <= x_.front()) return v_.front();
  if (at >= x_.back()) return v_.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), at) - x_.begin());
  const std::size_t lo = hi - 1;
  const double t = (at - x_[lo]) / (x_[hi] - x_[lo]);
  return v_[lo] + t * (v_[hi] - v_[lo]);
}

void validate(const Potential1D& potential) {
  if (const auto* h = std::get_if<Harmonic>(&potential)) {
    require(positive_finite(h->omega), "harmonic omega must be > 0");
  } else if (const auto* l = std::get_if<LinearWell>(&potential)) {
    require(positive_finite(l->slope), "linear well slope must be > 0");
  }
}

}  // namespace phasekit
