#include "phasekit/phase_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "phasekit/quadrature.hpp"

namespace phasekit {

namespace {

constexpr double kGaugePanelLength = 1.0;
constexpr double kEndpointTolerance = 1e-9;
constexpr double kDivergenceFloor = 1e-12;

// Integral of the solenoid potential along the segment a -> b. The integrand
// is flux/(2 pi) * h / (h^2 + (t - t0)^2) with h the signed perpendicular
// offset, so panels double in width away from the closest point.
double solenoid_segment(const IdealSolenoid& s, SpacePoint a, SpacePoint b,
                        const GaussLegendre& rule) {
  const double length = distance(a, b);
  const SpacePoint u = (1.0 / length) * (b - a);
  const SpacePoint rel = a - s.center;
  const double t_line = -dot(rel, u);
  const double t_near = std::clamp(t_line, 0.0, length);
  const double closest = norm(rel + t_near * u);
  if (closest < s.core_radius) {
    throw Error(ErrorCode::PathIntersectsSolenoidCore,
                fmt::format("segment ({}, {}) -> ({}, {}) passes {:.6g} from solenoid centre, "
                            "inside core radius {:.6g}",
                            a.x, a.y, b.x, b.y, closest, s.core_radius));
  }

  const double offset = cross(rel, u);
  const auto integrand = [&](double t) {
    const SpacePoint r = rel + t * u;
    return offset / dot(r, r);
  };

  std::vector<double> cuts{t_near};
  for (double w = closest; t_near + w < length; w *= 2.0) cuts.push_back(t_near + w);
  cuts.push_back(length);
  for (double w = closest; t_near - w > 0.0; w *= 2.0) cuts.push_back(t_near - w);
  cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double sum = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) sum += rule.integrate(integrand, cuts[i - 1], cuts[i]);
  return s.flux / (2.0 * std::numbers::pi) * sum;
}

double gradient_segment(const GradientField& g, SpacePoint a, SpacePoint b,
                        const GaussLegendre& rule) {
  const double length = distance(a, b);
  const SpacePoint u = (1.0 / length) * (b - a);
  const auto panels = static_cast<std::size_t>(std::max(1.0, std::ceil(length / kGaugePanelLength)));
  const double width = length / static_cast<double>(panels);
  const auto integrand = [&](double t) { return dot(g.gradient(a + t * u), u); };
  double sum = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    sum += rule.integrate(integrand, width * static_cast<double>(i), width * static_cast<double>(i + 1));
  }
  return sum;
}

}  // namespace

double vector_potential_integral(const Path& path, const FieldSpec& field, std::size_t order) {
  const auto& rule = gauss_legendre(order);
  const auto v = path.vertices();
  double total = 0.0;
  for (const auto& component : field.components()) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (const auto* s = std::get_if<IdealSolenoid>(&component)) {
        total += solenoid_segment(*s, v[i - 1], v[i], rule);
      } else if (const auto* g = std::get_if<GradientField>(&component)) {
        total += gradient_segment(*g, v[i - 1], v[i], rule);
      }
    }
  }
  return total;
}

double action_phase(const Path& path, const FieldSpec& field, const ModelParams& params,
                    std::size_t order) {
  const double kinetic = path.momentum() * arc_length(path);
  const double potential = vector_potential_integral(path, field, order);
  return (kinetic + params.charge() * potential) / params.kappa();
}

Amplitude amplitude(const Path& path, const FieldSpec& field, const ModelParams& params,
                    std::size_t order) {
  return std::polar(1.0, action_phase(path, field, params, order));
}

Amplitude superpose(std::span<const Amplitude> amplitudes) {
  if (amplitudes.empty()) throw Error(ErrorCode::EmptyList, "superpose needs at least one amplitude");
  Amplitude sum{};
  for (const auto& a : amplitudes) sum += a;
  return sum;
}

ComplexVector2 average_momentum(std::span<const Path> paths, const FieldSpec& field,
                                const ModelParams& params) {
  if (paths.empty()) throw Error(ErrorCode::EmptyList, "average_momentum needs at least one path");
  const SpacePoint start = paths.front().start();
  const SpacePoint end = paths.front().end();
  for (const auto& p : paths) {
    if (distance(p.start(), start) > kEndpointTolerance || distance(p.end(), end) > kEndpointTolerance) {
      throw Error(ErrorCode::MismatchedEndpoints, "paths in an average must share both endpoints");
    }
  }

  ComplexVector2 numerator{};
  Amplitude denominator{};
  for (const auto& p : paths) {
    const Amplitude psi = amplitude(p, field, params);
    const SpacePoint momentum = p.momentum() * p.final_tangent();
    numerator[0] += momentum.x * psi;
    numerator[1] += momentum.y * psi;
    denominator += psi;
  }
  if (std::abs(denominator) < kDivergenceFloor) {
    throw Error(ErrorCode::DivergentAverage,
                fmt::format("amplitude sum {:.3g} vanishes; average momentum is undefined",
                            std::abs(denominator)));
  }
  return {numerator[0] / denominator, numerator[1] / denominator};
}

double verify_momentum_relation(const Path& path, const FieldSpec& field,
                                const ModelParams& params, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorCode::InvalidArgument, "difference step must be > 0");
  }
  if (path.segment_count() == 0) {
    throw Error(ErrorCode::InvalidArgument, "momentum relation needs a path with a final segment");
  }

  const SpacePoint end = path.end();
  const Amplitude psi = amplitude(path, field, params);
  const SpacePoint kinetic = path.momentum() * path.final_tangent();
  const SpacePoint potential = field.potential_at(end);
  const std::array<SpacePoint, 2> axes{SpacePoint{1.0, 0.0}, SpacePoint{0.0, 1.0}};
  const std::array<double, 2> expected_factor{kinetic.x + params.charge() * potential.x,
                                              kinetic.y + params.charge() * potential.y};

  const std::complex<double> minus_i_kappa{0.0, -params.kappa()};
  double residual = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const Amplitude forward = amplitude(path.with_end(end + step * axes[k]), field, params);
    const Amplitude backward = amplitude(path.with_end(end - step * axes[k]), field, params);
    const Amplitude derivative = (forward - backward) / (2.0 * step);
    residual = std::max(residual, std::abs(minus_i_kappa * derivative - expected_factor[k] * psi));
  }
  return residual;
}

int winding_number(const Path& loop, SpacePoint around) {
  const auto v = loop.vertices();
  double turned = 0.0;
  const auto turn = [&](SpacePoint from, SpacePoint to) {
    const SpacePoint a = from - around;
    const SpacePoint b = to - around;
    turned += std::atan2(cross(a, b), dot(a, b));
  };
  for (std::size_t i = 1; i < v.size(); ++i) turn(v[i - 1], v[i]);
  if (!(v.back() == v.front())) turn(v.back(), v.front());
  return static_cast<int>(std::lround(turned / (2.0 * std::numbers::pi)));
}

}  // namespace phasekit
