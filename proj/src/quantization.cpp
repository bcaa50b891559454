#include "phasekit/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "phasekit/quadrature.hpp"

namespace phasekit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxBracketSteps = 2000;
constexpr int kMaxBisections = 400;
constexpr double kActionTolerance = 1e-9;
constexpr double kBohrTolerance = 1e-10;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double coulomb_strength(const ModelParams& params) {
  const double q = params.charge();
  if (q == 0.0) throw Error(ErrorCode::InvalidCharge, "Coulomb orbit needs a nonzero charge");
  return params.coulomb_constant() * q * q;
}

// Where the interpolant first reaches E walking outward from its minimum
// sample (step -1 to the left, +1 to the right). Exact on the linear piece.
double tabulated_crossing(const Tabulated& tab, double energy, std::ptrdiff_t step) {
  const auto x = tab.x();
  const auto v = tab.v();
  auto i = static_cast<std::ptrdiff_t>(tab.argmin());
  const auto end = step < 0 ? std::ptrdiff_t{-1} : static_cast<std::ptrdiff_t>(x.size());
  for (auto j = i + step; j != end; i = j, j += step) {
    if (v[static_cast<std::size_t>(j)] >= energy) {
      const auto in = static_cast<std::size_t>(i);
      const auto out = static_cast<std::size_t>(j);
      const double t = (energy - v[in]) / (v[out] - v[in]);
      return x[in] + t * (x[out] - x[in]);
    }
  }
  throw Error(ErrorCode::EnergyNotBracketed,
              fmt::format("energy {} is not bracketed by the tabulated potential", energy));
}

// Breakpoints of V strictly inside (lo, hi), where the integrand loses smoothness.
std::vector<double> kinks(const Potential1D& potential, double lo, double hi) {
  std::vector<double> out;
  if (std::holds_alternative<LinearWell>(potential)) {
    if (lo < 0.0 && 0.0 < hi) out.push_back(0.0);
  } else if (const auto* tab = std::get_if<Tabulated>(&potential)) {
    for (double x : tab->x()) {
      if (lo < x && x < hi) out.push_back(x);
    }
  }
  return out;
}

double coulomb_action(const ModelParams& params, double energy) {
  const double strength = coulomb_strength(params);
  if (!(energy < 0.0)) {
    throw Error(ErrorCode::EnergyNotBracketed, "circular Coulomb orbit needs E < 0");
  }
  return kTwoPi * strength * std::sqrt(params.mass() / (-2.0 * energy));
}

// Monotone-increasing root by bisection; stops when the bracket cannot shrink.
template <class F>
double bisect(F&& f, double lo, double hi) {
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double potential_value(const Potential1D& potential, const ModelParams& params, double x) {
  return std::visit(
      overloaded{
          [&](const Harmonic& h) { return 0.5 * params.mass() * h.omega * h.omega * x * x; },
          [&](const LinearWell& l) { return l.slope * std::abs(x); },
          [&](const CoulombCircular&) { return -coulomb_strength(params) / std::abs(x); },
          [&](const Tabulated& t) { return t(x); },
      },
      potential);
}

double potential_minimum(const Potential1D& potential, const ModelParams&) {
  if (std::holds_alternative<CoulombCircular>(potential)) {
    return -std::numeric_limits<double>::infinity();
  }
  if (const auto* t = std::get_if<Tabulated>(&potential)) return t->v()[t->argmin()];
  return 0.0;
}

std::pair<double, double> turning_points(const Potential1D& potential, const ModelParams& params,
                                         double energy) {
  validate(potential);
  if (!std::isfinite(energy)) throw Error(ErrorCode::InvalidArgument, "energy must be finite");
  if (!(energy > potential_minimum(potential, params))) {
    throw Error(ErrorCode::EnergyBelowMinimum,
                fmt::format("energy {} does not exceed the potential minimum", energy));
  }
  return std::visit(
      overloaded{
          [&](const Harmonic& h) {
            const double a = std::sqrt(2.0 * energy / params.mass()) / h.omega;
            return std::pair{-a, a};
          },
          [&](const LinearWell& l) {
            const double a = energy / l.slope;
            return std::pair{-a, a};
          },
          [&](const CoulombCircular&) {
            const double strength = coulomb_strength(params);
            if (!(energy < 0.0)) {
              throw Error(ErrorCode::EnergyNotBracketed, "circular Coulomb orbit needs E < 0");
            }
            const double r = -strength / (2.0 * energy);
            return std::pair{-r, r};
          },
          [&](const Tabulated& t) {
            const auto v = t.v();
            if (!(v.front() > energy && v.back() > energy)) {
              throw Error(ErrorCode::EnergyNotBracketed,
                          fmt::format("energy {} reaches the edge of the tabulated potential", energy));
            }
            return std::pair{tabulated_crossing(t, energy, -1), tabulated_crossing(t, energy, +1)};
          },
      },
      potential);
}

double action_integral(const Potential1D& potential, const ModelParams& params, double energy,
                       std::size_t theta_nodes) {
  if (std::holds_alternative<CoulombCircular>(potential)) return coulomb_action(params, energy);

  const auto [left, right] = turning_points(potential, params, energy);
  const double centre = 0.5 * (left + right);
  const double half = 0.5 * (right - left);
  if (!(half > 0.0)) return 0.0;

  const double two_m = 2.0 * params.mass();
  const auto integrand = [&](double theta) {
    const double x = centre + half * std::sin(theta);
    const double kinetic = std::max(0.0, energy - potential_value(potential, params, x));
    return std::sqrt(two_m * kinetic) * half * std::cos(theta);
  };

  std::vector<double> cuts{-0.5 * std::numbers::pi};
  for (double x : kinks(potential, left, right)) {
    cuts.push_back(std::asin(std::clamp((x - centre) / half, -1.0, 1.0)));
  }
  cuts.push_back(0.5 * std::numbers::pi);

  const auto& rule = gauss_legendre(theta_nodes);
  double sum = 0.0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (cuts[i] > cuts[i - 1]) sum += rule.integrate(integrand, cuts[i - 1], cuts[i]);
  }
  return 2.0 * sum;
}

double target_action(QuantizationRule rule, unsigned level, const ModelParams& params) {
  const double offset = rule == QuantizationRule::HalfInteger ? 0.5 : 0.0;
  return kTwoPi * params.kappa() * (static_cast<double>(level) + offset);
}

EnergyLevel quantize_level(const QuantizationProblem& problem, const ModelParams& params) {
  const auto& potential = problem.potential;
  validate(potential);
  const double target = target_action(problem.rule, problem.level, params);
  if (!(target > 0.0)) {
    throw Error(ErrorCode::ZeroActionTarget,
                "integer rule with n = 0 has zero action and no orbit");
  }
  const auto excess = [&](double e) { return action_integral(potential, params, e) - target; };

  double lo = 0.0;
  double hi = 0.0;
  if (std::holds_alternative<CoulombCircular>(potential)) {
    coulomb_strength(params);
    double e = -1.0;
    int steps = 0;
    if (excess(e) > 0.0) {
      while (excess(e) > 0.0 && ++steps < kMaxBracketSteps) e *= 2.0;
      lo = e;
      hi = e / 2.0;
    } else {
      while (excess(e) < 0.0 && ++steps < kMaxBracketSteps) e /= 2.0;
      lo = 2.0 * e;
      hi = e;
    }
    if (steps >= kMaxBracketSteps) throw Error(ErrorCode::BracketNotFound, "no Coulomb energy bracket");
  } else {
    const double floor = potential_minimum(potential, params);
    double ceiling = std::numeric_limits<double>::infinity();
    if (const auto* t = std::get_if<Tabulated>(&potential)) {
      ceiling = std::min(t->v().front(), t->v().back());
    }
    double width = params.kappa() * 1e-3;
    lo = floor;
    hi = floor + width;
    int steps = 0;
    while (true) {
      if (hi >= ceiling) {
        hi = floor + (ceiling - floor) * (1.0 - 1e-12);
        if (excess(hi) < 0.0) {
          throw Error(ErrorCode::BracketNotFound,
                      fmt::format("level {} lies above the tabulated ceiling {}", problem.level, ceiling));
        }
        break;
      }
      if (excess(hi) >= 0.0) break;
      if (++steps >= kMaxBracketSteps || !std::isfinite(hi)) {
        throw Error(ErrorCode::BracketNotFound, "energy bracket expansion did not terminate");
      }
      lo = hi;
      width *= 2.0;
      hi = floor + width;
    }
  }

  const double energy = bisect(excess, lo, hi);
  const double action = action_integral(potential, params, energy);
  if (std::abs(action - target) > kActionTolerance * target) {
    throw Error(ErrorCode::NotConverged,
                fmt::format("level {}: action {} misses target {}", problem.level, action, target));
  }
  return {problem.level, energy, action};
}

std::vector<OrbitLevel> hydrogen_circular_levels(const ModelParams& params, unsigned n_max) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be >= 1");
  const double strength = coulomb_strength(params);
  const double m = params.mass();

  std::vector<OrbitLevel> levels;
  levels.reserve(n_max);
  for (unsigned n = 1; n <= n_max; ++n) {
    const double target = kTwoPi * params.kappa() * static_cast<double>(n);
    // Force balance m v^2 / r = k q^2 / r^2 fixes v(r); the action 2 pi m v r
    // then increases with r.
    const auto speed = [&](double r) { return std::sqrt(strength / (m * r)); };
    const auto excess = [&](double r) { return kTwoPi * m * speed(r) * r - target; };

    double lo = 1.0;
    double hi = 1.0;
    int steps = 0;
    while (excess(lo) > 0.0 && ++steps < kMaxBracketSteps) lo /= 2.0;
    while (excess(hi) < 0.0 && ++steps < kMaxBracketSteps) hi *= 2.0;
    if (steps >= kMaxBracketSteps) throw Error(ErrorCode::BracketNotFound, "no orbit radius bracket");

    const double r = bisect(excess, lo, hi);
    const double v = speed(r);
    const double energy = 0.5 * m * v * v - strength / r;

    const double kappa = params.kappa();
    const double closed = -m * strength * strength / (2.0 * kappa * kappa * n * n);
    if (std::abs(energy - closed) > kBohrTolerance * std::abs(closed)) {
      throw Error(ErrorCode::NotConverged,
                  fmt::format("orbit n={}: energy {} disagrees with closed form {}", n, energy, closed));
    }
    levels.push_back({n, energy, kTwoPi * m * v * r, r, v});
  }
  return levels;
}

}  // namespace phasekit
