#pragma once

// Bound states from the closed-orbit action condition
//
//   integral of p dx over one period = 2 pi kappa (n + delta),
//
// with delta = 0 for closed orbits and delta = 1/2 for 1-D wells, and the
// nonrelativistic momentum p(x) = sqrt(2 m (E - V(x))).

#include <cstddef>
#include <utility>
#include <vector>

#include "phasekit/core_model.hpp"

namespace phasekit {

inline constexpr std::size_t kDefaultThetaNodes = 128;

struct EnergyLevel {
  unsigned n = 0;
  double energy = 0.0;
  double action = 0.0;
};

struct OrbitLevel {
  unsigned n = 0;
  double energy = 0.0;
  double action = 0.0;
  double radius = 0.0;
  double speed = 0.0;
};

/// V(x). For CoulombCircular, x is the orbit radius.
double potential_value(const Potential1D& potential, const ModelParams& params, double x);

/// Lowest value of V; -infinity for CoulombCircular.
double potential_minimum(const Potential1D& potential, const ModelParams& params);

/// (x_L, x_R) with V = E at both ends. For CoulombCircular the pair is
/// (-r, r), r being the radius of the circular orbit of energy E.
std::pair<double, double> turning_points(const Potential1D& potential, const ModelParams& params,
                                         double energy);

/// Closed-orbit action at energy E. For 1-D wells this is
/// 2 * integral_{x_L}^{x_R} p dx, evaluated with x = x_c + x_h sin(theta)
/// so the turning-point square-root singularities disappear.
double action_integral(const Potential1D& potential, const ModelParams& params, double energy,
                       std::size_t theta_nodes = kDefaultThetaNodes);

/// 2 pi kappa (n + delta).
double target_action(QuantizationRule rule, unsigned level, const ModelParams& params);

EnergyLevel quantize_level(const QuantizationProblem& problem, const ModelParams& params);

/// Circular Coulomb orbits for n = 1..n_max from force balance plus the
/// integer action rule, cross-checked against -m k^2 q^4 / (2 kappa^2 n^2).
std::vector<OrbitLevel> hydrogen_circular_levels(const ModelParams& params, unsigned n_max);

}  // namespace phasekit
