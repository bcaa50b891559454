#pragma once

// Path phases and amplitudes.
//
// The phase of a path is (1/kappa) * [p * length + q * integral of A . dl];
// its amplitude is exp(i * phase). Amplitudes of several paths joining the
// same endpoints are summed, and |psi|^2 is the intensity. Time components
// are not modelled: every configuration here is stationary.

#include <array>
#include <complex>
#include <cstddef>
#include <span>

#include "phasekit/core_model.hpp"

namespace phasekit {

using Amplitude = std::complex<double>;
using ComplexVector2 = std::array<std::complex<double>, 2>;

inline constexpr std::size_t kDefaultQuadratureOrder = 16;
inline constexpr double kDefaultDifferenceStep = 1e-4;

/// Line integral of the vector potential along the polyline. Solenoid terms
/// use Gauss-Legendre panels graded toward the point of closest approach.
///
/// Throws PathIntersectsSolenoidCore when a segment comes closer to a
/// solenoid centre than its core radius.
double vector_potential_integral(const Path& path, const FieldSpec& field,
                                 std::size_t order = kDefaultQuadratureOrder);

double action_phase(const Path& path, const FieldSpec& field, const ModelParams& params,
                    std::size_t order = kDefaultQuadratureOrder);

Amplitude amplitude(const Path& path, const FieldSpec& field, const ModelParams& params,
                    std::size_t order = kDefaultQuadratureOrder);

Amplitude superpose(std::span<const Amplitude> amplitudes);

inline double intensity(Amplitude psi) { return std::norm(psi); }

/// Amplitude-weighted mean of p * t_i over paths sharing both endpoints,
/// t_i being each path's final unit tangent. The result may be complex.
ComplexVector2 average_momentum(std::span<const Path> paths, const FieldSpec& field,
                                const ModelParams& params);

/// Max-norm residual of -i kappa grad(psi) - (p t + q A) psi at the path's
/// final vertex, with grad(psi) from central differences obtained by moving
/// that vertex by +-step along each axis.
double verify_momentum_relation(const Path& path, const FieldSpec& field,
                                const ModelParams& params,
                                double step = kDefaultDifferenceStep);

/// Net number of counterclockwise turns a polyline makes around a point. An
/// open polyline is closed with a straight edge back to its start.
int winding_number(const Path& loop, SpacePoint around);

}  // namespace phasekit
