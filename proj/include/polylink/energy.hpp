#pragma once
////////////////////////////////////////////////////////////////////////////////
// energy.hpp
////////////////////////////////////////////////////////////////////////////////
// Elliptic distance energy and the modified energy that vanishes exactly on the
// convex configurations.
//
//   F(p) = sum over bars (p_i, p_{i+1}) and vertices p_j off that bar of
//          1 / (|p_j - p_i| + |p_j - p_{i+1}| - |p_{i+1} - p_i|)^2
//   a(x) = exp(-1/x^2) for x > 0, else 0
//   E(p) = (sum_i a(-theta_i)) * F(p)
//
// E is astronomically small near the convex set (a(0.03) is already below the
// smallest double), so everything the flow consumes is carried in log form:
// log E, and the gradient divided by exp(M) where M is the largest bump
// exponent. The plain double value and gradient are those scaled quantities
// multiplied back out and may underflow to 0.
//
// Gradients are taken in reduced coordinates: the n-1 turn angles theta_1 ..
// theta_{n-1}, with theta_n = 2pi - sum of the others. Vertex positions follow
// from the angles, so bar lengths are exact and closure (p_n = 0) is the only
// constraint.
////////////////////////////////////////////////////////////////////////////////

#include "polylink/geometry.hpp"

#include <vector>

namespace polylink {

// F over the n(n-2) bar/vertex pairs. Throws NotEmbedded when a vertex lies on
// a bar (non-positive denominator).
double elliptic_energy(const PolygonChain &chain);

// Below this the bump and its derivative are returned as exact zeros; a(0.01)
// is e^-10000. The log-domain routines below do not use the cutoff.
inline constexpr double kBumpCutoff = 0.01;

double bump(double x);
double bump_derivative(double x);

// E of a closed chain (turn angles measured from the vertices). Underflows to 0
// for barely reflex angles; see log_modified_energy.
double modified_energy(const PolygonChain &chain);

// log E; -infinity exactly when no turn angle is negative.
double log_modified_energy(const PolygonChain &chain);

struct ReducedCoords {
    std::vector<double> free_angles; // theta_1 .. theta_{n-1}

    // theta_n, normalized into (-pi, pi].
    double dependent_angle() const;
    // All n turn angles.
    TurnAngles angles() const;
    // Where the last vertex lands; (0, 0) on the configuration manifold.
    Vec2 closure_defect(const SideLengths &lengths) const;
};

// Free angles of a closed chain.
ReducedCoords reduced_coords(const PolygonChain &chain);

// Vertices generated by the free angles (the last one is not snapped to 0).
PolygonChain chain_from_reduced(const ReducedCoords &coords, const SideLengths &lengths);

struct ReducedEnergy {
    double value = 0.0;     // E (may underflow)
    double log_value = 0.0; // log E, -inf on the convex set
};

// E as a function of the free angles alone (off-manifold points allowed).
ReducedEnergy reduced_energy(const ReducedCoords &coords, const SideLengths &lengths);

struct EnergyGradient {
    double value = 0.0;
    double log_value = 0.0;
    // Scale: gradient = exp(log_scale) * scaled_gradient. -inf when E = 0.
    double log_scale = 0.0;
    std::vector<double> gradient;
    std::vector<double> projected_gradient;
    std::vector<double> scaled_gradient;
    std::vector<double> scaled_projected_gradient;
};

// Closure Jacobian d p_n / d theta_i: column i is perp(p_n - p_i).
std::vector<Vec2> closure_jacobian(const ReducedCoords &coords, const SideLengths &lengths);

// Removes the component of g in the row space of the closure Jacobian.
std::vector<double> project_tangent(const std::vector<Vec2> &jacobian, const std::vector<double> &g);

// Analytic gradient. Requires an embedded configuration on the manifold
// (closure defect below 1e-9 * max(1, perimeter)).
EnergyGradient energy_gradient(const ReducedCoords &coords, const SideLengths &lengths);

// Central differences of exp(log E - log_scale) in each free angle.
std::vector<double> finite_difference_gradient(const ReducedCoords &coords, const SideLengths &lengths, double h,
                                               double log_scale = 0.0);

} // namespace polylink
