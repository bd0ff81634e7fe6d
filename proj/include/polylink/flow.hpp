#pragma once
////////////////////////////////////////////////////////////////////////////////
// flow.hpp
////////////////////////////////////////////////////////////////////////////////
// Convexification by projected descent of the modified energy.
//
// Each iteration moves the free turn angles against the projected gradient,
// re-closes the chain by Gauss-Newton on the two closure equations, and accepts
// the trial only if log E went strictly down and the polygon is still embedded.
// Otherwise the step is cut back. Bar lengths never drift: vertex positions are
// always regenerated from the angles.
//
// When the accepted gradient step collapses (several reflex turns pinned at the
// same small value make the descent zigzag), a second candidate that raises all
// reflex turns together is tried and the lower of the two is kept.
//
// Step sizes are lengths in angle space (radians); the descent direction is the
// unit projected gradient. E itself spans hundreds of orders of magnitude, so a
// gradient-scaled step would be useless.
////////////////////////////////////////////////////////////////////////////////

#include "polylink/geometry.hpp"

#include <limits>
#include <string>
#include <vector>

namespace polylink {

struct FlowParams {
    double initial_step = 1e-2;
    double backtracking = 0.5;
    double convexity_tolerance = 1e-6;
    std::size_t max_iterations = 100000;
    std::size_t snapshot_stride = 1;
    double closure_tolerance = 1e-12; // relative to max(1, perimeter)
    std::size_t max_newton_iterations = 50;
    double min_step = 1e-14;

    // Throws InvalidInput on a bad combination.
    void validate() const;
};

enum class FlowStatus { converged_convex, max_iterations, stalled };

const char *to_string(FlowStatus status);

// gradient: the unit projected negative gradient. raise_reflex: fallback used
// when gradient steps collapse, the tangent direction raising every reflex turn
// together. Both go through the same acceptance test.
enum class FlowDirection { gradient, raise_reflex };

const char *to_string(FlowDirection direction);

struct FlowRecord {
    std::size_t iteration = 0;
    double energy = 0.0;     // may underflow to 0
    double log_energy = 0.0; // -inf once convex
    double min_turn = 0.0;
    double step = 0.0; // accepted step; 0 for the starting record
    FlowDirection direction = FlowDirection::gradient;
};

struct FlowSnapshot {
    std::size_t iteration = 0;
    PolygonChain chain;
};

struct FlowTrace {
    std::vector<double> lengths;
    bool reflected = false; // the input ran clockwise and was mirrored
    std::vector<FlowRecord> records;
    std::vector<FlowSnapshot> snapshots;
    FlowStatus status = FlowStatus::stalled;
    PolygonChain final_chain;

    std::size_t accepted_steps() const { return records.empty() ? 0 : records.size() - 1; }
};

// Gauss-Newton on p_n(theta) = 0 with minimum-norm steps. Requires the starting
// defect below 0.1 * perimeter (NoClosure otherwise); throws ConvergenceFailure
// if the defect is not under tolerance * max(1, perimeter) after the allowed
// iterations.
std::vector<double> project_to_closure(std::vector<double> free_angles, const SideLengths &lengths,
                                       double tolerance = 1e-12, std::size_t max_iterations = 50);

// Runs the flow from an embedded polygon. Clockwise input is reflected first.
// Throws NotEmbedded for self-intersecting input.
FlowTrace convexify(const PolygonChain &chain, const FlowParams &params = {});

// One accepted ascent step of E (same machinery, opposite direction), refusing
// trials with E above energy_cap. Throws ConvergenceFailure when there is no
// ascent direction or every trial is rejected.
PolygonChain reverse_flow_step(const PolygonChain &chain, const FlowParams &params = {},
                               double energy_cap = std::numeric_limits<double>::infinity());

} // namespace polylink
