#pragma once
////////////////////////////////////////////////////////////////////////////////
// convex_atlas.hpp
////////////////////////////////////////////////////////////////////////////////
// Turn-angle atlas of the convex configurations.
//
// Fix the first k-1 turn angles alpha of a convex configuration; they pin the
// chain p_n, p_1, ..., p_k. The turn angle at p_k can then range over a closed
// interval [nu_k(alpha), mu_k(alpha)]. Both ends are attained by stretched
// configurations:
//
//   minimal, case (b): the tail p_{k+1} ... p_n is one straight segment;
//   minimal, case (a): the turn at p_k is 0 (any convex completion);
//   maximal:           p_k ... p_j is straight for some j > k, and every
//                      vertex from p_{j+2} to p_n is flat.
//
// Each of these is a single circle intersection once the combinatorial type is
// fixed, so the bounds are computed exactly rather than searched for. The set of
// realizable prefixes is then the iterated region between the graphs of nu and
// mu, which sample_atlas grids level by level.
//
// Prefixes are passed as spans of the k-1 leading turn angles (radians). Levels
// run 1 <= k <= n-2; at k = n-2 the interval is a single point.
////////////////////////////////////////////////////////////////////////////////

#include "polylink/geometry.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace polylink {

enum class WitnessKind { minimal_case_a, minimal_case_b, maximal };

const char *to_string(WitnessKind kind);

struct StretchedWitness {
    WitnessKind kind = WitnessKind::minimal_case_b;
    // 1-based index of the far end of the straight run (maximal only).
    std::optional<std::size_t> j;
    PolygonChain chain;
    TurnAngles angles;
    double theta_k = 0.0;
    // More than one candidate attained the bound (borderline configuration).
    bool tie = false;
};

struct TurnBound {
    double value = 0.0;
    StretchedWitness witness;
};

// Vertices with |theta| below this count as flat.
inline constexpr double kFlatThreshold = 1e-7;
// Slack used when testing alpha_m against [nu_m, mu_m].
inline constexpr double kPrefixSlack = 1e-9;

// Smallest turn at p_k over convex configurations extending `alpha`, with a
// minimally stretched witness. Throws Infeasible when alpha is not a realizable
// prefix.
TurnBound min_turn_angle(const SideLengths &lengths, std::span<const double> alpha);

// Largest turn at p_k, with a maximally stretched witness.
TurnBound max_turn_angle(const SideLengths &lengths, std::span<const double> alpha);

// True when every alpha_m lies in [nu_m, mu_m] of the preceding prefix (within
// kPrefixSlack), i.e. alpha is the start of some convex configuration.
bool contains_prefix(const SideLengths &lengths, std::span<const double> alpha);

struct Quadrilateral {
    std::array<Vec2, 4> v;
};

// Turn angles at v[0..3] of the closed quadrilateral v0 v1 v2 v3.
std::array<double, 4> quadrilateral_turn_angles(const Quadrilateral &quad);

// Expansive move on a strictly convex counterclockwise quadrilateral: v0 stays,
// v2 moves `delta` further from v0 along the diagonal, and v1, v3 are re-placed
// on their own sides of the diagonal keeping all four side lengths. Turns at v0
// and v2 grow, turns at v1 and v3 shrink. Throws MotionBlocked when the move
// would take a turn angle to 0 or pi (or tear the quadrilateral apart).
Quadrilateral quadrilateral_expansive_step(const Quadrilateral &quad, double delta);

struct AtlasNode {
    std::vector<double> prefix; // k-1 angles
    double nu = 0.0;
    double mu = 0.0;
    StretchedWitness min_witness;
    StretchedWitness max_witness;
};

struct AtlasSample {
    std::size_t k = 1;
    std::size_t grid = 0;
    std::vector<AtlasNode> nodes;

    // Full k-tuples: each node's prefix extended by `grid` evenly spaced turn
    // angles across [nu, mu] (one when the interval is a point).
    std::vector<std::vector<double>> points() const;
};

// Evenly spaced values across [lo, hi], endpoints included.
std::vector<double> interval_grid(double lo, double hi, std::size_t count);

// Grids S_1 = [nu_1, mu_1], then each fiber [nu_m, mu_m] in turn, down to
// prefixes of length k-1, and records the bounds at level k for every prefix.
// Node order is lexicographic in the grid indices.
AtlasSample sample_atlas(const SideLengths &lengths, std::size_t k, std::size_t grid);

} // namespace polylink
