#pragma once
////////////////////////////////////////////////////////////////////////////////
// config_space.hpp
////////////////////////////////////////////////////////////////////////////////
// Predicates on the configuration space of a closed linkage (embeddedness,
// winding, convexity, straight-line configurations), local turn-angle charts,
// and the brute-force grid oracle that enumerates configurations for desk-scale
// validation of everything else.
////////////////////////////////////////////////////////////////////////////////

#include "polylink/geometry.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace polylink {

struct ConfigClass {
    bool embedded = false;
    double winding = 0.0; // sum of turn angles
    bool convex_ccw = false;
    double min_turn = 0.0;
    // Tolerance (absolute length) used by the edge-pair tests.
    double contact_tolerance = 0.0;
};

// Winding within this of +-2pi counts as a single turn.
inline constexpr double kWindingTolerance = 1e-6;
// Turn angles down to -kConvexSlack still count as convex.
inline constexpr double kConvexSlack = 1e-9;

// Edges closer than 1e-12 * (bounding-box extent) count as touching.
ConfigClass classify(const PolygonChain &chain);
ConfigClass classify(const PolygonChain &chain, const TurnAngles &angles);

struct StraightLineReport {
    // Each vector has entries +1/-1 with sum_i eps_i l_i = 0; eps[0] = +1.
    std::vector<std::vector<int>> sign_vectors;
    // True when all lengths are integers and sums were compared exactly.
    bool exact = false;
    double tolerance = 0.0;
};

// Exhaustive search over the 2^(n-1) sign vectors; n <= 30. Integer lengths are
// tested exactly; otherwise |sum| <= tolerance, which defaults to
// 1e-9 * perimeter.
StraightLineReport straight_line_sign_vectors(const SideLengths &lengths,
                                              std::optional<double> tolerance = std::nullopt);

bool is_generic(const SideLengths &lengths, std::optional<double> tolerance = std::nullopt);

// Strict polygon inequality: longest side shorter than the sum of the others.
bool is_feasible(const SideLengths &lengths);

struct IndexedAngle {
    std::size_t index; // 0-based vertex index
    double angle;
};

// Three vertex indices (0-based, strictly increasing) whose turn angles are
// left free in a local chart.
struct OmittedTriple {
    std::size_t q = 0, r = 1, s = 2;
};

// Indices of the three largest |theta|, sorted.
OmittedTriple choose_omitted_triple(const TurnAngles &angles);

// +1 when (a, b, c) turn counterclockwise, -1 clockwise, 0 when collinear.
int orientation(const Vec2 &a, const Vec2 &b, const Vec2 &c);

// Rebuilds a closed canonical chain from the n-3 turn angles at all vertices
// except q, r, s. The subchain through the fixed bar p_n p_1 is placed in the
// canonical frame, and p_r is chosen among the two circle intersections by the
// orientation sign of (p_q, p_r, p_s). Throws NoClosure when the rigid subchains
// cannot be joined and DegenerateGeometry on a tangency.
PolygonChain reconstruct_from_partial_angles(const SideLengths &lengths, std::span<const IndexedAngle> partial,
                                             OmittedTriple omitted, int orientation_sign);

// Oracle grid: value i (0-based) of a grid with `grid` cells over (-pi, pi].
// Exact at 0 (even grids) and at pi.
double grid_angle(std::size_t i, std::size_t grid);

// Closes a chain whose first n-3 turn angles are given: the last two bars are
// placed by circle intersection (the "elbow"). Branch 0 puts the elbow left of
// the line p_{n-2} -> p_n, branch 1 right. Returns nullopt when the closing
// circles miss, when the requested branch does not exist at a tangency, or
// when p_{n-2} lands on the origin.
std::optional<PolygonChain> close_chain(const SideLengths &lengths, std::span<const double> free_angles,
                                        int branch);

struct ConfigSample {
    std::vector<std::uint32_t> grid_index;
    std::vector<double> free_angles;
    int branch = 0;
    bool tangent = false; // both elbow branches coincide
    TurnAngles angles;
    PolygonChain chain;
    ConfigClass cls;
};

struct ConfigSampleSet {
    std::vector<double> lengths;
    std::size_t grid = 0;
    std::vector<ConfigSample> samples; // grid-major (first angle slowest), branch-minor
};

// Visits every closed configuration on the oracle grid in the same order
// enumerate_configurations stores them. 3 <= n <= 6.
void for_each_configuration(const SideLengths &lengths, std::size_t grid,
                            const std::function<void(const ConfigSample &)> &visit);

ConfigSampleSet enumerate_configurations(const SideLengths &lengths, std::size_t grid);

// For quadrilaterals (one free angle): orders the samples into closed loops.
// Each maximal cyclic run of grid cells where the elbow closes contributes a
// loop that follows branch 0 forward and branch 1 back; when every cell closes,
// the two branches form separate loops. Entries index into set.samples.
std::vector<std::vector<std::size_t>> sweep_cycles(const ConfigSampleSet &set);

// Number of maximal runs of `flags` that are true, treating the sequence as
// cyclic.
std::size_t count_cyclic_runs(const std::vector<bool> &flags);

////////////////////////////////////////////////////////////////////////////////
// Cubical-complex summaries of sampled regions on a 2-D grid with one or more
// sheets (elbow branches). A site may be glued, meaning its copies on all
// sheets are the same point.
////////////////////////////////////////////////////////////////////////////////
struct GridRegion2D {
    std::size_t rows = 0, cols = 0, sheets = 1;
    std::vector<char> inside; // (sheet * rows + row) * cols + col
    std::vector<char> glued;  // row * cols + col

    GridRegion2D(std::size_t rows_, std::size_t cols_, std::size_t sheets_);
    char &at(std::size_t sheet, std::size_t row, std::size_t col) { return inside[(sheet * rows + row) * cols + col]; }
    char at(std::size_t sheet, std::size_t row, std::size_t col) const {
        return inside[(sheet * rows + row) * cols + col];
    }
};

struct RegionTopology {
    std::size_t vertices = 0, edges = 0, faces = 0;
    std::size_t components = 0;
    long euler_characteristic() const {
        return static_cast<long>(vertices) - static_cast<long>(edges) + static_cast<long>(faces);
    }
};

RegionTopology analyze_region(const GridRegion2D &region);

// Pentagons only. The (theta_1, theta_2) grid carries both elbow branches as
// sheets; they meet along the fold where the closing circles are tangent.
// Fold points are located by bisection on every grid edge leaving the closing
// domain and shared by both sheets, so the sheets are glued along actual fold
// configurations rather than along nearby grid sites (which sit sqrt(h) apart
// in elbow angle). Two extra vertices per cut edge sit at even steps of elbow
// angle. Cells are clipped marching-squares style; a saddle cell splits into
// two pieces; cells wrap at pi. The region is the union of the closed faces
// all of whose vertices satisfy `inside`. Needs l_4 != l_5.
RegionTopology folded_region_topology(const SideLengths &lengths, std::size_t grid,
                                      const std::function<bool(const ConfigClass &)> &inside);

} // namespace polylink
