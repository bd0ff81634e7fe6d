#pragma once
////////////////////////////////////////////////////////////////////////////////
// geometry.hpp
////////////////////////////////////////////////////////////////////////////////
// Planar primitives for closed polygon linkages.
//
// Index conventions. A linkage with n bars is stored 0-based: vertices[i] is
// the joint p_{i+1}, lengths[i] is the bar ending at that joint, and turns[i]
// is the signed turn at vertices[i] from the incoming bar to the outgoing bar.
// The closing vertex p_0 is never stored; it is vertices[n-1].
//
// The canonical frame puts the last vertex at the origin and the first vertex
// on the positive x-axis, so bar 0 runs from (0,0) to (lengths[0], 0).
////////////////////////////////////////////////////////////////////////////////

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace polylink {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 &operator+=(const Vec2 &o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2 &operator-=(const Vec2 &o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2 &operator*=(double s) { x *= s; y *= s; return *this; }
    friend constexpr bool operator==(const Vec2 &, const Vec2 &) = default;
};

constexpr Vec2 operator+(Vec2 a, const Vec2 &b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2 &b) { return a -= b; }
constexpr Vec2 operator-(const Vec2 &a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }

constexpr double dot(const Vec2 &a, const Vec2 &b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2 &a, const Vec2 &b) { return a.x * b.y - a.y * b.x; }
// Counterclockwise quarter turn.
constexpr Vec2 perp(const Vec2 &a) { return {-a.y, a.x}; }
inline double norm(const Vec2 &a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2 &a, const Vec2 &b) { return norm(b - a); }
inline Vec2 unit_at(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline Vec2 rotate(const Vec2 &a, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

// Maps an angle into (-pi, pi]; -pi itself becomes +pi.
double normalize_angle(double angle);

// Signed angle from direction a to direction b, in (-pi, pi].
double signed_angle(const Vec2 &a, const Vec2 &b);

// Ordered positive bar lengths of a closed linkage, n >= 3.
class SideLengths {
  public:
    explicit SideLengths(std::vector<double> lengths);

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }
    double perimeter() const;
    double max_length() const;

    friend bool operator==(const SideLengths &, const SideLengths &) = default;

  private:
    std::vector<double> values_;
};

struct TurnAngles {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double sum() const;
    double min() const;
};

struct PolygonChain {
    std::vector<Vec2> vertices;
    bool canonical = false;

    std::size_t size() const { return vertices.size(); }
    const Vec2 &vertex(std::size_t i) const { return vertices[i]; }
    // Bar i, from vertices[i-1] (cyclically) to vertices[i].
    Vec2 edge(std::size_t i) const;
    std::vector<double> edge_lengths() const;
    // Largest | |edge i| - lengths[i] |.
    double length_defect(const SideLengths &lengths) const;
};

struct ReconstructedChain {
    PolygonChain chain;
    // |p_n|, the distance by which the reconstructed chain misses the origin.
    double closure_defect = 0.0;
};

// p_1 = (l_1, 0); each following vertex steps by l_j along the cumulative turn.
// Closure is not enforced; the last vertex lands wherever the angles put it.
ReconstructedChain vertices_from_turn_angles(const SideLengths &lengths, const TurnAngles &angles);

// Signed turn at every vertex of a closed chain. Throws DegenerateGeometry on a
// zero-length edge.
TurnAngles turn_angles_from_vertices(const PolygonChain &chain);

// Rigid motion putting the last vertex at the origin and the first vertex on
// the positive x-axis.
PolygonChain canonicalize(const PolygonChain &chain);

// Reflection across the x-axis; reverses the winding of a canonical chain.
PolygonChain reflect_x(const PolygonChain &chain);

// Intersection points of two circles, ordered with the point left of the
// directed line center1 -> center2 first. A tangency (within 1e-9 of r1+r2)
// yields a single point. Coincident centers throw DegenerateGeometry.
std::vector<Vec2> circle_circle_intersection(const Vec2 &center1, double r1, const Vec2 &center2, double r2);

enum class SegmentRelation { disjoint, proper_crossing, endpoint_touch, overlap };

const char *to_string(SegmentRelation relation);

struct Segment {
    Vec2 a;
    Vec2 b;
};

// Classifies the relation between two closed segments with sign-of-area tests.
// A point within `tolerance` of a line counts as on it; when tolerance is not
// given it defaults to 1e-12 times the bounding-box extent of both segments.
SegmentRelation segment_intersection(const Segment &s1, const Segment &s2,
                                     std::optional<double> tolerance = std::nullopt);

} // namespace polylink
