#include "polylink/geometry.hpp"

#include "polylink/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace polylink {

double normalize_angle(double angle) {
    double r = std::remainder(angle, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    return r;
}

double signed_angle(const Vec2 &a, const Vec2 &b) {
    const double t = std::atan2(cross(a, b), dot(a, b));
    return t <= -kPi ? kPi : t;
}

SideLengths::SideLengths(std::vector<double> lengths) : values_(std::move(lengths)) {
    if (values_.size() < 3)
        throw InvalidInput("a closed linkage needs at least 3 sides, got " + std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] > 0.0) || !std::isfinite(values_[i]))
            throw InvalidInput("side length " + std::to_string(i + 1) + " must be positive and finite");
    }
}

double SideLengths::perimeter() const {
    double s = 0.0;
    for (double l : values_) s += l;
    return s;
}

double SideLengths::max_length() const { return *std::max_element(values_.begin(), values_.end()); }

double TurnAngles::sum() const {
    double s = 0.0;
    for (double t : values) s += t;
    return s;
}

double TurnAngles::min() const {
    return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

Vec2 PolygonChain::edge(std::size_t i) const {
    const std::size_t n = vertices.size();
    return vertices[i] - vertices[(i + n - 1) % n];
}

std::vector<double> PolygonChain::edge_lengths() const {
    std::vector<double> out(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) out[i] = norm(edge(i));
    return out;
}

double PolygonChain::length_defect(const SideLengths &lengths) const {
    if (lengths.size() != vertices.size()) throw InvalidInput("chain and side lengths differ in size");
    double worst = 0.0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        worst = std::max(worst, std::abs(norm(edge(i)) - lengths[i]));
    return worst;
}

ReconstructedChain vertices_from_turn_angles(const SideLengths &lengths, const TurnAngles &angles) {
    const std::size_t n = lengths.size();
    if (angles.size() != n)
        throw InvalidInput("expected " + std::to_string(n) + " turn angles, got " + std::to_string(angles.size()));

    ReconstructedChain out;
    auto &v = out.chain.vertices;
    v.resize(n);
    v[0] = {lengths[0], 0.0};
    double heading = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        heading += angles[i - 1];
        v[i] = v[i - 1] + lengths[i] * unit_at(heading);
    }
    out.closure_defect = norm(v[n - 1]);
    out.chain.canonical = out.closure_defect == 0.0;
    return out;
}

TurnAngles turn_angles_from_vertices(const PolygonChain &chain) {
    const std::size_t n = chain.size();
    if (n < 3) throw InvalidInput("a closed chain needs at least 3 vertices");
    std::vector<Vec2> edges(n);
    for (std::size_t i = 0; i < n; ++i) {
        edges[i] = chain.edge(i);
        if (edges[i].x == 0.0 && edges[i].y == 0.0)
            throw DegenerateGeometry("edge " + std::to_string(i + 1) + " has zero length");
    }
    TurnAngles out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = signed_angle(edges[i], edges[(i + 1) % n]);
    return out;
}

PolygonChain canonicalize(const PolygonChain &chain) {
    const std::size_t n = chain.size();
    if (n < 3) throw InvalidInput("a closed chain needs at least 3 vertices");
    const Vec2 origin = chain.vertices[n - 1];
    const Vec2 first = chain.vertices[0] - origin;
    const double r = norm(first);
    if (r == 0.0) throw DegenerateGeometry("edge 1 has zero length");

    // Rotation by -atan2(first.y, first.x), applied through its cosine/sine.
    const double c = first.x / r, s = first.y / r;
    PolygonChain out;
    out.vertices.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 d = chain.vertices[i] - origin;
        out.vertices[i] = {c * d.x + s * d.y, -s * d.x + c * d.y};
    }
    out.vertices[n - 1] = {0.0, 0.0};
    out.vertices[0] = {r, 0.0};
    out.canonical = true;
    return out;
}

PolygonChain reflect_x(const PolygonChain &chain) {
    PolygonChain out = chain;
    for (auto &p : out.vertices) p.y = p.y == 0.0 ? 0.0 : -p.y;
    return out;
}

std::vector<Vec2> circle_circle_intersection(const Vec2 &center1, double r1, const Vec2 &center2, double r2) {
    if (!(r1 > 0.0) || !(r2 > 0.0)) throw InvalidInput("circle radii must be positive");
    const Vec2 delta = center2 - center1;
    const double d = norm(delta);
    if (d == 0.0) throw DegenerateGeometry("circle centers coincide");

    const double tol = 1e-9 * (r1 + r2);
    const double outer = r1 + r2;
    const double inner = std::abs(r1 - r2);
    if (d > outer + tol || d < inner - tol) return {};

    const Vec2 u = (1.0 / d) * delta;
    const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    const Vec2 mid = center1 + a * u;
    if (std::abs(d - outer) <= tol || std::abs(d - inner) <= tol) return {mid};

    const double h2 = r1 * r1 - a * a;
    if (h2 <= 0.0) return {mid};
    const double h = std::sqrt(h2);
    return {mid + h * perp(u), mid - h * perp(u)};
}

const char *to_string(SegmentRelation relation) {
    switch (relation) {
    case SegmentRelation::disjoint: return "disjoint";
    case SegmentRelation::proper_crossing: return "proper_crossing";
    case SegmentRelation::endpoint_touch: return "endpoint_touch";
    case SegmentRelation::overlap: return "overlap";
    }
    return "unknown";
}

namespace {

// Signed distance of p from the line through s, snapped to 0 within tol.
int side_of(const Vec2 &p, const Segment &s, double len, double tol) {
    const double dist = cross(s.b - s.a, p - s.a) / len;
    if (dist > tol) return 1;
    if (dist < -tol) return -1;
    return 0;
}

bool within_extent(const Vec2 &p, const Segment &s, double len, double tol) {
    const double t = dot(p - s.a, s.b - s.a) / len;
    return t >= -tol && t <= len + tol;
}

} // namespace

SegmentRelation segment_intersection(const Segment &s1, const Segment &s2, std::optional<double> tolerance) {
    const double len1 = norm(s1.b - s1.a);
    const double len2 = norm(s2.b - s2.a);
    if (len1 == 0.0 || len2 == 0.0) throw DegenerateGeometry("segment has zero length");

    double tol;
    if (tolerance) {
        tol = *tolerance;
    } else {
        const double xmin = std::min({s1.a.x, s1.b.x, s2.a.x, s2.b.x});
        const double xmax = std::max({s1.a.x, s1.b.x, s2.a.x, s2.b.x});
        const double ymin = std::min({s1.a.y, s1.b.y, s2.a.y, s2.b.y});
        const double ymax = std::max({s1.a.y, s1.b.y, s2.a.y, s2.b.y});
        tol = 1e-12 * std::max(xmax - xmin, ymax - ymin);
    }

    const int o1 = side_of(s2.a, s1, len1, tol);
    const int o2 = side_of(s2.b, s1, len1, tol);
    const int o3 = side_of(s1.a, s2, len2, tol);
    const int o4 = side_of(s1.b, s2, len2, tol);

    if (o1 == 0 && o2 == 0) {
        // Collinear: compare the parameter intervals along s1.
        const Vec2 u = (1.0 / len1) * (s1.b - s1.a);
        const double tc = dot(s2.a - s1.a, u);
        const double td = dot(s2.b - s1.a, u);
        const double shared = std::min(len1, std::max(tc, td)) - std::max(0.0, std::min(tc, td));
        if (shared > tol) return SegmentRelation::overlap;
        if (shared >= -tol) return SegmentRelation::endpoint_touch;
        return SegmentRelation::disjoint;
    }

    if (o1 * o2 < 0 && o3 * o4 < 0) return SegmentRelation::proper_crossing;

    if ((o1 == 0 && within_extent(s2.a, s1, len1, tol)) || (o2 == 0 && within_extent(s2.b, s1, len1, tol)) ||
        (o3 == 0 && within_extent(s1.a, s2, len2, tol)) || (o4 == 0 && within_extent(s1.b, s2, len2, tol)))
        return SegmentRelation::endpoint_touch;

    return SegmentRelation::disjoint;
}

} // namespace polylink
