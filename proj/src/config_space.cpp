#include "polylink/config_space.hpp"

#include "polylink/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <unordered_map>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace polylink {

ConfigClass classify(const PolygonChain &chain) { return classify(chain, turn_angles_from_vertices(chain)); }

ConfigClass classify(const PolygonChain &chain, const TurnAngles &angles) {
    const std::size_t n = chain.size();
    if (angles.size() != n) throw InvalidInput("turn angle count does not match the chain");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto &p : chain.vertices) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double tol = 1e-12 * std::max(xmax - xmin, ymax - ymin);

    ConfigClass out;
    out.contact_tolerance = tol;
    out.winding = angles.sum();
    out.min_turn = angles.min();
    out.embedded = true;

    auto seg = [&](std::size_t i) { return Segment{chain.vertices[(i + n - 1) % n], chain.vertices[i]}; };
    for (std::size_t i = 0; i < n && out.embedded; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            const SegmentRelation rel = segment_intersection(seg(i), seg(j), tol);
            if (adjacent ? rel == SegmentRelation::overlap : rel != SegmentRelation::disjoint) {
                out.embedded = false;
                break;
            }
        }
    }
    out.convex_ccw =
        out.embedded && std::abs(out.winding - kTwoPi) < kWindingTolerance && out.min_turn >= -kConvexSlack;
    return out;
}

StraightLineReport straight_line_sign_vectors(const SideLengths &lengths, std::optional<double> tolerance) {
    const std::size_t n = lengths.size();
    if (n > 30) throw InvalidInput("exhaustive straight-line search supports n <= 30, got " + std::to_string(n));

    StraightLineReport report;
    bool integral = true;
    for (double l : lengths.values()) integral = integral && l == std::floor(l) && l < 1e12;

    std::vector<std::uint32_t> masks;
    const std::uint32_t count = std::uint32_t{1} << (n - 1);
    // Gray-code walk: bit b of the mask flips the sign of lengths[b + 1].
    if (integral) {
        report.exact = true;
        std::int64_t sum = 0;
        for (double l : lengths.values()) sum += static_cast<std::int64_t>(l);
        std::uint32_t gray = 0;
        for (std::uint32_t step = 0; step < count; ++step) {
            if (step > 0) {
                const int b = std::countr_zero(step);
                gray ^= std::uint32_t{1} << b;
                const auto l = static_cast<std::int64_t>(lengths[static_cast<std::size_t>(b) + 1]);
                sum += (gray >> b & 1u) ? -2 * l : 2 * l;
            }
            if (sum == 0) masks.push_back(gray);
        }
    } else {
        const double tol = tolerance.value_or(1e-9 * lengths.perimeter());
        report.tolerance = tol;
        std::uint32_t gray = 0;
        for (std::uint32_t step = 0; step < count; ++step) {
            if (step > 0) gray ^= std::uint32_t{1} << std::countr_zero(step);
            // Resummed from scratch so rounding does not accumulate along the walk.
            double sum = lengths[0];
            for (std::size_t i = 1; i < n; ++i) sum += (gray >> (i - 1) & 1u) ? -lengths[i] : lengths[i];
            if (std::abs(sum) <= tol) masks.push_back(gray);
        }
    }

    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        // Lexicographic on the sign vectors with '+' before '-'.
        if (a == b) return false;
        const std::uint32_t diff = a ^ b;
        const std::uint32_t low = diff & (~diff + 1);
        return (a & low) == 0;
    });
    for (std::uint32_t m : masks) {
        std::vector<int> eps(n, 1);
        for (std::size_t i = 1; i < n; ++i)
            if (m >> (i - 1) & 1u) eps[i] = -1;
        report.sign_vectors.push_back(std::move(eps));
    }
    return report;
}

bool is_generic(const SideLengths &lengths, std::optional<double> tolerance) {
    return straight_line_sign_vectors(lengths, tolerance).sign_vectors.empty();
}

bool is_feasible(const SideLengths &lengths) {
    const double longest = lengths.max_length();
    return longest < lengths.perimeter() - longest;
}

OmittedTriple choose_omitted_triple(const TurnAngles &angles) {
    const std::size_t n = angles.size();
    if (n < 3) throw InvalidInput("need at least 3 turn angles");
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(angles[a]) > std::abs(angles[b]); });
    std::array<std::size_t, 3> t{idx[0], idx[1], idx[2]};
    std::sort(t.begin(), t.end());
    return {t[0], t[1], t[2]};
}

int orientation(const Vec2 &a, const Vec2 &b, const Vec2 &c) {
    const double o = cross(b - a, c - a);
    return o > 0.0 ? 1 : (o < 0.0 ? -1 : 0);
}

namespace {

// Lays out the rigid subchain from vertex `from` to vertex `to` (from < to) in a
// local frame: vertex `from` at the origin, first bar along +x.
std::vector<Vec2> local_subchain(const SideLengths &lengths, const std::vector<double> &theta, std::size_t from,
                                 std::size_t to) {
    std::vector<Vec2> pts(to - from + 1);
    double heading = 0.0;
    for (std::size_t i = from + 1; i <= to; ++i) {
        if (i > from + 1) heading += theta[i - 1];
        pts[i - from] = pts[i - from - 1] + lengths[i] * unit_at(heading);
    }
    return pts;
}

} // namespace

PolygonChain reconstruct_from_partial_angles(const SideLengths &lengths, std::span<const IndexedAngle> partial,
                                             OmittedTriple omitted, int orientation_sign) {
    const std::size_t n = lengths.size();
    const auto [q, r, s] = omitted;
    if (!(q < r && r < s && s < n)) throw InvalidInput("omitted indices must satisfy q < r < s < n");
    if (orientation_sign != 1 && orientation_sign != -1) throw InvalidInput("orientation must be +1 or -1");
    if (partial.size() != n - 3) throw InvalidInput("expected n-3 partial turn angles");

    std::vector<double> theta(n, 0.0);
    std::vector<char> seen(n, 0);
    seen[q] = seen[r] = seen[s] = 1;
    for (const auto &pa : partial) {
        if (pa.index >= n || seen[pa.index]) throw InvalidInput("partial angles must cover exactly the non-omitted vertices");
        seen[pa.index] = 1;
        theta[pa.index] = pa.angle;
    }

    std::vector<Vec2> v(n);
    // Subchain s -> q through the fixed bar: forward from p_1, backward from p_n.
    v[n - 1] = {0.0, 0.0};
    v[0] = {lengths[0], 0.0};
    double heading = 0.0;
    for (std::size_t i = 1; i <= q; ++i) {
        heading += theta[i - 1];
        v[i] = v[i - 1] + lengths[i] * unit_at(heading);
    }
    heading = 0.0; // direction of bar 0
    for (std::size_t i = n - 1; i > s; --i) {
        heading -= theta[i]; // direction of bar i
        v[i - 1] = v[i] - lengths[i] * unit_at(heading);
    }

    const auto qr = local_subchain(lengths, theta, q, r);
    const auto rs = local_subchain(lengths, theta, r, s);
    const double d_qr = norm(qr.back());
    const double d_rs = norm(rs.back());
    if (d_qr == 0.0 || d_rs == 0.0) throw DegenerateGeometry("a rigid subchain closes on itself");

    const auto candidates = circle_circle_intersection(v[q], d_qr, v[s], d_rs);
    if (candidates.empty()) throw NoClosure("the given turn angles admit no closed configuration");
    if (candidates.size() == 1) throw DegenerateGeometry("ambiguous tangency placing the middle vertex");
    const Vec2 pr = orientation(v[q], candidates[0], v[s]) == orientation_sign ? candidates[0] : candidates[1];
    if (orientation(v[q], pr, v[s]) != orientation_sign)
        throw DegenerateGeometry("no closing position has the requested orientation");
    v[r] = pr;

    auto attach = [&](const std::vector<Vec2> &local, std::size_t from, std::size_t to) {
        const double rot = std::atan2(v[to].y - v[from].y, v[to].x - v[from].x) - std::atan2(local.back().y, local.back().x);
        for (std::size_t i = from + 1; i < to; ++i) v[i] = v[from] + rotate(local[i - from], rot);
    };
    attach(qr, q, r);
    attach(rs, r, s);

    PolygonChain out;
    out.vertices = std::move(v);
    out.canonical = true;
    return out;
}

double grid_angle(std::size_t i, std::size_t grid) {
    return (2.0 * static_cast<double>(i + 1) / static_cast<double>(grid) - 1.0) * kPi;
}

namespace {

// Vertices p_1..p_{n-2} from the free angles, plus p_n at the origin. The
// elbow p_{n-1} is left unset.
std::vector<Vec2> open_prefix(const SideLengths &lengths, std::span<const double> free_angles) {
    const std::size_t n = lengths.size();
    std::vector<Vec2> v(n);
    v[0] = {lengths[0], 0.0};
    double heading = 0.0;
    for (std::size_t i = 1; i + 2 < n; ++i) {
        heading += free_angles[i - 1];
        v[i] = v[i - 1] + lengths[i] * unit_at(heading);
    }
    v[n - 1] = {0.0, 0.0};
    return v;
}

std::vector<Vec2> elbows(const SideLengths &lengths, const std::vector<Vec2> &v) {
    const std::size_t n = lengths.size();
    const Vec2 &base = v[n - 3];
    if (base.x == 0.0 && base.y == 0.0) return {};
    return circle_circle_intersection(base, lengths[n - 2], v[n - 1], lengths[n - 1]);
}

} // namespace

std::optional<PolygonChain> close_chain(const SideLengths &lengths, std::span<const double> free_angles, int branch) {
    const std::size_t n = lengths.size();
    if (free_angles.size() != n - 3) throw InvalidInput("expected n-3 free angles");
    if (branch != 0 && branch != 1) throw InvalidInput("branch must be 0 or 1");
    auto v = open_prefix(lengths, free_angles);
    const auto e = elbows(lengths, v);
    if (static_cast<std::size_t>(branch) >= e.size()) return std::nullopt;
    v[n - 2] = e[static_cast<std::size_t>(branch)];
    PolygonChain chain;
    chain.vertices = std::move(v);
    chain.canonical = true;
    return chain;
}

void for_each_configuration(const SideLengths &lengths, std::size_t grid,
                            const std::function<void(const ConfigSample &)> &visit) {
    const std::size_t n = lengths.size();
    if (n < 3 || n > 6) throw InvalidInput("the grid oracle supports 3 <= n <= 6, got " + std::to_string(n));
    if (grid < 1) throw InvalidInput("grid must have at least one cell");
    const std::size_t free = n - 3;

    std::vector<std::uint32_t> idx(free, 0);
    std::vector<double> angles(free);
    ConfigSample sample;
    while (true) {
        for (std::size_t d = 0; d < free; ++d) angles[d] = grid_angle(idx[d], grid);
        auto v = open_prefix(lengths, angles);
        const auto e = elbows(lengths, v);
        for (std::size_t b = 0; b < e.size(); ++b) {
            v[n - 2] = e[b];
            sample.grid_index = idx;
            sample.free_angles = angles;
            sample.branch = static_cast<int>(b);
            sample.tangent = e.size() == 1;
            sample.chain.vertices = v;
            sample.chain.canonical = true;
            try {
                sample.angles = turn_angles_from_vertices(sample.chain);
            } catch (const DegenerateGeometry &) {
                continue; // a bar collapsed numerically; no direction to measure
            }
            sample.cls = classify(sample.chain, sample.angles);
            visit(sample);
        }
        // Odometer with the last angle fastest.
        std::size_t d = free;
        while (d > 0) {
            --d;
            if (++idx[d] < grid) break;
            idx[d] = 0;
            if (d == 0) return;
        }
        if (free == 0) return;
    }
}

ConfigSampleSet enumerate_configurations(const SideLengths &lengths, std::size_t grid) {
    ConfigSampleSet set;
    set.lengths.assign(lengths.values().begin(), lengths.values().end());
    set.grid = grid;
    for_each_configuration(lengths, grid, [&](const ConfigSample &s) { set.samples.push_back(s); });
    return set;
}

std::vector<std::vector<std::size_t>> sweep_cycles(const ConfigSampleSet &set) {
    const std::size_t n = set.lengths.size();
    std::vector<std::vector<std::size_t>> cycles;
    if (n == 3) {
        for (std::size_t i = 0; i < set.samples.size(); ++i) cycles.push_back({i});
        return cycles;
    }
    if (n != 4) throw InvalidInput("sweep cycles are defined for one free angle (n = 4)");

    const std::size_t g = set.grid;
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::array<std::size_t, 2>> at(g, {none, none});
    std::vector<char> tangent(g, 0);
    for (std::size_t k = 0; k < set.samples.size(); ++k) {
        const auto &s = set.samples[k];
        at[s.grid_index[0]][static_cast<std::size_t>(s.branch)] = k;
        if (s.tangent) tangent[s.grid_index[0]] = 1;
    }
    auto feasible = [&](std::size_t i) { return at[i][0] != none; };

    auto trace = [&](std::size_t start, std::size_t len) {
        std::vector<std::size_t> loop;
        for (std::size_t t = 0; t < len; ++t) loop.push_back(at[(start + t) % g][0]);
        for (std::size_t t = len; t-- > 0;) {
            const std::size_t k = at[(start + t) % g][1];
            if (k != none) loop.push_back(k);
        }
        return loop;
    };

    std::size_t feasible_count = 0;
    for (std::size_t i = 0; i < g; ++i) feasible_count += feasible(i);
    if (feasible_count == 0) return cycles;

    if (feasible_count == g) {
        const auto t = std::find(tangent.begin(), tangent.end(), 1);
        if (t == tangent.end()) {
            std::vector<std::size_t> b0, b1;
            for (std::size_t i = 0; i < g; ++i) {
                b0.push_back(at[i][0]);
                b1.push_back(at[i][1]);
            }
            cycles.push_back(std::move(b0));
            cycles.push_back(std::move(b1));
        } else {
            cycles.push_back(trace(static_cast<std::size_t>(t - tangent.begin()), g));
        }
        return cycles;
    }

    for (std::size_t i = 0; i < g; ++i) {
        if (!feasible(i) || feasible((i + g - 1) % g)) continue;
        std::size_t len = 0;
        while (feasible((i + len) % g)) ++len;
        cycles.push_back(trace(i, len));
    }
    return cycles;
}

std::size_t count_cyclic_runs(const std::vector<bool> &flags) {
    const std::size_t n = flags.size();
    std::size_t on = 0, runs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        on += flags[i];
        if (flags[i] && !flags[(i + n - 1) % n]) ++runs;
    }
    if (on == n && n > 0) return 1;
    return runs;
}

GridRegion2D::GridRegion2D(std::size_t rows_, std::size_t cols_, std::size_t sheets_)
    : rows(rows_), cols(cols_), sheets(sheets_), inside(rows_ * cols_ * sheets_, 0), glued(rows_ * cols_, 0) {}

namespace {

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

} // namespace

RegionTopology analyze_region(const GridRegion2D &region) {
    const std::size_t R = region.rows, C = region.cols, S = region.sheets;
    auto glued = [&](std::size_t r, std::size_t c) { return region.glued[r * C + c] != 0; };
    auto in = [&](std::size_t s, std::size_t r, std::size_t c) {
        if (glued(r, c)) {
            for (std::size_t t = 0; t < S; ++t)
                if (region.at(t, r, c)) return true;
            return false;
        }
        return region.at(s, r, c) != 0;
    };
    auto id = [&](std::size_t s, std::size_t r, std::size_t c) -> std::uint64_t {
        return glued(r, c) ? r * C + c : (s * R + r) * C + c;
    };

    std::vector<std::uint64_t> verts;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
    std::vector<std::array<std::uint64_t, 4>> faces;
    for (std::size_t s = 0; s < S; ++s) {
        for (std::size_t r = 0; r < R; ++r) {
            for (std::size_t c = 0; c < C; ++c) {
                if (!in(s, r, c)) continue;
                const auto a = id(s, r, c);
                verts.push_back(a);
                if (c + 1 < C && in(s, r, c + 1)) edges.emplace_back(std::minmax(a, id(s, r, c + 1)));
                if (r + 1 < R && in(s, r + 1, c)) edges.emplace_back(std::minmax(a, id(s, r + 1, c)));
                if (r + 1 < R && c + 1 < C && in(s, r, c + 1) && in(s, r + 1, c) && in(s, r + 1, c + 1)) {
                    std::array<std::uint64_t, 4> f{a, id(s, r, c + 1), id(s, r + 1, c), id(s, r + 1, c + 1)};
                    std::sort(f.begin(), f.end());
                    faces.push_back(f);
                }
            }
        }
    }
    auto dedupe = [](auto &v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(verts);
    dedupe(edges);
    dedupe(faces);

    RegionTopology topo;
    topo.vertices = verts.size();
    topo.edges = edges.size();
    topo.faces = faces.size();

    auto local = [&](std::uint64_t key) {
        return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), key) - verts.begin());
    };
    DisjointSets sets(verts.size());
    for (const auto &[a, b] : edges) sets.unite(local(a), local(b));
    for (std::size_t i = 0; i < verts.size(); ++i) topo.components += sets.find(i) == i;
    return topo;
}

RegionTopology folded_region_topology(const SideLengths &lengths, std::size_t grid,
                                      const std::function<bool(const ConfigClass &)> &inside) {
    if (lengths.size() != 5) throw InvalidInput("the folded grid complex is for pentagons");
    if (grid < 2) throw InvalidInput("grid must have at least two cells");
    // Equal last sides let the elbow swing a full circle with p_3 at the origin,
    // which the two sheets cannot hold.
    if (std::abs(lengths[3] - lengths[4]) <= 1e-12 * lengths.perimeter())
        throw InvalidInput("the folded grid complex needs l_4 != l_5");
    const std::size_t G = grid, sites = G * G;
    // Layers between a site and its fold point; elbow angle goes like the
    // square root of the distance to the fold, so they crowd toward it. More
    // layers resolve thinner wedges at the fold than the rest of the grid can
    // follow, and the complex picks up spurious loops.
    constexpr std::size_t m = 2;

    auto label = [&](const std::optional<PolygonChain> &chain) {
        if (!chain) return false;
        try {
            return inside(classify(*chain));
        } catch (const DegenerateGeometry &) {
            return false;
        }
    };
    auto point = [&](std::size_t r, std::size_t c) { return std::array<double, 2>{grid_angle(r, G), grid_angle(c, G)}; };

    // A site closes when both branches exist; one sitting exactly on the fold
    // is left to the fold points around it. Ids: site (r, c) on sheet s is
    // 2 * (r * G + c) + s. Grid edge e is
    // 2 * (r * G + c) + vertical; its fold point is 2 * sites + e and its
    // layer i on sheet s is 4 * sites + (2 * e + s) * m + i.
    std::vector<char> closes(sites, 0), in(4 * sites, 0);
    for (std::size_t r = 0; r < G; ++r)
        for (std::size_t c = 0; c < G; ++c) {
            const auto a = point(r, c);
            const auto b0 = close_chain(lengths, a, 0), b1 = close_chain(lengths, a, 1);
            const std::size_t k = r * G + c;
            closes[k] = b0 && b1;
            in[2 * k] = label(b0);
            in[2 * k + 1] = label(b1);
        }
    auto site_id = [&](std::size_t s, std::size_t r, std::size_t c) -> std::uint64_t { return 2 * (r * G + c) + s; };
    auto edge_of = [&](std::size_t r, std::size_t c, bool vertical) -> std::uint64_t {
        return 2 * (r * G + c) + (vertical ? 1 : 0);
    };

    std::unordered_map<std::uint64_t, char> layer_in;
    // Fold point on the edge from (r, c) to its next neighbour (wrapping at
    // pi), taken from the closing end, plus the layers in between on both sheets.
    const double h = 2.0 * kPi / static_cast<double>(G);
    auto locate = [&](std::size_t r, std::size_t c, bool vertical) {
        const std::size_t far = vertical ? ((r + 1) % G) * G + c : r * G + (c + 1) % G;
        if (closes[r * G + c] == closes[far]) return;
        const std::uint64_t e = edge_of(r, c, vertical);
        auto lo = point(r, c), hi = lo;
        hi[vertical ? 0 : 1] += h;
        if (!closes[r * G + c]) std::swap(lo, hi);
        const auto site = lo;
        for (int it = 0; it < 60; ++it) {
            const std::array<double, 2> mid{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
            (close_chain(lengths, mid, 0) ? lo : hi) = mid;
        }
        // lo now sits in the tangency band, where the elbow is the exact
        // tangent point (straight or folded back), not a near-miss.
        in[2 * sites + e] = label(close_chain(lengths, lo, 0));
        for (std::size_t i = 1; i <= m; ++i) {
            const double u = 1.0 - static_cast<double>(i) / static_cast<double>(m + 1);
            const double t = 1.0 - u * u;
            const std::array<double, 2> q{site[0] + t * (lo[0] - site[0]), site[1] + t * (lo[1] - site[1])};
            for (int s = 0; s < 2; ++s) layer_in[4 * sites + (2 * e + s) * m + i - 1] = label(close_chain(lengths, q, s));
        }
    };
    for (std::size_t r = 0; r < G; ++r)
        for (std::size_t c = 0; c < G; ++c) {
            locate(r, c, false);
            locate(r, c, true);
        }
    auto is_in = [&](std::uint64_t id) { return id < 4 * sites ? in[id] != 0 : layer_in.at(id) != 0; };

    std::vector<std::uint64_t> verts;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
    std::vector<std::vector<std::uint64_t>> faces;
    auto emit = [&](std::vector<std::uint64_t> face) {
        // Only closed faces count: lone sites and fold segments with no face
        // behind them are below what the grid resolves.
        for (auto a : face)
            if (!is_in(a)) return;
        for (std::size_t i = 0; i < face.size(); ++i) {
            verts.push_back(face[i]);
            edges.emplace_back(std::minmax(face[i], face[(i + 1) % face.size()]));
        }
        std::sort(face.begin(), face.end());
        faces.push_back(std::move(face));
    };
    // Site, layers 1..m, fold point along a grid edge.
    auto ladder = [&](std::uint64_t site, std::uint64_t e, std::size_t s) {
        std::vector<std::uint64_t> out{site};
        for (std::size_t i = 0; i < m; ++i) out.push_back(4 * sites + (2 * e + s) * m + i);
        out.push_back(2 * sites + e);
        return out;
    };
    // The grid is a torus: cells wrap at pi in both directions.
    for (std::size_t r = 0; r < G; ++r)
        for (std::size_t c = 0; c < G; ++c) {
            const std::size_t r1 = (r + 1) % G, c1 = (c + 1) % G;
            const std::array<std::pair<std::size_t, std::size_t>, 4> corner{{{r, c}, {r, c1}, {r1, c1}, {r1, c}}};
            // Edge k joins corner k and corner k + 1.
            const std::array<std::uint64_t, 4> side{edge_of(r, c, false), edge_of(r, c1, true), edge_of(r1, c, false),
                                                    edge_of(r, c, true)};
            std::array<bool, 4> cl;
            for (int k = 0; k < 4; ++k) cl[k] = closes[corner[k].first * G + corner[k].second];
            for (std::size_t s = 0; s < 2; ++s) {
                auto corner_id = [&](int k) { return site_id(s, corner[k].first, corner[k].second); };
                if (cl[0] && cl[1] && cl[2] && cl[3]) {
                    emit({corner_id(0), corner_id(1), corner_id(2), corner_id(3)});
                    continue;
                }
                // One piece per run of closing corners, capped by its two fold
                // points: the corners themselves, then strips between the
                // ladders up the two cut edges.
                for (int k = 0; k < 4; ++k) {
                    if (cl[k] || !cl[(k + 1) % 4]) continue;
                    std::vector<std::uint64_t> run;
                    int j = (k + 1) % 4;
                    while (cl[j]) {
                        run.push_back(corner_id(j));
                        j = (j + 1) % 4;
                    }
                    const auto p = ladder(run.front(), side[k], s);
                    const auto q = ladder(run.back(), side[(j + 3) % 4], s);
                    if (run.size() >= 3) emit(run);
                    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
                        if (i == 0 && run.size() == 1)
                            emit({p[0], p[1], q[1]});
                        else
                            emit({p[i], p[i + 1], q[i + 1], q[i]});
                    }
                }
            }
        }

    auto dedupe = [](auto &v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedupe(verts);
    dedupe(edges);
    dedupe(faces);

    RegionTopology topo;
    topo.vertices = verts.size();
    topo.edges = edges.size();
    topo.faces = faces.size();
    auto local = [&](std::uint64_t key) {
        return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), key) - verts.begin());
    };
    DisjointSets sets(verts.size());
    for (const auto &[a, b] : edges) sets.unite(local(a), local(b));
    for (std::size_t i = 0; i < verts.size(); ++i) topo.components += sets.find(i) == i;
    return topo;
}

} // namespace polylink
