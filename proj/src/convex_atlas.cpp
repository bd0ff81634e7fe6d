#include "polylink/convex_atlas.hpp"

#include "polylink/config_space.hpp"
#include "polylink/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace polylink {

const char *to_string(WitnessKind kind) {
    switch (kind) {
    case WitnessKind::minimal_case_a: return "minimal_case_a";
    case WitnessKind::minimal_case_b: return "minimal_case_b";
    case WitnessKind::maximal: return "maximal";
    }
    return "unknown";
}

namespace {

constexpr Vec2 kOrigin{0.0, 0.0};

double length_sum(const SideLengths &lengths, std::size_t from, std::size_t to) {
    double s = 0.0;
    for (std::size_t i = from; i <= to; ++i) s += lengths[i];
    return s;
}

struct PrefixChain {
    std::vector<Vec2> v; // v[0..m] placed
    double heading = 0.0; // direction of the bar ending at v[m]
};

PrefixChain prefix_chain(const SideLengths &lengths, std::span<const double> alpha) {
    PrefixChain pc;
    pc.v.resize(lengths.size());
    pc.v[0] = {lengths[0], 0.0};
    for (std::size_t i = 1; i <= alpha.size(); ++i) {
        pc.heading += alpha[i - 1];
        pc.v[i] = pc.v[i - 1] + lengths[i] * unit_at(pc.heading);
    }
    return pc;
}

// Places vertices first+1 .. last-1 on the straight segment v[first] -> v[last].
void fill_straight(std::vector<Vec2> &v, const SideLengths &lengths, std::size_t first, std::size_t last) {
    const double total = length_sum(lengths, first + 1, last);
    double run = 0.0;
    for (std::size_t i = first + 1; i < last; ++i) {
        run += lengths[i];
        v[i] = v[first] + (run / total) * (v[last] - v[first]);
    }
}

// Convex counterclockwise with every turn strictly below pi.
bool is_convex_witness(const PolygonChain &chain, TurnAngles &angles) {
    try {
        angles = turn_angles_from_vertices(chain);
    } catch (const DegenerateGeometry &) {
        return false;
    }
    for (double t : angles.values)
        if (t >= kPi - 1e-9) return false;
    return classify(chain, angles).convex_ccw;
}

void check_level(const SideLengths &lengths, std::span<const double> alpha) {
    if (alpha.size() + 3 > lengths.size())
        throw InvalidInput("prefix of length " + std::to_string(alpha.size()) + " leaves no free turn for n = " +
                           std::to_string(lengths.size()));
}

TurnBound min_unchecked(const SideLengths &lengths, std::span<const double> alpha) {
    const std::size_t n = lengths.size();
    const std::size_t m = alpha.size(); // p_k is v[m]
    const PrefixChain pc = prefix_chain(lengths, alpha);
    const Vec2 pk = pc.v[m];
    const Vec2 ek = unit_at(pc.heading);
    const double next = lengths[m + 1];
    const double tail = length_sum(lengths, m + 2, n - 1);
    const double reach = norm(pk);
    if (reach == 0.0) throw Infeasible("prefix returns to the origin");
    if (next > tail + reach + 1e-12 * lengths.perimeter() || reach > next + tail + 1e-12 * lengths.perimeter())
        throw Infeasible("prefix admits no closing chain");

    struct Candidate {
        Vec2 x;
        double theta;
    };
    std::vector<Candidate> qualifying;
    for (const Vec2 &x : circle_circle_intersection(pk, next, kOrigin, tail)) {
        const double turn_next = signed_angle(x - pk, kOrigin - x);
        const double turn_last = signed_angle(kOrigin - x, Vec2{1.0, 0.0});
        if (turn_next >= -kConvexSlack && turn_last >= -kConvexSlack)
            qualifying.push_back({x, signed_angle(ek, x - pk)});
    }
    std::sort(qualifying.begin(), qualifying.end(),
              [](const Candidate &a, const Candidate &b) { return a.theta < b.theta; });

    // Rounding can leave the straight tail a hair below flat at the top of the
    // previous interval.
    if (!qualifying.empty() && qualifying.front().theta >= -kConvexSlack) {
        std::vector<Vec2> v = pc.v;
        v[m + 1] = qualifying.front().x;
        v[n - 1] = kOrigin;
        fill_straight(v, lengths, m + 1, n - 1);
        TurnBound out;
        out.value = std::max(0.0, qualifying.front().theta);
        out.witness.kind = WitnessKind::minimal_case_b;
        out.witness.chain.vertices = std::move(v);
        out.witness.chain.canonical = true;
        out.witness.theta_k = out.value;
        out.witness.tie = qualifying.size() > 1;
        if (!is_convex_witness(out.witness.chain, out.witness.angles))
            throw Infeasible("straight-tail configuration is not convex; prefix is not realizable");
        return out;
    }

    // Case (a): the straight tail would need a negative turn, so the turn at p_k
    // can drop all the way to 0. Any convex completion with a flat p_k serves.
    if (m + 1 > n - 3) throw Infeasible("rigid completion needs a negative turn; prefix is not realizable");
    std::vector<double> extended(alpha.begin(), alpha.end());
    extended.push_back(0.0);
    TurnBound deeper = min_unchecked(lengths, extended);
    TurnBound out;
    out.value = 0.0;
    out.witness.kind = WitnessKind::minimal_case_a;
    out.witness.chain = std::move(deeper.witness.chain);
    out.witness.angles = std::move(deeper.witness.angles);
    out.witness.theta_k = 0.0;
    return out;
}

TurnBound max_unchecked(const SideLengths &lengths, std::span<const double> alpha) {
    const std::size_t n = lengths.size();
    const std::size_t m = alpha.size();
    const PrefixChain pc = prefix_chain(lengths, alpha);
    const Vec2 pk = pc.v[m];
    const Vec2 ek = unit_at(pc.heading);

    std::vector<TurnBound> valid;
    for (std::size_t J = m + 1; J + 2 <= n; ++J) {
        // The straight run p_k .. p_j ends at v[J]; its far neighbour is pinned.
        const double run = length_sum(lengths, m + 1, J);
        Vec2 anchor = kOrigin;
        if (J + 2 < n) anchor = {-length_sum(lengths, J + 2, n - 1), 0.0};
        std::vector<Vec2> hits;
        try {
            hits = circle_circle_intersection(pk, run, anchor, lengths[J + 1]);
        } catch (const DegenerateGeometry &) {
            continue;
        }
        for (const Vec2 &x : hits) {
            TurnBound cand;
            auto &v = cand.witness.chain.vertices;
            v = pc.v;
            v[J] = x;
            fill_straight(v, lengths, m, J);
            v[n - 1] = kOrigin;
            if (J + 2 < n) {
                v[J + 1] = anchor;
                for (std::size_t i = J + 2; i + 1 < n; ++i) v[i] = {-length_sum(lengths, i + 1, n - 1), 0.0};
            }
            cand.witness.chain.canonical = true;
            if (!is_convex_witness(cand.witness.chain, cand.witness.angles)) continue;
            // convex up to kConvexSlack; a turn of -1e-17 is a flat vertex
            cand.value = std::max(0.0, signed_angle(ek, x - pk));
            cand.witness.kind = WitnessKind::maximal;
            cand.witness.j = J + 1;
            cand.witness.theta_k = cand.value;
            valid.push_back(std::move(cand));
        }
    }
    if (valid.empty())
        throw Infeasible("no maximally stretched candidate is convex; prefix lies outside the convex atlas");

    auto best = std::max_element(valid.begin(), valid.end(),
                                 [](const TurnBound &a, const TurnBound &b) { return a.value < b.value; });
    TurnBound out = std::move(*best);
    out.witness.tie = valid.size() > 1;
    return out;
}

} // namespace

TurnBound min_turn_angle(const SideLengths &lengths, std::span<const double> alpha) {
    check_level(lengths, alpha);
    if (!contains_prefix(lengths, alpha)) throw Infeasible("prefix is not realized by any convex configuration");
    return min_unchecked(lengths, alpha);
}

TurnBound max_turn_angle(const SideLengths &lengths, std::span<const double> alpha) {
    check_level(lengths, alpha);
    if (!contains_prefix(lengths, alpha)) throw Infeasible("prefix is not realized by any convex configuration");
    return max_unchecked(lengths, alpha);
}

bool contains_prefix(const SideLengths &lengths, std::span<const double> alpha) {
    if (alpha.size() + 2 > lengths.size())
        throw InvalidInput("prefix longer than n-2 turn angles");
    for (std::size_t m = 0; m < alpha.size(); ++m) {
        if (alpha[m] < -kPrefixSlack) return false;
        try {
            const double nu = min_unchecked(lengths, alpha.first(m)).value;
            if (alpha[m] < nu - kPrefixSlack) return false;
            const double mu = max_unchecked(lengths, alpha.first(m)).value;
            if (alpha[m] > mu + kPrefixSlack) return false;
        } catch (const Infeasible &) {
            return false;
        }
    }
    return true;
}

std::array<double, 4> quadrilateral_turn_angles(const Quadrilateral &quad) {
    std::array<double, 4> t{};
    for (std::size_t i = 0; i < 4; ++i) {
        const Vec2 in = quad.v[i] - quad.v[(i + 3) % 4];
        const Vec2 out = quad.v[(i + 1) % 4] - quad.v[i];
        t[i] = signed_angle(in, out);
    }
    return t;
}

Quadrilateral quadrilateral_expansive_step(const Quadrilateral &quad, double delta) {
    for (double t : quadrilateral_turn_angles(quad))
        if (!(t > 0.0 && t < kPi)) throw InvalidInput("quadrilateral is not strictly convex and counterclockwise");
    if (!(delta >= 0.0)) throw InvalidInput("expansive step must be nonnegative");
    if (delta == 0.0) return quad;

    const auto &v = quad.v;
    const Vec2 diag = v[2] - v[0];
    const Vec2 far = v[2] + (delta / norm(diag)) * diag;

    auto replace = [&](std::size_t i) {
        const auto hits = circle_circle_intersection(v[0], distance(v[0], v[i]), far, distance(v[2], v[i]));
        if (hits.size() < 2) throw MotionBlocked("diagonal longer than the two sides can span");
        const int side = orientation(v[0], v[2], v[i]);
        return orientation(v[0], far, hits[0]) == side ? hits[0] : hits[1];
    };

    Quadrilateral out{{v[0], replace(1), far, replace(3)}};
    for (double t : quadrilateral_turn_angles(out))
        if (!(t > 0.0 && t < kPi)) throw MotionBlocked("a turn angle reached 0 or pi");
    return out;
}

std::vector<double> interval_grid(double lo, double hi, std::size_t count) {
    if (count <= 1 || !(hi - lo > 1e-12)) return {lo};
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    out.back() = hi;
    return out;
}

std::vector<std::vector<double>> AtlasSample::points() const {
    std::vector<std::vector<double>> out;
    for (const auto &node : nodes) {
        for (double t : interval_grid(node.nu, node.mu, grid)) {
            auto p = node.prefix;
            p.push_back(t);
            out.push_back(std::move(p));
        }
    }
    return out;
}

AtlasSample sample_atlas(const SideLengths &lengths, std::size_t k, std::size_t grid) {
    const std::size_t n = lengths.size();
    if (k < 1 || k + 2 > n) throw InvalidInput("atlas level must satisfy 1 <= k <= n-2");
    if (grid < 1) throw InvalidInput("grid must have at least one point");
    if (!is_generic(lengths)) throw Infeasible("side lengths admit a straight-line configuration");

    std::vector<std::vector<double>> prefixes{{}};
    for (std::size_t level = 1; level < k; ++level) {
        std::vector<std::vector<double>> next;
        for (const auto &p : prefixes) {
            const double nu = min_unchecked(lengths, p).value;
            const double mu = max_unchecked(lengths, p).value;
            for (double t : interval_grid(nu, mu, grid)) {
                auto q = p;
                q.push_back(t);
                next.push_back(std::move(q));
            }
        }
        prefixes = std::move(next);
    }

    AtlasSample atlas;
    atlas.k = k;
    atlas.grid = grid;
    atlas.nodes.reserve(prefixes.size());
    for (auto &p : prefixes) {
        AtlasNode node;
        auto lo = min_unchecked(lengths, p);
        auto hi = max_unchecked(lengths, p);
        node.prefix = std::move(p);
        node.nu = lo.value;
        node.mu = hi.value;
        node.min_witness = std::move(lo.witness);
        node.max_witness = std::move(hi.witness);
        atlas.nodes.push_back(std::move(node));
    }
    return atlas;
}

} // namespace polylink
