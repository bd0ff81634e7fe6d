#include "polylink/flow.hpp"

#include "polylink/config_space.hpp"
#include "polylink/energy.hpp"
#include "polylink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

namespace polylink {

void FlowParams::validate() const {
    if (!(initial_step > 0.0)) throw InvalidInput("initial step must be positive");
    if (!(backtracking > 0.0 && backtracking < 1.0)) throw InvalidInput("backtracking factor must lie in (0, 1)");
    if (!(convexity_tolerance > 0.0)) throw InvalidInput("convexity tolerance must be positive");
    if (!(closure_tolerance > 0.0)) throw InvalidInput("closure tolerance must be positive");
    if (!(min_step > 0.0)) throw InvalidInput("minimum step must be positive");
    if (snapshot_stride == 0) throw InvalidInput("snapshot stride must be at least 1");
    if (max_newton_iterations == 0) throw InvalidInput("need at least one Newton iteration");
}

const char *to_string(FlowStatus status) {
    switch (status) {
    case FlowStatus::converged_convex: return "converged_convex";
    case FlowStatus::max_iterations: return "max_iterations";
    case FlowStatus::stalled: return "stalled";
    }
    return "unknown";
}

const char *to_string(FlowDirection direction) {
    return direction == FlowDirection::gradient ? "gradient" : "raise_reflex";
}

std::vector<double> project_to_closure(std::vector<double> free_angles, const SideLengths &lengths,
                                       double tolerance, std::size_t max_iterations) {
    ReducedCoords c{std::move(free_angles)};
    const double perimeter = lengths.perimeter();
    const double target = tolerance * std::max(1.0, perimeter);
    Vec2 defect = c.closure_defect(lengths);
    if (!(norm(defect) < 0.1 * perimeter))
        throw NoClosure("closure defect " + std::to_string(norm(defect)) + " exceeds a tenth of the perimeter");

    for (std::size_t it = 0; norm(defect) >= target; ++it) {
        if (it == max_iterations)
            throw ConvergenceFailure("closure projection did not converge (defect " + std::to_string(norm(defect)) +
                                     ")");
        // Minimum-norm Gauss-Newton step: delta = -J^T (J J^T)^-1 defect.
        const auto jac = closure_jacobian(c, lengths);
        double sxx = 0.0, sxy = 0.0, syy = 0.0;
        for (const Vec2 &col : jac) {
            sxx += col.x * col.x;
            sxy += col.x * col.y;
            syy += col.y * col.y;
        }
        const double det = sxx * syy - sxy * sxy;
        if (!(det > 1e-14 * (sxx + syy) * (sxx + syy)))
            throw ConvergenceFailure("closure Jacobian is singular (chain nearly straight)");
        const double lx = (syy * defect.x - sxy * defect.y) / det;
        const double ly = (sxx * defect.y - sxy * defect.x) / det;
        for (std::size_t t = 0; t < jac.size(); ++t) c.free_angles[t] -= jac[t].x * lx + jac[t].y * ly;
        defect = c.closure_defect(lengths);
    }
    for (double &t : c.free_angles) t = normalize_angle(t);
    return std::move(c.free_angles);
}

namespace {

// Accepted gradient steps below this fraction of the initial step count as collapsed.
constexpr double kCollapse = 1e-3;

struct Start {
    SideLengths lengths;
    ReducedCoords coords;
    bool reflected = false;
};

Start prepare(const PolygonChain &chain, const FlowParams &params) {
    params.validate();
    if (chain.size() < 3) throw InvalidInput("a closed chain needs at least 3 vertices");
    TurnAngles angles;
    try {
        angles = turn_angles_from_vertices(chain);
    } catch (const DegenerateGeometry &e) {
        throw InvalidInput(e.what());
    }
    const ConfigClass cls = classify(chain, angles);
    if (!cls.embedded) throw NotEmbedded("polygon is not embedded");

    PolygonChain canon = canonicalize(chain);
    const bool reflected = cls.winding < 0.0;
    if (reflected) canon = reflect_x(canon);
    Start s{SideLengths(canon.edge_lengths()), reduced_coords(canon), reflected};
    s.coords.free_angles =
        project_to_closure(s.coords.free_angles, s.lengths, params.closure_tolerance, params.max_newton_iterations);
    return s;
}

struct State {
    ReducedCoords coords;
    PolygonChain chain;
    double log_energy = 0.0;
    double min_turn = 0.0;
};

PolygonChain closed_chain(const ReducedCoords &coords, const SideLengths &lengths) {
    PolygonChain chain = chain_from_reduced(coords, lengths);
    chain.vertices.back() = Vec2{};
    chain.canonical = true;
    return chain;
}

// Regenerates, re-closes and screens a trial point; nullopt if it cannot be
// closed or is not embedded.
std::optional<State> evaluate(std::vector<double> free_angles, const SideLengths &lengths, const FlowParams &params) {
    State s;
    try {
        s.coords.free_angles = project_to_closure(std::move(free_angles), lengths, params.closure_tolerance,
                                                  params.max_newton_iterations);
        s.chain = closed_chain(s.coords, lengths);
        const TurnAngles angles = s.coords.angles();
        const ConfigClass cls = classify(s.chain, angles);
        if (!cls.embedded || cls.winding < 0.0) return std::nullopt;
        s.log_energy = reduced_energy(s.coords, lengths).log_value;
        s.min_turn = angles.min();
    } catch (const std::runtime_error &) {
        return std::nullopt;
    }
    return s;
}

State initial_state(const Start &start) {
    State s;
    s.coords = start.coords;
    s.chain = closed_chain(s.coords, start.lengths);
    s.log_energy = reduced_energy(s.coords, start.lengths).log_value;
    s.min_turn = s.coords.angles().min();
    return s;
}

// Unit direction along sign * projected gradient; empty when there is none.
std::vector<double> direction(const State &s, const SideLengths &lengths, double sign) {
    EnergyGradient g;
    try {
        g = energy_gradient(s.coords, lengths);
    } catch (const std::runtime_error &) {
        return {};
    }
    double len = 0.0;
    for (double x : g.scaled_projected_gradient) len += x * x;
    len = std::sqrt(len);
    if (!(len > 0.0) || !std::isfinite(len)) return {};
    std::vector<double> d(g.scaled_projected_gradient);
    for (double &x : d) x *= sign / len;
    return d;
}

// Euclidean projection onto the probability simplex.
void project_simplex(std::vector<double> &w) {
    std::vector<double> u(w);
    std::sort(u.begin(), u.end(), std::greater<>());
    double sum = 0.0, tau = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        sum += u[i];
        const double t = (sum - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) tau = t;
    }
    for (double &x : w) x = std::max(0.0, x - tau);
}

// Unit tangent direction raising every reflex turn at once: the minimum-norm
// point of the hull of their projected gradients. Plain gradient steps zigzag
// once several reflex turns sit at the same small value, because the bump's
// log-slope 2/|theta|^3 makes whichever is lowest dominate.
std::vector<double> raise_direction(const State &s, const SideLengths &lengths) {
    const TurnAngles angles = s.coords.angles();
    const std::size_t m = s.coords.free_angles.size();
    std::vector<Vec2> jac;
    try {
        jac = closure_jacobian(s.coords, lengths);
    } catch (const std::runtime_error &) {
        return {};
    }
    std::vector<std::vector<double>> u;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        if (!(angles[i] < 0.0)) continue;
        std::vector<double> g(m, i == m ? -1.0 : 0.0);
        if (i < m) g[i] = 1.0;
        try {
            u.push_back(project_tangent(jac, g));
        } catch (const std::runtime_error &) {
            return {};
        }
    }
    if (u.empty()) return {};

    const std::size_t k = u.size();
    std::vector<std::vector<double>> gram(k, std::vector<double>(k, 0.0));
    double lip = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b)
            for (std::size_t t = 0; t < m; ++t) gram[a][b] += u[a][t] * u[b][t];
        lip += gram[a][a];
    }
    if (!(lip > 0.0)) return {};
    // Accelerated projected gradient on w^T G w over the simplex.
    std::vector<double> w(k, 1.0 / static_cast<double>(k)), y = w, prev = w;
    double tk = 1.0;
    for (int it = 0; it < 500; ++it) {
        std::vector<double> next(k);
        for (std::size_t a = 0; a < k; ++a) {
            double grad = 0.0;
            for (std::size_t b = 0; b < k; ++b) grad += gram[a][b] * y[b];
            next[a] = y[a] - grad / lip;
        }
        project_simplex(next);
        const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
        for (std::size_t a = 0; a < k; ++a) y[a] = next[a] + (tk - 1.0) / tn * (next[a] - w[a]);
        w = std::move(next);
        tk = tn;
    }
    std::vector<double> d(m, 0.0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t t = 0; t < m; ++t) d[t] += w[a] * u[a][t];
    double len = 0.0;
    for (double x : d) len += x * x;
    len = std::sqrt(len);
    if (!(len > 1e-12) || !std::isfinite(len)) return {};
    for (double &x : d) x /= len;
    return d;
}

std::vector<double> displaced(const State &s, const std::vector<double> &d, double step) {
    std::vector<double> out = s.coords.free_angles;
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += step * d[t];
    return out;
}

} // namespace

FlowTrace convexify(const PolygonChain &chain, const FlowParams &params) {
    const Start start = prepare(chain, params);
    FlowTrace trace;
    trace.lengths.assign(start.lengths.values().begin(), start.lengths.values().end());
    trace.reflected = start.reflected;

    State cur = initial_state(start);
    auto record = [&](double step, FlowDirection used) {
        const std::size_t it = trace.records.size();
        trace.records.push_back({it, std::exp(cur.log_energy), cur.log_energy, cur.min_turn, step, used});
        if (it % params.snapshot_stride == 0) trace.snapshots.push_back({it, cur.chain});
    };
    record(0.0, FlowDirection::gradient);

    double last_step = params.initial_step;
    while (true) {
        if (cur.min_turn >= -params.convexity_tolerance) {
            trace.status = FlowStatus::converged_convex;
            break;
        }
        if (trace.accepted_steps() >= params.max_iterations) {
            trace.status = FlowStatus::max_iterations;
            break;
        }
        const auto d = direction(cur, start.lengths, -1.0);
        std::optional<State> next;
        double step = std::min(params.initial_step, 2.0 * last_step);
        FlowDirection used = FlowDirection::gradient;
        if (!d.empty()) {
            for (; step >= params.min_step; step *= params.backtracking) {
                next = evaluate(displaced(cur, d, step), start.lengths, params);
                if (next && next->log_energy < cur.log_energy) break;
                next.reset();
            }
        }
        // Gradient steps collapsing: also try raising all reflex turns together
        // and keep whichever candidate ends lower.
        if (!next || step < kCollapse * params.initial_step) {
            const auto r = raise_direction(cur, start.lengths);
            if (!r.empty()) {
                for (double s = params.initial_step; s >= params.min_step; s *= params.backtracking) {
                    auto trial = evaluate(displaced(cur, r, s), start.lengths, params);
                    if (!trial || !(trial->log_energy < cur.log_energy)) continue;
                    if (!next || trial->log_energy < next->log_energy) {
                        next = std::move(trial);
                        step = s;
                        used = FlowDirection::raise_reflex;
                    }
                    break;
                }
            }
        }
        if (!next) {
            trace.status = FlowStatus::stalled;
            break;
        }
        cur = std::move(*next);
        if (used == FlowDirection::gradient) last_step = step;
        record(step, used);
    }

    if (trace.snapshots.back().iteration != trace.accepted_steps())
        trace.snapshots.push_back({trace.accepted_steps(), cur.chain});
    trace.final_chain = cur.chain;
    return trace;
}

PolygonChain reverse_flow_step(const PolygonChain &chain, const FlowParams &params, double energy_cap) {
    const Start start = prepare(chain, params);
    const State cur = initial_state(start);
    const auto d = direction(cur, start.lengths, 1.0);
    if (d.empty()) throw ConvergenceFailure("energy gradient vanishes; no ascent direction");
    const double log_cap = energy_cap > 0.0 ? std::log(energy_cap) : -std::numeric_limits<double>::infinity();
    for (double step = params.initial_step; step >= params.min_step; step *= params.backtracking) {
        const auto next = evaluate(displaced(cur, d, step), start.lengths, params);
        if (next && next->log_energy > cur.log_energy && next->log_energy <= log_cap) return next->chain;
    }
    throw ConvergenceFailure("no ascent step stays embedded and under the energy cap");
}

} // namespace polylink
