#include "polylink/energy.hpp"

#include "polylink/config_space.hpp"
#include "polylink/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace polylink {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct EllipticTerms {
    double value = 0.0;
    std::vector<Vec2> grad; // dF / d vertex, filled on request
};

EllipticTerms elliptic_terms(const std::vector<Vec2> &v, bool with_grad) {
    const std::size_t n = v.size();
    EllipticTerms out;
    if (with_grad) out.grad.assign(n, Vec2{});
    for (std::size_t e = 0; e < n; ++e) {
        const std::size_t ia = (e + n - 1) % n, ib = e;
        const Vec2 a = v[ia], b = v[ib];
        const double ab = distance(a, b);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == ia || j == ib) continue;
            const Vec2 c = v[j];
            const double ca = distance(a, c), cb = distance(b, c);
            const double d = ca + cb - ab;
            if (!(d > 0.0))
                throw NotEmbedded("vertex " + std::to_string(j + 1) + " lies on bar " + std::to_string(e + 1));
            out.value += 1.0 / (d * d);
            if (!with_grad) continue;
            const double w = -2.0 / (d * d * d);
            const Vec2 u_ca = (1.0 / ca) * (c - a);
            const Vec2 u_cb = (1.0 / cb) * (c - b);
            const Vec2 u_ba = (1.0 / ab) * (b - a);
            out.grad[j] += w * (u_ca + u_cb);
            out.grad[ia] += w * (u_ba - u_ca);
            out.grad[ib] += w * (-u_cb - u_ba);
        }
    }
    return out;
}

// log of sum_i a(-theta_i), split as max exponent + log of the rescaled sum.
struct LogBump {
    double max_exponent = kNegInf;
    double scaled_sum = 0.0; // sum exp(e_i - max_exponent)
    std::vector<double> exponent; // -1/x^2 per angle, -inf when inactive

    double log_value() const { return scaled_sum > 0.0 ? max_exponent + std::log(scaled_sum) : kNegInf; }
};

LogBump log_bump(std::span<const double> angles) {
    LogBump b;
    b.exponent.assign(angles.size(), kNegInf);
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const double x = -angles[i];
        if (!(x > 0.0)) continue;
        const double x2 = x * x;
        if (x2 == 0.0) continue; // 1/x^2 overflows: a(x) is 0 to any precision
        b.exponent[i] = -1.0 / x2;
        b.max_exponent = std::max(b.max_exponent, b.exponent[i]);
    }
    if (b.max_exponent == kNegInf) return b;
    for (double e : b.exponent)
        if (e != kNegInf) b.scaled_sum += std::exp(e - b.max_exponent);
    return b;
}

std::vector<Vec2> generate_vertices(std::span<const double> free_angles, const SideLengths &lengths) {
    const std::size_t n = lengths.size();
    std::vector<Vec2> v(n);
    v[0] = {lengths[0], 0.0};
    double heading = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        heading += free_angles[i - 1];
        v[i] = v[i - 1] + lengths[i] * unit_at(heading);
    }
    return v;
}

void check_size(const ReducedCoords &coords, const SideLengths &lengths) {
    if (coords.free_angles.size() + 1 != lengths.size())
        throw InvalidInput("expected " + std::to_string(lengths.size() - 1) + " free angles, got " +
                           std::to_string(coords.free_angles.size()));
}

} // namespace

double elliptic_energy(const PolygonChain &chain) {
    if (chain.size() < 3) throw InvalidInput("a closed chain needs at least 3 vertices");
    return elliptic_terms(chain.vertices, false).value;
}

double bump(double x) { return x > kBumpCutoff ? std::exp(-1.0 / (x * x)) : 0.0; }

double bump_derivative(double x) { return x > kBumpCutoff ? 2.0 / (x * x * x) * std::exp(-1.0 / (x * x)) : 0.0; }

double modified_energy(const PolygonChain &chain) {
    const TurnAngles angles = turn_angles_from_vertices(chain);
    double a = 0.0;
    for (double t : angles.values) a += bump(-t);
    const double f = elliptic_energy(chain);
    return a * f;
}

double log_modified_energy(const PolygonChain &chain) {
    const TurnAngles angles = turn_angles_from_vertices(chain);
    const double f = elliptic_energy(chain);
    const double la = log_bump(angles.values).log_value();
    return la == kNegInf ? kNegInf : la + std::log(f);
}

double ReducedCoords::dependent_angle() const {
    double s = 0.0;
    for (double t : free_angles) s += t;
    return normalize_angle(kTwoPi - s);
}

TurnAngles ReducedCoords::angles() const {
    TurnAngles out;
    out.values = free_angles;
    out.values.push_back(dependent_angle());
    return out;
}

Vec2 ReducedCoords::closure_defect(const SideLengths &lengths) const {
    check_size(*this, lengths);
    return generate_vertices(free_angles, lengths).back();
}

ReducedCoords reduced_coords(const PolygonChain &chain) {
    const TurnAngles angles = turn_angles_from_vertices(chain);
    ReducedCoords c;
    c.free_angles.assign(angles.values.begin(), angles.values.end() - 1);
    return c;
}

PolygonChain chain_from_reduced(const ReducedCoords &coords, const SideLengths &lengths) {
    check_size(coords, lengths);
    PolygonChain chain;
    chain.vertices = generate_vertices(coords.free_angles, lengths);
    chain.canonical = chain.vertices.back() == Vec2{};
    return chain;
}

ReducedEnergy reduced_energy(const ReducedCoords &coords, const SideLengths &lengths) {
    check_size(coords, lengths);
    const auto v = generate_vertices(coords.free_angles, lengths);
    const double f = elliptic_terms(v, false).value;
    const TurnAngles angles = coords.angles();
    const double la = log_bump(angles.values).log_value();
    ReducedEnergy out;
    if (la == kNegInf) {
        out.log_value = kNegInf;
        return out;
    }
    out.log_value = la + std::log(f);
    out.value = std::exp(out.log_value);
    return out;
}

std::vector<Vec2> closure_jacobian(const ReducedCoords &coords, const SideLengths &lengths) {
    check_size(coords, lengths);
    const auto v = generate_vertices(coords.free_angles, lengths);
    const Vec2 last = v.back();
    std::vector<Vec2> jac(coords.free_angles.size());
    for (std::size_t t = 0; t < jac.size(); ++t) jac[t] = perp(last - v[t]);
    return jac;
}

std::vector<double> project_tangent(const std::vector<Vec2> &jacobian, const std::vector<double> &g) {
    if (jacobian.size() != g.size()) throw InvalidInput("jacobian and vector differ in size");
    double sxx = 0.0, sxy = 0.0, syy = 0.0, bx = 0.0, by = 0.0;
    for (std::size_t t = 0; t < g.size(); ++t) {
        sxx += jacobian[t].x * jacobian[t].x;
        sxy += jacobian[t].x * jacobian[t].y;
        syy += jacobian[t].y * jacobian[t].y;
        bx += jacobian[t].x * g[t];
        by += jacobian[t].y * g[t];
    }
    const double det = sxx * syy - sxy * sxy;
    if (!(det > 1e-14 * (sxx + syy) * (sxx + syy)))
        throw DegenerateGeometry("closure constraints are dependent (vertices nearly collinear)");
    const double lx = (syy * bx - sxy * by) / det;
    const double ly = (sxx * by - sxy * bx) / det;
    std::vector<double> out(g.size());
    for (std::size_t t = 0; t < g.size(); ++t) out[t] = g[t] - (jacobian[t].x * lx + jacobian[t].y * ly);
    return out;
}

EnergyGradient energy_gradient(const ReducedCoords &coords, const SideLengths &lengths) {
    check_size(coords, lengths);
    const std::size_t n = lengths.size();
    const auto v = generate_vertices(coords.free_angles, lengths);
    if (norm(v.back()) > 1e-9 * std::max(1.0, lengths.perimeter()))
        throw NoClosure("configuration is off the closure manifold (defect " + std::to_string(norm(v.back())) + ")");

    PolygonChain chain{v, false};
    chain.vertices.back() = Vec2{};
    const TurnAngles angles = coords.angles();
    if (!classify(chain, angles).embedded) throw NotEmbedded("energy gradient needs an embedded configuration");

    const EllipticTerms f = elliptic_terms(v, true);
    EnergyGradient out;
    out.gradient.assign(n - 1, 0.0);
    out.scaled_gradient.assign(n - 1, 0.0);

    const LogBump b = log_bump(angles.values);
    if (b.max_exponent == kNegInf) {
        out.log_value = kNegInf;
        out.log_scale = kNegInf;
        out.projected_gradient = out.gradient;
        out.scaled_projected_gradient = out.gradient;
        return out;
    }

    // dF/dtheta_t = sum_{j>t} G_j . perp(p_j - p_t), accumulated from the end.
    std::vector<double> dF(n - 1);
    Vec2 suffix{};
    double suffix_moment = 0.0;
    for (std::size_t j = n - 1; j >= 1; --j) {
        suffix += f.grad[j];
        suffix_moment += dot(f.grad[j], perp(v[j]));
        const std::size_t t = j - 1;
        dF[t] = suffix_moment - dot(suffix, perp(v[t]));
    }

    // a'(x)/exp(M) = exp(log 2 - 3 log x + e - M)
    std::vector<double> da(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (b.exponent[i] == kNegInf) continue;
        const double x = -angles[i];
        da[i] = std::exp(std::log(2.0) - 3.0 * std::log(x) + b.exponent[i] - b.max_exponent);
    }

    out.log_scale = b.max_exponent;
    out.log_value = b.log_value() + std::log(f.value);
    out.value = std::exp(out.log_value);
    const double scale = std::exp(b.max_exponent);
    for (std::size_t t = 0; t + 1 < n; ++t) {
        const double dA = -da[t] + da[n - 1];
        out.scaled_gradient[t] = b.scaled_sum * dF[t] + f.value * dA;
        out.gradient[t] = scale * out.scaled_gradient[t];
    }

    std::vector<Vec2> jac(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) jac[t] = perp(v[n - 1] - v[t]);
    out.scaled_projected_gradient = project_tangent(jac, out.scaled_gradient);
    out.projected_gradient.resize(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) out.projected_gradient[t] = scale * out.scaled_projected_gradient[t];
    return out;
}

std::vector<double> finite_difference_gradient(const ReducedCoords &coords, const SideLengths &lengths, double h,
                                               double log_scale) {
    check_size(coords, lengths);
    if (!(h > 0.0)) throw InvalidInput("finite-difference step must be positive");
    auto eval = [&](const ReducedCoords &c) {
        const double le = reduced_energy(c, lengths).log_value;
        return le == kNegInf ? 0.0 : std::exp(le - log_scale);
    };
    std::vector<double> out(coords.free_angles.size());
    for (std::size_t t = 0; t < out.size(); ++t) {
        ReducedCoords plus = coords, minus = coords;
        plus.free_angles[t] += h;
        minus.free_angles[t] -= h;
        out[t] = (eval(plus) - eval(minus)) / (2.0 * h);
    }
    return out;
}

} // namespace polylink
