// Python surface: plain lists, tuples and dicts in and out.
#include "polylink/config_space.hpp"
#include "polylink/convex_atlas.hpp"
#include "polylink/energy.hpp"
#include "polylink/errors.hpp"
#include "polylink/flow.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace polylink;

namespace {

using Points = std::vector<std::pair<double, double>>;

PolygonChain chain_of(const Points &pts) {
    PolygonChain c;
    for (const auto &[x, y] : pts) c.vertices.push_back({x, y});
    return c;
}

Points points_of(const PolygonChain &c) {
    Points out;
    for (const auto &p : c.vertices) out.emplace_back(p.x, p.y);
    return out;
}

py::dict bound_dict(const TurnBound &b) {
    py::dict d;
    d["value"] = b.value;
    d["kind"] = to_string(b.witness.kind);
    d["j"] = b.witness.j ? py::object(py::int_(*b.witness.j)) : py::object(py::none());
    d["vertices"] = points_of(b.witness.chain);
    d["turn_angles"] = b.witness.angles.values;
    return d;
}

py::dict classify_dict(const ConfigClass &c) {
    py::dict d;
    d["embedded"] = c.embedded;
    d["winding"] = c.winding;
    d["convex_ccw"] = c.convex_ccw;
    d["min_turn"] = c.min_turn;
    return d;
}

std::function<bool(const ConfigClass &)> region_predicate(const std::string &region) {
    if (region == "convex") return [](const ConfigClass &c) { return c.convex_ccw; };
    if (region == "embedded") return [](const ConfigClass &c) { return c.embedded && c.winding > 0.0; };
    if (region == "all") return [](const ConfigClass &) { return true; };
    throw InvalidInput("region must be convex, embedded or all");
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Closed planar linkages: configuration-space predicates, convex atlas, energy flow.";

    auto base = py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<DegenerateGeometry>(m, "DegenerateGeometry", PyExc_ArithmeticError);
    py::register_exception<NoClosure>(m, "NoClosure", PyExc_RuntimeError);
    py::register_exception<Infeasible>(m, "Infeasible", PyExc_ValueError);
    py::register_exception<NotEmbedded>(m, "NotEmbedded", PyExc_ValueError);
    py::register_exception<MotionBlocked>(m, "MotionBlocked", PyExc_RuntimeError);
    py::register_exception<ConvergenceFailure>(m, "ConvergenceFailure", PyExc_RuntimeError);
    (void)base;

    m.def("turn_angles", [](const Points &v) { return turn_angles_from_vertices(chain_of(v)).values; },
          py::arg("vertices"), "Signed turn angle at every vertex, in (-pi, pi].");
    m.def(
        "vertices_from_turn_angles",
        [](const std::vector<double> &lengths, const std::vector<double> &angles) {
            const auto r = vertices_from_turn_angles(SideLengths(lengths), TurnAngles{angles});
            return std::make_pair(points_of(r.chain), r.closure_defect);
        },
        py::arg("lengths"), py::arg("turn_angles"), "Vertices in the canonical frame and the closure defect |p_n|.");
    m.def("canonicalize", [](const Points &v) { return points_of(canonicalize(chain_of(v))); }, py::arg("vertices"));
    m.def("classify", [](const Points &v) { return classify_dict(classify(chain_of(v))); }, py::arg("vertices"));

    m.def("is_feasible", [](const std::vector<double> &l) { return is_feasible(SideLengths(l)); }, py::arg("lengths"));
    m.def("is_generic", [](const std::vector<double> &l) { return is_generic(SideLengths(l)); }, py::arg("lengths"));
    m.def(
        "straight_line_sign_vectors",
        [](const std::vector<double> &l) { return straight_line_sign_vectors(SideLengths(l)).sign_vectors; },
        py::arg("lengths"));

    m.def(
        "min_turn_angle",
        [](const std::vector<double> &l, const std::vector<double> &prefix) {
            return bound_dict(min_turn_angle(SideLengths(l), prefix));
        },
        py::arg("lengths"), py::arg("prefix") = std::vector<double>{});
    m.def(
        "max_turn_angle",
        [](const std::vector<double> &l, const std::vector<double> &prefix) {
            return bound_dict(max_turn_angle(SideLengths(l), prefix));
        },
        py::arg("lengths"), py::arg("prefix") = std::vector<double>{});
    m.def(
        "contains_prefix",
        [](const std::vector<double> &l, const std::vector<double> &prefix) {
            return contains_prefix(SideLengths(l), prefix);
        },
        py::arg("lengths"), py::arg("prefix"));
    m.def(
        "sample_atlas",
        [](const std::vector<double> &l, std::size_t k, std::size_t grid) {
            py::list out;
            for (const auto &node : sample_atlas(SideLengths(l), k, grid).nodes) {
                py::dict d;
                d["prefix"] = node.prefix;
                d["nu"] = node.nu;
                d["mu"] = node.mu;
                out.append(d);
            }
            return out;
        },
        py::arg("lengths"), py::arg("k"), py::arg("grid"));

    m.def("elliptic_energy", [](const Points &v) { return elliptic_energy(chain_of(v)); }, py::arg("vertices"));
    m.def("bump", &bump, py::arg("x"));
    m.def("modified_energy", [](const Points &v) { return modified_energy(chain_of(v)); }, py::arg("vertices"));
    m.def("log_modified_energy", [](const Points &v) { return log_modified_energy(chain_of(v)); },
          py::arg("vertices"));
    m.def(
        "energy_gradient",
        [](const Points &v) {
            const PolygonChain c = canonicalize(chain_of(v));
            const SideLengths l(c.edge_lengths());
            const auto g = energy_gradient(reduced_coords(c), l);
            py::dict d;
            d["value"] = g.value;
            d["log_value"] = g.log_value;
            d["log_scale"] = g.log_scale;
            d["gradient"] = g.gradient;
            d["projected_gradient"] = g.projected_gradient;
            d["scaled_gradient"] = g.scaled_gradient;
            d["scaled_projected_gradient"] = g.scaled_projected_gradient;
            return d;
        },
        py::arg("vertices"), "Gradient in the free turn angles theta_1 .. theta_{n-1} of the canonical chain.");

    m.def(
        "convexify",
        [](const Points &v, double initial_step, std::size_t max_iterations, std::size_t snapshot_stride) {
            FlowParams p;
            p.initial_step = initial_step;
            p.max_iterations = max_iterations;
            p.snapshot_stride = snapshot_stride;
            FlowTrace t;
            {
                py::gil_scoped_release release;
                t = convexify(chain_of(v), p);
            }
            py::list records, snapshots;
            for (const auto &r : t.records) {
                py::dict d;
                d["iteration"] = r.iteration;
                d["log_E"] = r.log_energy;
                d["min_turn"] = r.min_turn;
                d["step"] = r.step;
                d["direction"] = to_string(r.direction);
                records.append(d);
            }
            for (const auto &s : t.snapshots) snapshots.append(py::make_tuple(s.iteration, points_of(s.chain)));
            py::dict d;
            d["status"] = to_string(t.status);
            d["reflected"] = t.reflected;
            d["accepted_steps"] = t.accepted_steps();
            d["records"] = records;
            d["snapshots"] = snapshots;
            d["final_vertices"] = points_of(t.final_chain);
            return d;
        },
        py::arg("vertices"), py::arg("initial_step") = FlowParams{}.initial_step,
        py::arg("max_iterations") = FlowParams{}.max_iterations, py::arg("snapshot_stride") = 1);

    m.def(
        "region_topology",
        [](const std::vector<double> &l, std::size_t grid, const std::string &region) {
            const auto pred = region_predicate(region);
            RegionTopology t;
            {
                py::gil_scoped_release release;
                t = folded_region_topology(SideLengths(l), grid, pred);
            }
            py::dict d;
            d["components"] = t.components;
            d["euler_characteristic"] = t.euler_characteristic();
            d["vertices"] = t.vertices;
            d["edges"] = t.edges;
            d["faces"] = t.faces;
            return d;
        },
        py::arg("lengths"), py::arg("grid"), py::arg("region") = "embedded",
        "Sampled region of a pentagon's configuration space: convex, embedded (CCW) or all.");
}
