#include "polylink/cli.hpp"

#include "polylink/config_space.hpp"
#include "polylink/convex_atlas.hpp"
#include "polylink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace polylink::cli {

namespace {

// Maps library errors onto exit codes; anything unexpected is a usage error.
template <class F> int guarded(std::ostream &err, F &&body) {
    try {
        return body();
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidInput &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const Infeasible &e) {
        err << "error: " << e.what() << '\n';
        return kInfeasible;
    } catch (const NotEmbedded &e) {
        err << "error: " << e.what() << '\n';
        return kNotEmbedded;
    } catch (const ConvergenceFailure &e) {
        err << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

std::string csv_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return format_number(x);
}

Json sign_vectors_json(const StraightLineReport &r) {
    Json out = Json::array();
    for (const auto &s : r.sign_vectors) out.push_back(sign_strings(s));
    return out;
}

Json straight_line_report(const SideLengths &l) {
    const auto sl = straight_line_sign_vectors(l);
    Json j;
    j["n"] = l.size();
    j["lengths"] = std::vector<double>(l.values().begin(), l.values().end());
    j["feasible"] = is_feasible(l);
    j["generic"] = sl.sign_vectors.empty();
    j["straight_line"] = sign_vectors_json(sl);
    return j;
}

} // namespace

int cmd_analyze(const std::string &lengths_file, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const SideLengths l = read_lengths_file(lengths_file);
        const auto sl = straight_line_sign_vectors(l);
        const bool feasible = is_feasible(l);
        Json j;
        j["n"] = l.size();
        j["dimension"] = static_cast<long>(l.size()) - 3;
        j["perimeter"] = l.perimeter();
        j["feasible"] = feasible;
        j["generic"] = sl.sign_vectors.empty();
        j["straight_line"] = sign_vectors_json(sl);
        j["straight_line_exact"] = sl.exact;
        j["straight_line_tolerance"] = sl.tolerance;
        out << dump(j);
        return feasible ? kOk : kInfeasible;
    });
}

int cmd_check(const std::string &polygon_file, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const PolygonInput in = read_polygon_file(polygon_file);
        Json j;
        j["n"] = in.chain.size();
        j["closed"] = in.closed;
        j["closure_defect"] = in.closure_defect;
        if (!in.closed) {
            j["embedded"] = false;
            j["convex_ccw"] = false;
            out << dump(j);
            return kNotEmbedded;
        }
        const TurnAngles t = turn_angles_from_vertices(in.chain);
        const ConfigClass c = classify(in.chain, t);
        j["turn_angles"] = t.values;
        j["winding"] = c.winding;
        j["min_turn"] = c.min_turn;
        j["embedded"] = c.embedded;
        j["convex_ccw"] = c.convex_ccw;
        out << dump(j);
        return c.embedded ? kOk : kNotEmbedded;
    });
}

Json trace_json(const FlowTrace &trace) {
    Json j;
    j["lengths"] = trace.lengths;
    j["reflected"] = trace.reflected;
    j["status"] = to_string(trace.status);
    j["accepted_steps"] = trace.accepted_steps();
    Json records = Json::array();
    for (const auto &r : trace.records) {
        Json e;
        e["iteration"] = r.iteration;
        e["E"] = r.energy;
        e["log_E"] = r.log_energy;
        e["min_turn"] = r.min_turn;
        e["step"] = r.step;
        e["direction"] = to_string(r.direction);
        records.push_back(std::move(e));
    }
    j["records"] = std::move(records);
    Json snaps = Json::array();
    for (const auto &s : trace.snapshots) {
        Json e;
        e["iteration"] = s.iteration;
        e["vertices"] = chain_json(s.chain);
        snaps.push_back(std::move(e));
    }
    j["snapshots"] = std::move(snaps);
    j["final_vertices"] = chain_json(trace.final_chain);
    return j;
}

std::string energy_csv(const FlowTrace &trace) {
    std::ostringstream s;
    s << "iteration,E,log_E,min_turn\n";
    for (const auto &r : trace.records)
        s << r.iteration << ',' << format_exp(r.log_energy) << ',' << csv_number(r.log_energy) << ','
          << csv_number(r.min_turn) << '\n';
    return s.str();
}

int cmd_convexify(const std::string &polygon_file, const ConvexifyOptions &options, std::ostream &out,
                  std::ostream &err) {
    return guarded(err, [&] {
        const PolygonInput in = read_polygon_file(polygon_file);
        if (!in.closed) throw NotEmbedded("turn angles do not close up");
        const FlowTrace trace = convexify(in.chain, options.params);

        if (options.trace_path) write_text(*options.trace_path, dump(trace_json(trace)));
        if (options.svg_dir) {
            std::vector<PolygonChain> frames;
            for (const auto &s : trace.snapshots) frames.push_back(s.chain);
            write_svg_frames(*options.svg_dir, frames);
            write_text(*options.svg_dir + "/energy.csv", energy_csv(trace));
        }

        const auto &first = trace.records.front(), &last = trace.records.back();
        Json j;
        j["status"] = to_string(trace.status);
        j["accepted_steps"] = trace.accepted_steps();
        j["reflected"] = trace.reflected;
        j["initial_log_E"] = first.log_energy;
        j["final_log_E"] = last.log_energy;
        j["initial_min_turn"] = first.min_turn;
        j["final_min_turn"] = last.min_turn;
        j["final_vertices"] = chain_json(trace.final_chain);
        out << dump(j);
        return trace.status == FlowStatus::converged_convex ? kOk : kNoConvergence;
    });
}

int cmd_atlas(const std::string &lengths_file, const AtlasOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        const SideLengths l = read_lengths_file(lengths_file);
        const std::size_t n = l.size();
        if (options.k < 1 || options.k + 3 > n)
            throw UsageError("--k must satisfy 1 <= k <= n-3 (n = " + std::to_string(n) + ")");
        if (options.grid < 1) throw UsageError("--grid must be at least 1");
        if (options.format != "csv" && options.format != "json") throw UsageError("--out must be csv or json");
        if (!is_feasible(l) || !is_generic(l)) {
            out << dump(straight_line_report(l));
            err << "error: lengths are " << (is_feasible(l) ? "not generic" : "infeasible") << '\n';
            return kInfeasible;
        }

        const AtlasSample a = sample_atlas(l, options.k, options.grid);
        std::string text;
        if (options.format == "csv") {
            std::ostringstream s;
            for (std::size_t i = 1; i < options.k; ++i) s << "alpha_" << i << ',';
            s << "nu,mu,witness_kind_min,witness_kind_max,witness_j\n";
            for (const auto &node : a.nodes) {
                for (double x : node.prefix) s << format_number(x) << ',';
                s << format_number(node.nu) << ',' << format_number(node.mu) << ',' << to_string(node.min_witness.kind)
                  << ',' << to_string(node.max_witness.kind) << ',';
                if (node.max_witness.j) s << *node.max_witness.j;
                s << '\n';
            }
            text = s.str();
        } else {
            Json j;
            j["lengths"] = std::vector<double>(l.values().begin(), l.values().end());
            j["k"] = a.k;
            j["grid"] = a.grid;
            Json nodes = Json::array();
            for (const auto &node : a.nodes) {
                Json e;
                e["prefix"] = node.prefix;
                e["nu"] = node.nu;
                e["mu"] = node.mu;
                e["witness_kind_min"] = to_string(node.min_witness.kind);
                e["witness_kind_max"] = to_string(node.max_witness.kind);
                e["witness_j"] = node.max_witness.j ? Json(*node.max_witness.j) : Json(nullptr);
                e["min_witness"] = chain_json(node.min_witness.chain);
                e["max_witness"] = chain_json(node.max_witness.chain);
                nodes.push_back(std::move(e));
            }
            j["nodes"] = std::move(nodes);
            text = dump(j);
        }
        if (options.output)
            write_text(*options.output, text);
        else
            out << text;
        return kOk;
    });
}

namespace {

// Sign pattern of a folded chain: direction of each bar along the first one.
std::vector<int> fold_signs(const PolygonChain &c) {
    std::vector<int> s;
    const Vec2 e0 = c.edge(0);
    for (std::size_t i = 0; i < c.size(); ++i) s.push_back(dot(c.edge(i), e0) >= 0.0 ? 1 : -1);
    return s;
}

} // namespace

int cmd_demo_figure_eight(const DemoOptions &options, std::ostream &out, std::ostream &err) {
    return guarded(err, [&] {
        if (options.samples < 4) throw UsageError("--samples must be at least 4");
        const SideLengths l({6, 4, 2, 4});
        const ConfigSampleSet set = enumerate_configurations(l, options.samples);
        const auto loops = sweep_cycles(set);

        std::size_t classes = 0, nonembedded = 0, ccw = 0, cw = 0, arcs = 0;
        Json folds = Json::array();
        std::vector<std::size_t> arc; // CCW samples in sweep order, starting at a run boundary
        for (const auto &loop : loops) {
            std::vector<bool> bad, good;
            for (std::size_t idx : loop) {
                const auto &c = set.samples[idx].cls;
                bad.push_back(!c.embedded);
                good.push_back(c.embedded && c.winding > 0.0);
                if (!c.embedded) {
                    ++nonembedded;
                    const auto signs = sign_strings(fold_signs(set.samples[idx].chain));
                    if (std::find(folds.begin(), folds.end(), Json(signs)) == folds.end()) folds.push_back(signs);
                } else if (c.winding > 0.0) {
                    ++ccw;
                } else {
                    ++cw;
                }
            }
            classes += count_cyclic_runs(bad);
            arcs += count_cyclic_runs(good);
            const std::size_t m = loop.size();
            for (std::size_t s = 0; s < m; ++s) {
                if (!good[s] || good[(s + m - 1) % m]) continue;
                for (std::size_t t = 0; t < m && good[(s + t) % m]; ++t) arc.push_back(loop[(s + t) % m]);
            }
            if (arc.empty() && !good.empty() && good[0]) arc = loop; // the whole loop is CCW
        }
        const bool contiguous = arcs == 1;

        Json j;
        j["lengths"] = std::vector<double>(l.values().begin(), l.values().end());
        j["samples"] = options.samples;
        j["configurations"] = set.samples.size();
        j["loops"] = loops.size();
        j["nonembedded_count"] = classes;
        j["nonembedded_samples"] = nonembedded;
        j["nonembedded_sign_vectors"] = std::move(folds);
        j["embedded_ccw_samples"] = ccw;
        j["embedded_cw_samples"] = cw;
        j["ccw_arcs"] = arcs;
        j["ccw_arc_contiguous"] = contiguous;

        if (options.svg_dir) {
            const std::size_t want = std::min<std::size_t>(12, arc.size());
            std::vector<PolygonChain> frames;
            for (std::size_t i = 0; i < want; ++i) frames.push_back(set.samples[arc[i * arc.size() / want]].chain);
            write_svg_frames(*options.svg_dir, frames);
            j["frames"] = frames.size();
        }
        out << dump(j);
        return classes == 1 && contiguous ? kOk : kNoConvergence;
    });
}

} // namespace polylink::cli
