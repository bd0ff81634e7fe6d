#include "polylink/cli.hpp"

#include "polylink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace polylink::cli {

std::string format_number(double x) {
    if (!std::isfinite(x)) return "null";
    if (x == 0.0) return std::signbit(x) ? "-0" : "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_exp(double log_value) {
    if (std::isnan(log_value)) return "nan";
    if (log_value == -std::numeric_limits<double>::infinity()) return "0";
    const double e = std::exp(log_value);
    if (std::isfinite(e) && e >= std::numeric_limits<double>::min()) return format_number(e);
    // Split log10 into integer exponent and mantissa in [1, 10).
    const double l10 = log_value / std::log(10.0);
    double k = std::floor(l10);
    double m = std::pow(10.0, l10 - k);
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.16f", m);
    if (buf[0] == '1' && buf[1] == '0') { // rounded up to 10
        k += 1.0;
        m /= 10.0;
    }
    std::snprintf(buf, sizeof buf, "%.16fe%.0f", m, k);
    return buf;
}

namespace {

void dump_to(const Json &j, std::string &out, int depth) {
    auto indent = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            indent(depth + 1);
            out += Json(it.key()).dump();
            out += ": ";
            dump_to(it.value(), out, depth + 1);
        }
        out += '\n';
        indent(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        // Arrays of scalars stay on one line; nested arrays and objects break.
        const bool flat = std::none_of(j.begin(), j.end(), [](const Json &e) { return e.is_structured(); });
        out += '[';
        bool first = true;
        for (const auto &e : j) {
            if (!first) out += flat ? ", " : ",";
            first = false;
            if (!flat) {
                out += '\n';
                indent(depth + 1);
            }
            dump_to(e, out, depth + 1);
        }
        if (!flat) {
            out += '\n';
            indent(depth);
        }
        out += ']';
        return;
    }
    case Json::value_t::number_float: out += format_number(j.get<double>()); return;
    default: out += j.dump(); return;
    }
}

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::vector<double> number_array(const Json &j, const char *field) {
    if (!j.is_array()) throw UsageError(std::string("\"") + field + "\" must be an array of numbers");
    std::vector<double> out;
    for (const auto &e : j) {
        if (!e.is_number()) throw UsageError(std::string("\"") + field + "\" must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

} // namespace

std::string dump(const Json &j) {
    std::string out;
    dump_to(j, out, 0);
    out += '\n';
    return out;
}

SideLengths parse_lengths(const Json &j) {
    if (!j.is_object() || !j.contains("lengths")) throw UsageError("expected an object with \"lengths\"");
    auto l = number_array(j.at("lengths"), "lengths");
    if (l.size() < 3) throw UsageError("need at least 3 lengths");
    for (double x : l)
        if (!(x > 0.0) || !std::isfinite(x)) throw UsageError("lengths must be positive and finite");
    return SideLengths(std::move(l));
}

SideLengths read_lengths_file(const std::string &path) { return parse_lengths(read_json(path)); }

PolygonInput parse_polygon(const Json &j) {
    if (!j.is_object()) throw UsageError("polygon file must hold a JSON object");
    const bool has_vertices = j.contains("vertices");
    const bool has_angles = j.contains("lengths") || j.contains("turn_angles");
    if (has_vertices == has_angles)
        throw UsageError("give either \"vertices\" or \"lengths\" with \"turn_angles\", not both");

    PolygonInput in;
    if (has_vertices) {
        const Json &v = j.at("vertices");
        if (!v.is_array() || v.size() < 3) throw UsageError("\"vertices\" needs at least 3 points");
        for (const auto &p : v) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
                throw UsageError("each vertex must be [x, y]");
            in.chain.vertices.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        for (const auto &p : in.chain.vertices)
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw UsageError("vertex coordinates must be finite");
        for (std::size_t i = 0; i < in.chain.size(); ++i) {
            const Vec2 e = in.chain.edge(i);
            if (e.x == 0.0 && e.y == 0.0) throw UsageError("repeated vertex (zero-length edge)");
        }
        return in;
    }
    if (!j.contains("lengths") || !j.contains("turn_angles"))
        throw UsageError("angle form needs both \"lengths\" and \"turn_angles\"");
    const SideLengths l = parse_lengths(j);
    TurnAngles a{number_array(j.at("turn_angles"), "turn_angles")};
    if (a.size() != l.size()) throw UsageError("\"turn_angles\" and \"lengths\" differ in size");
    for (double x : a.values)
        if (!(x > -kPi && x <= kPi)) throw UsageError("turn angles must lie in (-pi, pi]");
    auto r = vertices_from_turn_angles(l, a);
    in.chain = std::move(r.chain);
    in.closure_defect = r.closure_defect;
    // The last turn has to agree with what the vertices imply as well.
    const double tol = 1e-9 * std::max(1.0, l.perimeter());
    in.closed = r.closure_defect <= tol;
    if (in.closed) {
        in.chain.vertices.back() = Vec2{};
        in.chain.canonical = true;
        const double implied = signed_angle(in.chain.edge(l.size() - 1), in.chain.edge(0));
        if (std::abs(normalize_angle(implied - a[l.size() - 1])) > 1e-9) in.closed = false;
    }
    return in;
}

PolygonInput read_polygon_file(const std::string &path) { return parse_polygon(read_json(path)); }

Json chain_json(const PolygonChain &chain) {
    Json v = Json::array();
    for (const auto &p : chain.vertices) v.push_back(Json::array({p.x, p.y}));
    return v;
}

std::vector<std::string> sign_strings(const std::vector<int> &signs) {
    std::vector<std::string> out;
    for (int s : signs) out.push_back(s > 0 ? "+" : "-");
    return out;
}

std::array<double, 4> union_view_box(const std::vector<PolygonChain> &frames) {
    double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
    for (const auto &c : frames)
        for (const auto &p : c.vertices) {
            x0 = std::min(x0, p.x);
            y0 = std::min(y0, p.y);
            x1 = std::max(x1, p.x);
            y1 = std::max(y1, p.y);
        }
    if (!(x1 >= x0)) return {0, 0, 1, 1};
    double w = x1 - x0, h = y1 - y0;
    const double extent = std::max({w, h, 1e-9});
    // A flat frame still needs some height to be drawable.
    if (w < 1e-9 * extent) w = extent;
    if (h < 1e-9 * extent) h = extent;
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    w *= 1.1;
    h *= 1.1;
    return {cx - 0.5 * w, cy - 0.5 * h, w, h};
}

namespace {

std::string num(double x) {
    if (x == 0.0) x = 0.0; // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

// SVG y points down; flip so counterclockwise stays counterclockwise on screen.
std::string header(const std::array<double, 4> &vb) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(vb[0]) << ' ' << num(-(vb[1] + vb[3])) << ' '
      << num(vb[2]) << ' ' << num(vb[3]) << "\">\n";
    return s.str();
}

double stroke_width(const std::array<double, 4> &vb) { return 0.004 * std::hypot(vb[2], vb[3]); }

std::string path_d(const PolygonChain &chain) {
    std::string d;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        const Vec2 &p = chain.vertices[i];
        d += (i == 0 ? "M" : " L") + num(p.x) + ' ' + num(-p.y);
    }
    return d + " Z";
}

} // namespace

std::string svg_frame(const PolygonChain &chain, const std::array<double, 4> &vb) {
    const double sw = stroke_width(vb);
    std::string s = header(vb);
    s += "<path d=\"" + path_d(chain) + "\" fill=\"#dde8f4\" stroke=\"#1f4e79\" stroke-width=\"" + num(sw) +
         "\" stroke-linejoin=\"round\"/>\n";
    for (const auto &p : chain.vertices)
        s += "<circle cx=\"" + num(p.x) + "\" cy=\"" + num(-p.y) + "\" r=\"" + num(2 * sw) + "\" fill=\"#c0392b\"/>\n";
    s += "</svg>\n";
    return s;
}

std::string svg_summary(const std::vector<PolygonChain> &frames, const std::array<double, 4> &vb) {
    const double sw = stroke_width(vb);
    std::string s = header(vb);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const bool last = i + 1 == frames.size();
        s += "<path d=\"" + path_d(frames[i]) + "\" fill=\"none\" stroke=\"" + (last ? "#1f4e79" : "#7f8c8d") +
             "\" stroke-opacity=\"" + (last ? "1" : "0.3") + "\" stroke-width=\"" + num(sw) + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

void write_text(const std::string &path, const std::string &text) {
    const auto parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
    if (!out) throw UsageError("write failed: " + path);
}

void write_svg_frames(const std::string &dir, const std::vector<PolygonChain> &frames) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw UsageError("cannot create " + dir + ": " + ec.message());
    const auto vb = union_view_box(frames);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%05zu.svg", i);
        write_text((fs::path(dir) / name).string(), svg_frame(frames[i], vb));
    }
    write_text((fs::path(dir) / "summary.svg").string(), svg_summary(frames, vb));
}

} // namespace polylink::cli
