#pragma once
////////////////////////////////////////////////////////////////////////////////
// cli.hpp
////////////////////////////////////////////////////////////////////////////////
// The command-line surface as a library: file parsing, deterministic JSON/CSV
// writers, SVG frame sets and the five subcommands. Commands take explicit
// streams and return the process exit code, so tests drive them in-process.
//
// Exit codes:
//   0  success
//   1  I/O, parse or usage error
//   2  infeasible or non-generic lengths
//   3  non-embedded polygon
//   4  flow did not converge (stall or iteration cap)
////////////////////////////////////////////////////////////////////////////////

#include "polylink/flow.hpp"
#include "polylink/geometry.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace polylink::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kNotEmbedded = 3, kNoConvergence = 4 };

// Thrown for bad files, bad flags and unreadable/unwritable paths (exit 1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

// %.17g; non-finite values become null.
std::string format_number(double x);
// exp(log_value) without underflow: %.17g while representable as a normal
// double, otherwise mantissa-exponent text ("4.2e-51234"). -inf gives "0".
std::string format_exp(double log_value);
// Pretty JSON with two-space indent, key order as inserted, numbers via
// format_number. Ends with a newline.
std::string dump(const Json &j);

SideLengths parse_lengths(const Json &j);
SideLengths read_lengths_file(const std::string &path);

struct PolygonInput {
    PolygonChain chain;
    double closure_defect = 0.0; // nonzero only for the lengths + turn_angles form
    bool closed = true;
};
PolygonInput parse_polygon(const Json &j);
PolygonInput read_polygon_file(const std::string &path);

Json chain_json(const PolygonChain &chain);
std::vector<std::string> sign_strings(const std::vector<int> &signs);

// Throws UsageError when the file cannot be written.
void write_text(const std::string &path, const std::string &text);

// One frame_NNNNN.svg per chain plus summary.svg with all chains overlaid.
// All share the union bounding box padded by 5%.
void write_svg_frames(const std::string &dir, const std::vector<PolygonChain> &frames);
std::string svg_frame(const PolygonChain &chain, const std::array<double, 4> &view_box);
std::string svg_summary(const std::vector<PolygonChain> &frames, const std::array<double, 4> &view_box);
std::array<double, 4> union_view_box(const std::vector<PolygonChain> &frames);

int cmd_analyze(const std::string &lengths_file, std::ostream &out, std::ostream &err);

int cmd_check(const std::string &polygon_file, std::ostream &out, std::ostream &err);

struct ConvexifyOptions {
    FlowParams params;
    std::optional<std::string> trace_path;
    std::optional<std::string> svg_dir;
};
Json trace_json(const FlowTrace &trace);
std::string energy_csv(const FlowTrace &trace);
int cmd_convexify(const std::string &polygon_file, const ConvexifyOptions &options, std::ostream &out,
                  std::ostream &err);

struct AtlasOptions {
    std::size_t k = 1;
    std::size_t grid = 100;
    std::string format = "csv"; // csv | json
    std::optional<std::string> output; // stdout when empty
};
int cmd_atlas(const std::string &lengths_file, const AtlasOptions &options, std::ostream &out, std::ostream &err);

struct DemoOptions {
    std::size_t samples = 10000;
    std::optional<std::string> svg_dir;
};
int cmd_demo_figure_eight(const DemoOptions &options, std::ostream &out, std::ostream &err);

} // namespace polylink::cli
