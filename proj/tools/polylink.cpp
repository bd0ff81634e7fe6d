// polylink: command-line front end. See `polylink --help`.
#include "polylink/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace polylink;

int main(int argc, char **argv) {
    CLI::App app{"Planar polygon linkages: configuration analysis, convex atlas, convexifying flow"};
    app.require_subcommand(1);

    std::string file;
    auto *analyze = app.add_subcommand("analyze", "dimension, feasibility and straight-line report for side lengths");
    analyze->add_option("lengths_file", file, "JSON {\"lengths\": [...]}")->required();

    auto *check = app.add_subcommand("check", "turn angles, winding, embeddedness and convexity of a polygon");
    check->add_option("polygon_file", file, "JSON with \"vertices\" or \"lengths\" + \"turn_angles\"")->required();

    cli::ConvexifyOptions conv;
    std::string trace, svg;
    auto *convexify = app.add_subcommand("convexify", "run the energy flow until the polygon is convex");
    convexify->add_option("polygon_file", file)->required();
    convexify->add_option("--step", conv.params.initial_step, "initial step (radians)")->capture_default_str();
    convexify->add_option("--tol", conv.params.convexity_tolerance, "stop once min turn >= -tol")
        ->capture_default_str();
    convexify->add_option("--max-iter", conv.params.max_iterations, "cap on accepted steps")->capture_default_str();
    convexify->add_option("--stride", conv.params.snapshot_stride, "snapshot every N steps")->capture_default_str();
    convexify->add_option("--trace", trace, "write the full trace as JSON");
    convexify->add_option("--svg", svg, "write SVG frames, summary.svg and energy.csv here");

    cli::AtlasOptions atlas_opts;
    std::string atlas_output;
    auto *atlas = app.add_subcommand("atlas", "sample the convex atlas at one level");
    atlas->add_option("lengths_file", file)->required();
    atlas->add_option("--k", atlas_opts.k, "level, 1 <= k <= n-3")->capture_default_str();
    atlas->add_option("--grid", atlas_opts.grid, "samples per prefix angle")->capture_default_str();
    atlas->add_option("--out", atlas_opts.format, "csv or json")->capture_default_str();
    atlas->add_option("-o,--output", atlas_output, "output file (default stdout)");

    cli::DemoOptions demo;
    std::string demo_svg;
    auto *fig8 = app.add_subcommand("demo-figure-eight", "sweep the (6,4,2,4) quadrilateral");
    fig8->add_option("--samples", demo.samples, "grid cells for the free angle")->capture_default_str();
    fig8->add_option("--svg", demo_svg, "write representative frames here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return cli::kUsage;
    }

    if (*analyze) return cli::cmd_analyze(file, std::cout, std::cerr);
    if (*check) return cli::cmd_check(file, std::cout, std::cerr);
    if (*convexify) {
        if (!trace.empty()) conv.trace_path = trace;
        if (!svg.empty()) conv.svg_dir = svg;
        return cli::cmd_convexify(file, conv, std::cout, std::cerr);
    }
    if (*atlas) {
        if (!atlas_output.empty()) atlas_opts.output = atlas_output;
        return cli::cmd_atlas(file, atlas_opts, std::cout, std::cerr);
    }
    if (!demo_svg.empty()) demo.svg_dir = demo_svg;
    return cli::cmd_demo_figure_eight(demo, std::cout, std::cerr);
}
