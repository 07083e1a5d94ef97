#include "netvis/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "netvis/emit.hpp"
#include "netvis/errors.hpp"
#include "netvis/ingest.hpp"
#include "netvis/layout.hpp"

namespace netvis::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open for reading", path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failed", path);
    }
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open for writing", path);
    }
    out << text;
    out.close();
    if (!out) {
        throw IoError("write failed", path);
    }
}

struct BuildArgs {
    std::string edges;
    std::string nodelink;
    bool directed = false;
    std::string out;
};

struct LayoutArgs {
    std::string graph;
    std::string solver;
    std::uint64_t seed = 0;
    std::string options;
    std::string out;
};

struct RenderArgs {
    std::string graph;
    std::string positions;
    std::string options;
    std::vector<std::string> show_buttons;
    bool show_buttons_given = false;
    std::string height;
    std::string width;
    std::string bgcolor;
    std::string font_color;
    std::string out;
    std::string inline_viewer;
};

struct DemoArgs {
    std::string csv;
    std::string out;
    std::string inline_viewer;
};

emit::RenderConfig render_config(const std::string& inline_path) {
    emit::RenderConfig config;
    if (!inline_path.empty()) {
        config.inline_viewer = read_file(inline_path);
    }
    return config;
}

void do_build(const BuildArgs& a) {
    Network net = [&] {
        if (!a.edges.empty()) {
            return ingest::network_from_records(ingest::parse_edge_csv(read_file(a.edges)), a.directed);
        }
        ingest::NodeLinkDocument doc = ingest::parse_node_link(read_file(a.nodelink));
        doc.directed = doc.directed || a.directed;
        return ingest::import_node_link(doc);
    }();
    write_file(a.out, ingest::export_graph_document(net).dump(2) + "\n");
}

void do_layout(const LayoutArgs& a) {
    Network net = ingest::load_graph_document(read_file(a.graph));
    Options opts = net.options();
    if (!a.options.empty()) {
        opts = parse_options_script(read_file(a.options));
    }
    if (!a.solver.empty()) {
        const SolverKind kind = solver_from_string(a.solver);
        if (kind != opts.physics.solver()) {
            opts.physics.solver_params = default_params(kind);
        }
    }
    const layout::LayoutResult result = layout::stabilize(net, opts, a.seed);
    write_file(a.out, layout::positions_document(net, result).dump(2) + "\n");
}

void do_render(const RenderArgs& a) {
    ordered_json doc;
    const std::string text = read_file(a.graph);
    {
        // Style overrides are applied to the document so the network is
        // constructed (and validated) once with the final style.
        doc = ordered_json::parse(text, nullptr, false);
        if (doc.is_discarded()) {
            ingest::load_graph_document(text);  // raises the located parse error
        }
        if (!doc.is_object()) {
            throw ValidationError("graph document must be a JSON object");
        }
        ordered_json& style = doc["attributes"]["style"];
        if (!style.is_object()) {
            style = ordered_json::object();
        }
        if (!a.height.empty()) style["height"] = a.height;
        if (!a.width.empty()) style["width"] = a.width;
        if (!a.bgcolor.empty()) style["bgcolor"] = a.bgcolor;
        if (!a.font_color.empty()) style["font_color"] = a.font_color;
    }
    Network net = ingest::load_graph_document(doc.dump());
    if (!a.options.empty()) {
        net.set_options(read_file(a.options));
    }
    if (a.show_buttons_given) {
        net.show_buttons(a.show_buttons);
    }
    std::optional<layout::PositionsDocument> positions;
    emit::RenderConfig config = render_config(a.inline_viewer);
    if (!a.positions.empty()) {
        positions = layout::parse_positions_document(read_file(a.positions));
        config.positions = &*positions;
    }
    emit::show(net, a.out, config);
}

void do_demo(const DemoArgs& a) {
    const Network net = ingest::build_got_network(ingest::parse_edge_csv(read_file(a.csv)), ingest::got_style());
    emit::show(net, a.out, render_config(a.inline_viewer));
}

int report(std::ostream& err, int code, const std::exception& e) {
    err << "netvis: error: " << e.what() << "\n";
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Build, lay out and render network graphs", "netvis"};
    app.require_subcommand(1, 1);

    BuildArgs build;
    auto* build_cmd = app.add_subcommand("build", "Convert an edge list or node-link file to a graph document");
    auto* edges_opt = build_cmd->add_option("--edges", build.edges, "Edge list CSV (Source,Target,Weight)");
    auto* nodelink_opt = build_cmd->add_option("--nodelink", build.nodelink, "Node-link JSON document");
    edges_opt->excludes(nodelink_opt);
    build_cmd->add_flag("--directed", build.directed, "Treat edges as directed");
    build_cmd->add_option("--out", build.out, "Output graph document")->required();

    LayoutArgs lay;
    auto* layout_cmd = app.add_subcommand("layout", "Stabilize a layout and write node positions");
    layout_cmd->add_option("graph", lay.graph, "Graph document")->required();
    layout_cmd->add_option("--solver", lay.solver, "barnesHut, forceAtlas2Based, repulsion or hierarchicalRepulsion");
    layout_cmd->add_option("--seed", lay.seed, "Placement seed")->capture_default_str();
    layout_cmd->add_option("--options", lay.options, "Options script");
    layout_cmd->add_option("--out", lay.out, "Output positions document")->required();

    RenderArgs ren;
    auto* render_cmd = app.add_subcommand("render", "Render a graph document to HTML");
    render_cmd->add_option("graph", ren.graph, "Graph document")->required();
    render_cmd->add_option("--positions", ren.positions, "Positions document from `layout`");
    render_cmd->add_option("--options", ren.options, "Options script");
    auto* buttons_opt = render_cmd->add_option("--show-buttons", ren.show_buttons, "Configurator sections")
                            ->delimiter(',')
                            ->expected(0, -1);
    render_cmd->add_option("--height", ren.height, "Canvas height, e.g. 750px");
    render_cmd->add_option("--width", ren.width, "Canvas width, e.g. 100%");
    render_cmd->add_option("--bgcolor", ren.bgcolor, "Background color");
    render_cmd->add_option("--font-color", ren.font_color, "Font color");
    render_cmd->add_option("--inline", ren.inline_viewer, "Embed this viewer bundle instead of referencing it");
    render_cmd->add_option("--out", ren.out, "Output HTML file")->required();

    std::string options_path;
    auto* validate_cmd = app.add_subcommand("options-validate", "Parse an options script and print canonical JSON");
    validate_cmd->add_option("script", options_path, "Options script")->required();

    DemoArgs demo;
    auto* demo_cmd = app.add_subcommand("got-demo", "Character co-occurrence pipeline from an edge list CSV");
    demo_cmd->add_option("csv", demo.csv, "Edge list CSV (Source,Target,Weight)")->required();
    demo_cmd->add_option("--inline", demo.inline_viewer, "Embed this viewer bundle instead of referencing it");
    demo_cmd->add_option("--out", demo.out, "Output HTML file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (build_cmd->parsed() && build.edges.empty() && build.nodelink.empty()) {
            throw CLI::RequiredError("--edges or --nodelink");
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "netvis: " << e.what() << "\n";
        return kUsage;
    }
    ren.show_buttons_given = buttons_opt->count() > 0;

    try {
        if (build_cmd->parsed()) {
            do_build(build);
        } else if (layout_cmd->parsed()) {
            do_layout(lay);
        } else if (render_cmd->parsed()) {
            do_render(ren);
        } else if (validate_cmd->parsed()) {
            out << serialize_options(parse_options_script(read_file(options_path))) << "\n";
        } else if (demo_cmd->parsed()) {
            do_demo(demo);
        }
    } catch (const IoError& e) {
        return report(err, kIo, e);
    } catch (const ParseError& e) {
        return report(err, kParse, e);
    } catch (const ValidationError& e) {
        return report(err, kInvalid, e);
    } catch (const NodeNotFound& e) {
        return report(err, kInvalid, e);
    } catch (const StyleError& e) {
        return report(err, kInvalid, e);
    } catch (const BroadcastError& e) {
        return report(err, kInvalid, e);
    } catch (const NumericError& e) {
        return report(err, kNumeric, e);
    } catch (const TemplateError& e) {
        return report(err, kTemplate, e);
    } catch (const std::exception& e) {
        return report(err, kFailure, e);
    }
    return kOk;
}

}  // namespace netvis::cli
