#include "netvis/emit.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <unordered_map>

#include "netvis/errors.hpp"

namespace netvis::emit {

namespace {

const char* const kTemplate = R"HTML(<!DOCTYPE html>
<html>
<head>
<meta charset="utf-8">
<title>netvis</title>
<style>
body { margin: 0; }
#netvis-network {
  width:{{WIDTH}};
  height:{{HEIGHT}};
  background-color:{{BGCOLOR}};
  color:{{FONTCOLOR}};
  position: relative;
  float: left;
  border: 1px solid lightgray;
}
#netvis-configure { float: left; font-family: sans-serif; font-size: 12px; }
.netvis-configure { margin: 4px; }
</style>
</head>
<body>
<div id="netvis-network"></div>
<div id="netvis-configure">{{PANELS}}</div>
<script type="application/json" id="netvis-nodes">{{NODES}}</script>
<script type="application/json" id="netvis-edges">{{EDGES}}</script>
<script type="application/json" id="netvis-options">{{OPTIONS}}</script>
<script type="application/json" id="netvis-widgets">{{WIDGETS}}</script>
{{VIEWER}}
<script>
(function () {
  function read(id) { return JSON.parse(document.getElementById(id).textContent); }
  netvis.mount(document.getElementById("netvis-network"), {
    nodes: read("netvis-nodes"),
    edges: read("netvis-edges"),
    options: read("netvis-options"),
    widgets: read("netvis-widgets"),
    configure: document.getElementById("netvis-configure"),
    fontColor: "{{FONTCOLOR}}"
  });
})();
</script>
</body>
</html>
)HTML";

void put_number(ordered_json& obj, const char* key, const std::optional<double>& v) {
    if (v) {
        obj[key] = json_number(*v);
    }
}

void put_string(ordered_json& obj, const char* key, const std::optional<std::string>& v) {
    if (v) {
        obj[key] = *v;
    }
}

bool is_name_char(char c) {
    return (c >= 'A' && c <= 'Z') || c == '_';
}

void replace_all(std::string& text, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = text.find(from, pos)) != std::string::npos) {
        text.replace(pos, from.size(), to);
        pos += to.size();
    }
}

std::string html_attr(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

DataSets emit_datasets(const Network& net, const layout::PositionsDocument* positions) {
    std::unordered_map<NodeId, layout::Vec2, NodeIdHash> placed;
    if (positions != nullptr) {
        for (const auto& [id, p] : positions->positions) {
            placed.insert_or_assign(id, p);
        }
    }

    DataSets out;
    for (const Node& node : net.nodes()) {
        ordered_json obj = ordered_json::object();
        obj["id"] = node.id.to_json();
        obj["label"] = node.label;
        put_number(obj, "size", node.size);
        put_number(obj, "value", node.value);
        put_string(obj, "title", node.title);
        std::optional<double> x = node.x;
        std::optional<double> y = node.y;
        if (auto it = placed.find(node.id); it != placed.end()) {
            x = it->second.x;
            y = it->second.y;
        }
        put_number(obj, "x", x);
        put_number(obj, "y", y);
        put_string(obj, "color", node.color);
        put_string(obj, "shape", node.shape);
        out.nodes.push_back(std::move(obj));
    }
    for (const Edge& edge : net.edges()) {
        ordered_json obj = ordered_json::object();
        obj["from"] = edge.from.to_json();
        obj["to"] = edge.to.to_json();
        put_number(obj, "value", edge.value);
        put_number(obj, "width", edge.width);
        put_string(obj, "title", edge.title);
        if (net.directed()) {
            obj["arrows"] = "to";
        }
        out.edges.push_back(std::move(obj));
    }
    return out;
}

const std::string& default_template() {
    static const std::string text(kTemplate);
    return text;
}

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& values) {
    std::set<std::string, std::less<>> seen;
    std::string out;
    out.reserve(tmpl.size());
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        const std::size_t open = tmpl.find("{{", pos);
        if (open == std::string_view::npos) {
            out.append(tmpl.substr(pos));
            break;
        }
        out.append(tmpl.substr(pos, open - pos));
        const std::size_t close = tmpl.find("}}", open + 2);
        if (close == std::string_view::npos) {
            throw TemplateError("unterminated placeholder at offset " + std::to_string(open));
        }
        const std::string_view name = tmpl.substr(open + 2, close - open - 2);
        if (name.empty() || !std::all_of(name.begin(), name.end(), is_name_char)) {
            throw TemplateError("malformed placeholder \"{{" + std::string(name) + "}}\"");
        }
        const auto it = values.find(name);
        if (it == values.end()) {
            throw TemplateError("no value for placeholder " + std::string(name));
        }
        out += it->second;
        seen.emplace(name);
        pos = close + 2;
    }
    for (std::string_view required : kPlaceholders) {
        if (!seen.contains(required)) {
            throw TemplateError("template is missing placeholder " + std::string(required));
        }
    }
    return out;
}

std::string script_safe(std::string json_text) {
    // Both replacements are valid JSON escapes inside strings, and "<" never
    // appears outside a string in JSON text.
    replace_all(json_text, "<!--", "\\u003c!--");
    replace_all(json_text, "</", "<\\/");
    return json_text;
}

HtmlDocument render_html(const Network& net, const std::optional<WidgetSpec>& widgets, const RenderConfig& config) {
    return render_html(net, widgets, config, default_template());
}

HtmlDocument render_html(const Network& net, const std::optional<WidgetSpec>& widgets, const RenderConfig& config,
                         std::string_view tmpl) {
    const DataSets data = emit_datasets(net, config.positions);
    const NetworkStyle& style = net.style();

    ordered_json widget_names = ordered_json::array();
    std::string panels;
    if (widgets) {
        for (const std::string& name : widgets->names()) {
            widget_names.push_back(name);
            panels += "<div class=\"netvis-configure\" data-section=\"" + name + "\"></div>";
        }
    }

    std::string viewer;
    if (config.inline_viewer) {
        std::string source = *config.inline_viewer;
        replace_all(source, "</script", "<\\/script");
        viewer = "<script>\n" + source + "\n</script>";
    } else {
        viewer = "<script src=\"" + html_attr(config.viewer_src) + "\"></script>";
    }

    const std::map<std::string, std::string, std::less<>> values = {
        {"NODES", script_safe(data.nodes.dump())},
        {"EDGES", script_safe(data.edges.dump())},
        {"OPTIONS", script_safe(serialize_options(net.options()))},
        {"WIDGETS", widget_names.dump()},
        {"PANELS", panels},
        {"HEIGHT", style.height},
        {"WIDTH", style.width},
        {"BGCOLOR", style.bgcolor},
        {"FONTCOLOR", style.font_color},
        {"VIEWER", viewer},
    };
    return HtmlDocument{render_template(tmpl, values)};
}

std::string iframe_fragment(const std::string& path, const NetworkStyle& style) {
    return "<iframe src=\"" + html_attr(path) + "\" width=\"" + style.width + "\" height=\"" + style.height +
           "\" frameborder=\"0\"></iframe>";
}

std::optional<std::string> show(const Network& net, const std::string& path, const RenderConfig& config) {
    const HtmlDocument doc = render_html(net, net.widgets(), config);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open for writing", path);
    }
    out << doc.text;
    out.close();
    if (!out) {
        throw IoError("write failed", path);
    }
    if (net.notebook()) {
        return iframe_fragment(path, net.style());
    }
    return std::nullopt;
}

}  // namespace netvis::emit
