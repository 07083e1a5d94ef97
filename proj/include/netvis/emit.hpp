#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "netvis/layout.hpp"
#include "netvis/network.hpp"
#include "netvis/options.hpp"

namespace netvis::emit {

/// Viewer-ready record arrays. Node keys, in order: id, label, size, value,
/// title, x, y, color, shape. Edge keys: from, to, value, width, title,
/// arrows ("to" on directed networks).
struct DataSets {
    ordered_json nodes = ordered_json::array();
    ordered_json edges = ordered_json::array();
};

/// When `positions` is given, x/y come from it (matched by id); positions
/// for ids the network does not have are ignored.
DataSets emit_datasets(const Network& net, const layout::PositionsDocument* positions = nullptr);

struct RenderConfig {
    /// Script reference used when the viewer is not inlined.
    std::string viewer_src = "netvis-viewer.js";
    /// Viewer bundle source to embed instead of referencing it.
    std::optional<std::string> inline_viewer;
    const layout::PositionsDocument* positions = nullptr;
};

struct HtmlDocument {
    std::string text;
};

/// Placeholders every page template must contain, written {{NAME}}.
/// render_html() also supplies PANELS (configurator section markup).
inline constexpr std::array<std::string_view, 9> kPlaceholders = {
    "NODES", "EDGES", "OPTIONS", "WIDGETS", "HEIGHT", "WIDTH", "BGCOLOR", "FONTCOLOR", "VIEWER"};

const std::string& default_template();

/// Substitutes {{NAME}} for values[NAME]. Throws TemplateError if a
/// placeholder listed in kPlaceholders is absent from the template or the
/// template uses a name with no value.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& values);

/// `widgets` empty means no configurator panel. Output is a pure function
/// of the arguments.
HtmlDocument render_html(const Network& net, const std::optional<WidgetSpec>& widgets,
                         const RenderConfig& config = {});
HtmlDocument render_html(const Network& net, const std::optional<WidgetSpec>& widgets, const RenderConfig& config,
                         std::string_view tmpl);

/// JSON text made safe for a <script> element ("</" and "<!--" escaped).
std::string script_safe(std::string json_text);

/// `<iframe src="PATH" width="W" height="H" frameborder="0"></iframe>`
std::string iframe_fragment(const std::string& path, const NetworkStyle& style);

/// Writes render_html(net, net.widgets()) to `path`, then returns the
/// iframe fragment for notebook networks. Throws IoError.
std::optional<std::string> show(const Network& net, const std::string& path, const RenderConfig& config = {});

}  // namespace netvis::emit
