#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "netvis/options.hpp"

namespace netvis {

/// Integer or string node identifier. Equality compares kind and value, so
/// NodeId{1} != NodeId{"1"}.
class NodeId {
public:
    NodeId(std::int64_t value) : value_(value) {}
    NodeId(int value) : value_(static_cast<std::int64_t>(value)) {}
    NodeId(std::string value) : value_(std::move(value)) {}
    NodeId(const char* value) : value_(std::string(value)) {}

    bool is_integer() const noexcept { return value_.index() == 0; }
    std::int64_t as_integer() const { return std::get<0>(value_); }
    const std::string& as_string() const { return std::get<1>(value_); }

    /// Decimal form for integers, the string itself otherwise.
    std::string text() const;
    ordered_json to_json() const;
    /// Accepts JSON integers and strings only.
    static NodeId from_json(const ordered_json& value);

    bool operator==(const NodeId&) const = default;
    /// Integers order before strings.
    auto operator<=>(const NodeId&) const = default;

    std::size_t hash() const noexcept { return std::hash<std::variant<std::int64_t, std::string>>{}(value_); }

private:
    std::variant<std::int64_t, std::string> value_;
};

struct NodeIdHash {
    std::size_t operator()(const NodeId& id) const noexcept { return id.hash(); }
};

/// Display attributes a node may carry. Unset fields are omitted everywhere.
struct NodeAttrs {
    std::optional<std::string> label;
    std::optional<double> size;   // raw radius, px
    std::optional<double> value;  // radius driver, scaled over all nodes
    std::optional<std::string> title;
    std::optional<double> x;
    std::optional<double> y;
    std::optional<std::string> color;
    std::optional<std::string> shape;

    bool operator==(const NodeAttrs&) const = default;
};

struct Node {
    NodeId id;
    std::string label;
    std::optional<double> size;
    std::optional<double> value;
    std::optional<std::string> title;
    std::optional<double> x;
    std::optional<double> y;
    std::optional<std::string> color;
    std::optional<std::string> shape;

    bool has_position() const noexcept { return x.has_value() && y.has_value(); }
    bool operator==(const Node&) const = default;
};

/// `value` is the width driver. Callers that think in edge weights set it
/// directly; there is no separate weight field.
struct EdgeAttrs {
    std::optional<double> value;
    std::optional<double> width;
    std::optional<std::string> title;

    static EdgeAttrs weighted(double weight) { return EdgeAttrs{weight, std::nullopt, std::nullopt}; }
    bool operator==(const EdgeAttrs&) const = default;
};

struct Edge {
    NodeId from;
    NodeId to;
    std::optional<double> value;
    std::optional<double> width;
    std::optional<std::string> title;

    bool operator==(const Edge&) const = default;
};

/// One item of add_edges(): a pair, or a triple whose third element is the weight.
struct EdgeSpec {
    NodeId from;
    NodeId to;
    std::optional<double> weight;
};

struct NetworkStyle {
    std::string height = "500px";
    std::string width = "500px";
    std::string bgcolor = "#ffffff";
    std::string font_color = "black";

    /// Throws StyleError unless height/width are `<n>px` or `<n>%` and the
    /// colors are plain CSS color tokens.
    void validate() const;
    bool operator==(const NetworkStyle&) const = default;
};

/// Per-attribute sequences for add_nodes(); element k goes to node k.
struct NodeBroadcast {
    std::optional<std::vector<std::string>> label;
    std::optional<std::vector<double>> size;
    std::optional<std::vector<double>> value;
    std::optional<std::vector<std::string>> title;
    std::optional<std::vector<double>> x;
    std::optional<std::vector<double>> y;
    std::optional<std::vector<std::string>> color;
    std::optional<std::vector<std::string>> shape;
};

/// Neighbor sets keyed by node, in node insertion order. Each neighbor list
/// is duplicate-free and also follows node insertion order.
class AdjacencyList {
public:
    struct Entry {
        NodeId id;
        std::vector<NodeId> neighbors;
    };

    const std::vector<NodeId>& neighbors(const NodeId& id) const;
    bool contains(const NodeId& id) const { return index_.contains(id); }
    std::size_t size() const noexcept { return entries_.size(); }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    friend class Network;
    std::vector<Entry> entries_;
    std::unordered_map<NodeId, std::size_t, NodeIdHash> index_;
};

class Network {
public:
    /// Throws StyleError if the style does not validate.
    explicit Network(NetworkStyle style = {}, bool directed = false, bool notebook = false);

    /// Inserts, or updates the given attributes of an existing node. The
    /// label defaults to the id's text on first insertion.
    Network& add_node(const NodeId& id, std::optional<std::string> label = std::nullopt,
                      const NodeAttrs& attrs = {});
    /// All broadcast lengths are checked before any node is touched.
    Network& add_nodes(std::span<const NodeId> ids, const NodeBroadcast& broadcast = {});
    /// Throws NodeNotFound if either endpoint is missing.
    Network& add_edge(const NodeId& from, const NodeId& to, const EdgeAttrs& attrs = {});
    /// Stops at the first failing item; earlier items stay inserted.
    Network& add_edges(std::span<const EdgeSpec> items);

    /// Replaces the attributes of the edge at `index` (insertion order).
    Network& set_edge_attrs(std::size_t index, const EdgeAttrs& attrs);

    AdjacencyList get_adj_list() const;

    /// Switches physics to barnesHut with `params`, leaving the other
    /// physics fields alone.
    Network& barnes_hut(const BarnesHutParams& params = {});
    /// Replaces the options wholesale; the last call wins.
    Network& set_options(Options opts);
    Network& set_options(std::string_view script);
    /// Records which configurator sections the rendered page exposes.
    Network& show_buttons(std::span<const std::string> filter = {});

    bool contains(const NodeId& id) const { return index_.contains(id); }
    const Node& node(const NodeId& id) const;
    std::size_t index_of(const NodeId& id) const;

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const NetworkStyle& style() const noexcept { return style_; }
    bool directed() const noexcept { return directed_; }
    bool notebook() const noexcept { return notebook_; }
    const Options& options() const noexcept { return options_; }
    Options& options() noexcept { return options_; }
    const std::optional<WidgetSpec>& widgets() const noexcept { return widgets_; }

    /// {"Nodes":[...],"Edges":[...],"Height":...,"Width":...}, minified.
    std::string repr() const;
    ordered_json repr_json() const;

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::unordered_map<NodeId, std::size_t, NodeIdHash> index_;
    NetworkStyle style_;
    bool directed_;
    bool notebook_;
    Options options_;
    std::optional<WidgetSpec> widgets_;
};

/// Population-relative sizing: a node's radius is 10 + 20 * (v - min)/(max - min)
/// over the nodes that carry a value, 10 when all values are equal, `size`
/// when there is no value, and 10 when there is neither.
std::vector<double> node_radii(const Network& net);
/// Edge width: 1 + 14 * (v - min)/(max - min), falling back to `width`, then 1.
std::vector<double> edge_widths(const Network& net);

}  // namespace netvis
