#include "netvis/network.hpp"

#include <algorithm>
#include <regex>

#include "netvis/errors.hpp"

namespace netvis {

std::string NodeId::text() const {
    if (is_integer()) {
        return std::to_string(as_integer());
    }
    return as_string();
}

ordered_json NodeId::to_json() const {
    if (is_integer()) {
        return as_integer();
    }
    return as_string();
}

NodeId NodeId::from_json(const ordered_json& value) {
    if (value.is_number_integer()) {
        return NodeId(value.get<std::int64_t>());
    }
    if (value.is_string()) {
        return NodeId(value.get<std::string>());
    }
    throw ValidationError("node id must be an integer or a string, got " + value.dump());
}

namespace {

bool is_css_length(const std::string& text) {
    static const std::regex pattern(R"(^(\d+(\.\d+)?|\.\d+)(px|%)$)");
    return std::regex_match(text, pattern);
}

bool is_css_color(const std::string& text) {
    // Hex, named, and functional notations; rejects anything that could
    // escape a style attribute or a <style> block.
    static const std::regex pattern(R"(^[#A-Za-z0-9(),.%\- ]+$)");
    return !text.empty() && std::regex_match(text, pattern);
}

}  // namespace

void NetworkStyle::validate() const {
    if (!is_css_length(height)) {
        throw StyleError("height must be <n>px or <n>%, got \"" + height + "\"");
    }
    if (!is_css_length(width)) {
        throw StyleError("width must be <n>px or <n>%, got \"" + width + "\"");
    }
    if (!is_css_color(bgcolor)) {
        throw StyleError("bgcolor is not a CSS color: \"" + bgcolor + "\"");
    }
    if (!is_css_color(font_color)) {
        throw StyleError("font_color is not a CSS color: \"" + font_color + "\"");
    }
}

const std::vector<NodeId>& AdjacencyList::neighbors(const NodeId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw NodeNotFound(id.text());
    }
    return entries_[it->second].neighbors;
}

Network::Network(NetworkStyle style, bool directed, bool notebook)
    : style_(std::move(style)), directed_(directed), notebook_(notebook) {
    style_.validate();
}

Network& Network::add_node(const NodeId& id, std::optional<std::string> label, const NodeAttrs& attrs) {
    Node* node = nullptr;
    if (auto it = index_.find(id); it != index_.end()) {
        node = &nodes_[it->second];
    } else {
        index_.emplace(id, nodes_.size());
        nodes_.push_back(Node{id, id.text(), {}, {}, {}, {}, {}, {}, {}});
        node = &nodes_.back();
    }

    if (label) {
        node->label = std::move(*label);
    } else if (attrs.label) {
        node->label = *attrs.label;
    }
    auto merge = [](auto& slot, const auto& incoming) {
        if (incoming) {
            slot = incoming;
        }
    };
    merge(node->size, attrs.size);
    merge(node->value, attrs.value);
    merge(node->title, attrs.title);
    merge(node->x, attrs.x);
    merge(node->y, attrs.y);
    merge(node->color, attrs.color);
    merge(node->shape, attrs.shape);
    return *this;
}

Network& Network::add_nodes(std::span<const NodeId> ids, const NodeBroadcast& broadcast) {
    auto check = [&](const char* name, const auto& seq) {
        if (seq && seq->size() != ids.size()) {
            throw BroadcastError(name, ids.size(), seq->size());
        }
    };
    check("label", broadcast.label);
    check("size", broadcast.size);
    check("value", broadcast.value);
    check("title", broadcast.title);
    check("x", broadcast.x);
    check("y", broadcast.y);
    check("color", broadcast.color);
    check("shape", broadcast.shape);

    for (std::size_t k = 0; k < ids.size(); ++k) {
        auto pick = [k](const auto& seq) {
            using T = typename std::decay_t<decltype(*seq)>::value_type;
            return seq ? std::optional<T>((*seq)[k]) : std::nullopt;
        };
        NodeAttrs attrs;
        attrs.size = pick(broadcast.size);
        attrs.value = pick(broadcast.value);
        attrs.title = pick(broadcast.title);
        attrs.x = pick(broadcast.x);
        attrs.y = pick(broadcast.y);
        attrs.color = pick(broadcast.color);
        attrs.shape = pick(broadcast.shape);
        add_node(ids[k], pick(broadcast.label), attrs);
    }
    return *this;
}

Network& Network::add_edge(const NodeId& from, const NodeId& to, const EdgeAttrs& attrs) {
    if (!contains(from)) {
        throw NodeNotFound(from.text());
    }
    if (!contains(to)) {
        throw NodeNotFound(to.text());
    }
    edges_.push_back(Edge{from, to, attrs.value, attrs.width, attrs.title});
    return *this;
}

Network& Network::add_edges(std::span<const EdgeSpec> items) {
    for (const auto& item : items) {
        add_edge(item.from, item.to, EdgeAttrs{item.weight, std::nullopt, std::nullopt});
    }
    return *this;
}

Network& Network::set_edge_attrs(std::size_t index, const EdgeAttrs& attrs) {
    if (index >= edges_.size()) {
        throw ValidationError("edge index " + std::to_string(index) + " out of range");
    }
    Edge& edge = edges_[index];
    edge.value = attrs.value;
    edge.width = attrs.width;
    edge.title = attrs.title;
    return *this;
}

AdjacencyList Network::get_adj_list() const {
    AdjacencyList adj;
    adj.entries_.reserve(nodes_.size());

    // Neighbor lists follow node insertion order, not edge order.
    std::vector<std::vector<std::size_t>> marks(nodes_.size());
    for (const auto& edge : edges_) {
        const std::size_t a = index_.at(edge.from);
        const std::size_t b = index_.at(edge.to);
        marks[a].push_back(b);
        marks[b].push_back(a);
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        auto& list = marks[i];
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        AdjacencyList::Entry entry{nodes_[i].id, {}};
        entry.neighbors.reserve(list.size());
        for (std::size_t j : list) {
            entry.neighbors.push_back(nodes_[j].id);
        }
        adj.index_.emplace(nodes_[i].id, i);
        adj.entries_.push_back(std::move(entry));
    }
    return adj;
}

Network& Network::barnes_hut(const BarnesHutParams& params) {
    validate(params);
    options_.physics.solver_params = params;
    return *this;
}

Network& Network::set_options(Options opts) {
    validate(opts.physics);
    options_ = std::move(opts);
    return *this;
}

Network& Network::set_options(std::string_view script) {
    options_ = parse_options_script(script);
    return *this;
}

Network& Network::show_buttons(std::span<const std::string> filter) {
    widgets_ = WidgetSpec::from_filter(filter);
    return *this;
}

const Node& Network::node(const NodeId& id) const {
    return nodes_[index_of(id)];
}

std::size_t Network::index_of(const NodeId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw NodeNotFound(id.text());
    }
    return it->second;
}

ordered_json Network::repr_json() const {
    ordered_json out = ordered_json::object();
    ordered_json ids = ordered_json::array();
    for (const auto& node : nodes_) {
        ids.push_back(node.id.to_json());
    }
    ordered_json edges = ordered_json::array();
    for (const auto& edge : edges_) {
        ordered_json e = ordered_json::object();
        e["from"] = edge.from.to_json();
        e["to"] = edge.to.to_json();
        if (edge.value) {
            e["value"] = json_number(*edge.value);
        }
        if (edge.width) {
            e["width"] = json_number(*edge.width);
        }
        if (edge.title) {
            e["title"] = *edge.title;
        }
        edges.push_back(std::move(e));
    }
    out["Nodes"] = std::move(ids);
    out["Edges"] = std::move(edges);
    out["Height"] = style_.height;
    out["Width"] = style_.width;
    return out;
}

std::string Network::repr() const {
    return repr_json().dump();
}

namespace {

template <class Item, class ValueOf, class RawOf>
std::vector<double> scale_population(const std::vector<Item>& items, ValueOf value_of, RawOf raw_of,
                                     double base, double span, double fallback) {
    double lo = 0.0;
    double hi = 0.0;
    bool any = false;
    for (const auto& item : items) {
        if (auto v = value_of(item)) {
            lo = any ? std::min(lo, *v) : *v;
            hi = any ? std::max(hi, *v) : *v;
            any = true;
        }
    }
    std::vector<double> out;
    out.reserve(items.size());
    for (const auto& item : items) {
        if (auto v = value_of(item)) {
            out.push_back(hi > lo ? base + (*v - lo) / (hi - lo) * span : base);
        } else if (auto raw = raw_of(item)) {
            out.push_back(*raw);
        } else {
            out.push_back(fallback);
        }
    }
    return out;
}

}  // namespace

std::vector<double> node_radii(const Network& net) {
    return scale_population(
        net.nodes(), [](const Node& n) { return n.value; }, [](const Node& n) { return n.size; }, 10.0,
        20.0, 10.0);
}

std::vector<double> edge_widths(const Network& net) {
    return scale_population(
        net.edges(), [](const Edge& e) { return e.value; }, [](const Edge& e) { return e.width; }, 1.0,
        14.0, 1.0);
}

}  // namespace netvis
