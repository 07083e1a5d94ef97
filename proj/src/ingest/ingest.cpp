#include "netvis/ingest.hpp"

#include <charconv>
#include <cmath>
#include <optional>

#include "netvis/errors.hpp"

namespace netvis::ingest {

namespace {

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> fields;
    std::string field;
    std::size_t pos = 0;
    while (true) {
        field.clear();
        if (pos < line.size() && line[pos] == '"') {
            ++pos;
            bool closed = false;
            while (pos < line.size()) {
                if (line[pos] == '"') {
                    if (pos + 1 < line.size() && line[pos + 1] == '"') {
                        field += '"';
                        pos += 2;
                        continue;
                    }
                    ++pos;
                    closed = true;
                    break;
                }
                field += line[pos++];
            }
            if (!closed) {
                throw ParseError("unterminated quoted field", line_no, 0);
            }
            if (pos < line.size() && line[pos] != ',') {
                throw ParseError("unexpected text after quoted field", line_no, 0);
            }
        } else {
            while (pos < line.size() && line[pos] != ',') {
                field += line[pos++];
            }
        }
        fields.push_back(field);
        if (pos >= line.size()) {
            return fields;
        }
        ++pos;  // comma
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

std::vector<EdgeRecord> parse_edge_csv(std::string_view text) {
    if (text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    std::vector<EdgeRecord> records;
    std::optional<std::size_t> col_source, col_target, col_weight;
    std::size_t columns = 0;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (trim(line).empty()) {
            if (end == text.size()) {
                break;
            }
            continue;
        }
        const auto fields = split_csv_line(line, line_no);
        if (!have_header) {
            have_header = true;
            columns = fields.size();
            for (std::size_t k = 0; k < fields.size(); ++k) {
                if (fields[k] == "Source") {
                    col_source = k;
                } else if (fields[k] == "Target") {
                    col_target = k;
                } else if (fields[k] == "Weight") {
                    col_weight = k;
                }
            }
            for (auto [col, name] : {std::pair{col_source, "Source"}, std::pair{col_target, "Target"},
                                     std::pair{col_weight, "Weight"}}) {
                if (!col) {
                    throw ParseError(std::string("missing required column \"") + name + "\"", line_no, 0);
                }
            }
        } else {
            if (fields.size() != columns) {
                throw ParseError("expected " + std::to_string(columns) + " fields, got " +
                                     std::to_string(fields.size()),
                                 line_no, 0);
            }
            EdgeRecord record{fields[*col_source], fields[*col_target], 0.0};
            if (record.source.empty() || record.target.empty()) {
                throw ParseError("empty Source or Target", line_no, 0);
            }
            const std::string_view w = trim(fields[*col_weight]);
            auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), record.weight);
            if (w.empty() || ec != std::errc() || ptr != w.data() + w.size() || !std::isfinite(record.weight)) {
                throw ParseError("Weight is not a finite number: \"" + std::string(w) + "\"", line_no, 0);
            }
            records.push_back(std::move(record));
        }
        if (end == text.size()) {
            break;
        }
    }
    if (!have_header) {
        throw ParseError("missing header line", 1, 0);
    }
    return records;
}

NodeLinkDocument node_link_from_json(const ordered_json& doc) {
    if (!doc.is_object()) {
        throw ValidationError("node-link document must be a JSON object");
    }
    NodeLinkDocument out;
    if (auto it = doc.find("directed"); it != doc.end()) {
        if (!it->is_boolean()) {
            throw ValidationError("\"directed\" must be true or false");
        }
        out.directed = it->get<bool>();
    }
    if (auto it = doc.find("nodes"); it != doc.end()) {
        if (!it->is_array()) {
            throw ValidationError("\"nodes\" must be an array");
        }
        for (const auto& node : *it) {
            if (!node.is_object() || !node.contains("id")) {
                throw ValidationError("every node needs an \"id\"");
            }
            out.nodes.push_back(NodeId::from_json(node["id"]));
        }
    }
    if (auto it = doc.find("links"); it != doc.end()) {
        if (!it->is_array()) {
            throw ValidationError("\"links\" must be an array");
        }
        for (const auto& link : *it) {
            if (!link.is_object() || !link.contains("source") || !link.contains("target")) {
                throw ValidationError("every link needs \"source\" and \"target\"");
            }
            out.links.emplace_back(NodeId::from_json(link["source"]), NodeId::from_json(link["target"]));
        }
    }
    return out;
}

namespace {

ordered_json parse_json(std::string_view text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // byte offsets are 1-based and point one past the offending byte
        const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
        std::size_t line = 1, column = 1;
        for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(std::string(what) + " is not valid JSON", line, column);
    }
}

}  // namespace

NodeLinkDocument parse_node_link(std::string_view text) {
    return node_link_from_json(parse_json(text, "node-link document"));
}

Network import_node_link(const NodeLinkDocument& doc, NetworkStyle style) {
    Network net(std::move(style), doc.directed);
    for (const auto& id : doc.nodes) {
        net.add_node(id);
    }
    for (const auto& [source, target] : doc.links) {
        net.add_edge(source, target);
    }
    return net;
}

NetworkStyle got_style() {
    return NetworkStyle{"750px", "100%", "#222222", "white"};
}

Network network_from_records(const std::vector<EdgeRecord>& records, bool directed) {
    Network net(NetworkStyle{}, directed);
    for (const auto& r : records) {
        net.add_node(r.source, r.source);
        net.add_node(r.target, r.target);
        net.add_edge(r.source, r.target, EdgeAttrs::weighted(r.weight));
    }
    return net;
}

Network build_got_network(const std::vector<EdgeRecord>& records, NetworkStyle style) {
    Network net(std::move(style));
    net.barnes_hut();
    for (const auto& r : records) {
        net.add_node(r.source, r.source, NodeAttrs{.title = r.source});
        net.add_node(r.target, r.target, NodeAttrs{.title = r.target});
        net.add_edge(r.source, r.target, EdgeAttrs{.value = r.weight});
    }

    const AdjacencyList neighbor_map = net.get_adj_list();
    for (const auto& entry : neighbor_map) {
        std::string joined;
        for (std::size_t k = 0; k < entry.neighbors.size(); ++k) {
            if (k > 0) {
                joined += "<br>";
            }
            joined += entry.neighbors[k].text();
        }
        const Node& node = net.node(entry.id);
        NodeAttrs update;
        update.title = node.title.value_or("") + " Neighbors:<br>" + joined;
        update.value = static_cast<double>(entry.neighbors.size());
        net.add_node(entry.id, std::nullopt, update);
    }
    return net;
}

namespace {

ordered_json node_attributes(const Node& node) {
    ordered_json out = ordered_json::object();
    out["id"] = node.id.to_json();
    out["label"] = node.label;
    if (node.size) out["size"] = json_number(*node.size);
    if (node.value) out["value"] = json_number(*node.value);
    if (node.title) out["title"] = *node.title;
    if (node.x) out["x"] = json_number(*node.x);
    if (node.y) out["y"] = json_number(*node.y);
    if (node.color) out["color"] = *node.color;
    if (node.shape) out["shape"] = *node.shape;
    return out;
}

std::optional<double> optional_number(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return std::nullopt;
    }
    if (!it->is_number()) {
        throw ValidationError(std::string("attribute \"") + key + "\" must be a number");
    }
    return it->get<double>();
}

std::optional<std::string> optional_string(const ordered_json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        throw ValidationError(std::string("attribute \"") + key + "\" must be a string");
    }
    return it->get<std::string>();
}

}  // namespace

ordered_json export_graph_document(const Network& net) {
    ordered_json doc = ordered_json::object();
    doc["directed"] = net.directed();
    doc["multigraph"] = true;
    doc["graph"] = ordered_json::object();
    ordered_json nodes = ordered_json::array();
    ordered_json node_attrs = ordered_json::array();
    for (const auto& node : net.nodes()) {
        ordered_json entry = ordered_json::object();
        entry["id"] = node.id.to_json();
        nodes.push_back(std::move(entry));
        node_attrs.push_back(node_attributes(node));
    }
    ordered_json links = ordered_json::array();
    ordered_json edge_attrs = ordered_json::array();
    for (const auto& edge : net.edges()) {
        ordered_json link = ordered_json::object();
        link["source"] = edge.from.to_json();
        link["target"] = edge.to.to_json();
        links.push_back(std::move(link));
        ordered_json attrs = ordered_json::object();
        if (edge.value) attrs["value"] = json_number(*edge.value);
        if (edge.width) attrs["width"] = json_number(*edge.width);
        if (edge.title) attrs["title"] = *edge.title;
        edge_attrs.push_back(std::move(attrs));
    }
    doc["nodes"] = std::move(nodes);
    doc["links"] = std::move(links);

    ordered_json style = ordered_json::object();
    style["height"] = net.style().height;
    style["width"] = net.style().width;
    style["bgcolor"] = net.style().bgcolor;
    style["font_color"] = net.style().font_color;
    ordered_json attributes = ordered_json::object();
    attributes["style"] = std::move(style);
    attributes["nodes"] = std::move(node_attrs);
    attributes["edges"] = std::move(edge_attrs);
    doc["attributes"] = std::move(attributes);
    return doc;
}

Network load_graph_document(std::string_view text) {
    const ordered_json doc = parse_json(text, "graph document");
    const NodeLinkDocument topology = node_link_from_json(doc);
    const auto attributes = doc.is_object() ? doc.find("attributes") : doc.end();
    if (attributes == doc.end()) {
        return import_node_link(topology);
    }
    if (!attributes->is_object()) {
        throw ValidationError("\"attributes\" must be an object");
    }

    NetworkStyle style;
    if (auto it = attributes->find("style"); it != attributes->end()) {
        style.height = optional_string(*it, "height").value_or(style.height);
        style.width = optional_string(*it, "width").value_or(style.width);
        style.bgcolor = optional_string(*it, "bgcolor").value_or(style.bgcolor);
        style.font_color = optional_string(*it, "font_color").value_or(style.font_color);
    }
    Network net = import_node_link(topology, style);

    if (auto it = attributes->find("nodes"); it != attributes->end()) {
        for (const auto& entry : *it) {
            if (!entry.is_object() || !entry.contains("id")) {
                throw ValidationError("node attributes need an \"id\"");
            }
            const NodeId id = NodeId::from_json(entry["id"]);
            if (!net.contains(id)) {
                throw NodeNotFound(id.text());
            }
            NodeAttrs attrs;
            attrs.size = optional_number(entry, "size");
            attrs.value = optional_number(entry, "value");
            attrs.title = optional_string(entry, "title");
            attrs.x = optional_number(entry, "x");
            attrs.y = optional_number(entry, "y");
            attrs.color = optional_string(entry, "color");
            attrs.shape = optional_string(entry, "shape");
            net.add_node(id, optional_string(entry, "label"), attrs);
        }
    }

    if (auto it = attributes->find("edges"); it != attributes->end()) {
        if (!it->is_array() || it->size() != net.edges().size()) {
            throw ValidationError("edge attributes must align with links");
        }
        for (std::size_t k = 0; k < net.edges().size(); ++k) {
            const auto& entry = (*it)[k];
            net.set_edge_attrs(k, EdgeAttrs{optional_number(entry, "value"), optional_number(entry, "width"),
                                            optional_string(entry, "title")});
        }
    }
    return net;
}

}  // namespace netvis::ingest
