#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "netvis/network.hpp"

namespace netvis::ingest {

struct EdgeRecord {
    std::string source;
    std::string target;
    double weight = 0.0;

    bool operator==(const EdgeRecord&) const = default;
};

/// Comma-separated, UTF-8, optional double-quoted fields ("" escapes a
/// quote). The header must name Source, Target and Weight in any order;
/// other columns are ignored. Throws ParseError with the 1-based line.
std::vector<EdgeRecord> parse_edge_csv(std::string_view text);

struct NodeLinkDocument {
    bool directed = false;
    std::vector<NodeId> nodes;
    std::vector<std::pair<NodeId, NodeId>> links;
};

/// Reads "directed", "nodes[].id", "links[].source/target". Every other
/// field is dropped. Throws ParseError/ValidationError.
NodeLinkDocument parse_node_link(std::string_view text);
NodeLinkDocument node_link_from_json(const ordered_json& doc);

/// Topology only: the network gets exactly the document's ids and links and
/// no attributes. Throws NodeNotFound for a dangling link.
Network import_node_link(const NodeLinkDocument& doc, NetworkStyle style = {});

/// Edge-list pipeline: nodes labelled and titled by name, edges valued by
/// weight, then every title gains " Neighbors:<br>" and the <br>-joined
/// neighbor list and every value becomes the neighbor count. Physics is set
/// to barnesHut defaults.
Network build_got_network(const std::vector<EdgeRecord>& records, NetworkStyle style);

/// Edge-list network without the tooltip/degree post-processing.
Network network_from_records(const std::vector<EdgeRecord>& records, bool directed = false);

/// Style used by the edge-list demo page.
NetworkStyle got_style();

/// Node-link document plus an "attributes" sidecar holding labels, titles,
/// values, colors, positions, edge values and the page style.
ordered_json export_graph_document(const Network& net);

/// Inverse of export_graph_document(): topology through import_node_link(),
/// then attributes re-applied from the sidecar when present.
Network load_graph_document(std::string_view text);

}  // namespace netvis::ingest
