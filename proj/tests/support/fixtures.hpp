#pragma once

// The three networks whose emitted datasets and pages are kept as goldens.

#include <optional>
#include <string>
#include <vector>

#include "netvis/ingest.hpp"
#include "netvis/network.hpp"

namespace fixture {

struct Case {
    std::string name;
    netvis::Network net;
};

inline netvis::Network two_nodes() {
    netvis::Network net;
    net.add_node(1);
    net.add_node(2);
    return net;
}

// Directed, string and integer ids, markup in titles, a repulsion script and
// a physics-only configurator.
inline netvis::Network styled_directed() {
    using namespace netvis;
    Network net(NetworkStyle{"600px", "90%", "#f8f8f0", "#333333"}, true);
    net.add_node("hub", "Hub", NodeAttrs{.size = 25, .title = "entry</script><!-- x", .color = "#97c2fc"});
    net.add_node(7, std::nullopt, NodeAttrs{.value = 3, .title = "seven<br>lucky", .x = 10, .y = -20.5});
    net.add_node("leaf", "Leaf & co", NodeAttrs{.shape = "box"});
    net.add_edge("hub", 7, EdgeAttrs{2, std::nullopt, "w=2"});
    net.add_edge(7, "leaf", EdgeAttrs{std::nullopt, 4.0, std::nullopt});
    net.add_edge("leaf", "hub");
    net.set_options(R"(var options = {
  "physics": {
    "repulsion": {
      "centralGravity": 1.3,
      "springLength": 180,
      "springConstant": 0.08,
      "nodeDistance": 90,
      "damping": 0.19
    },
    "maxVelocity": 45,
    "minVelocity": 0.19,
    "solver": "repulsion",
    "timestep": 0.34
  },
  "edges": {"smooth": false}
})");
    const std::vector<std::string> physics{"physics"};
    net.show_buttons(physics);
    return net;
}

inline netvis::Network small_got() {
    using namespace netvis::ingest;
    const std::vector<EdgeRecord> records = {
        {"Aemon", "Grenn", 5}, {"Aemon", "Samwell", 31}, {"Aerys", "Jaime", 18},
        {"Aerys", "Robert", 6}, {"Grenn", "Samwell", 12}, {"Jaime", "Robert", 4},
    };
    netvis::Network net = build_got_network(records, got_style());
    net.show_buttons();
    return net;
}

inline std::vector<Case> all() {
    return {{"two_nodes", two_nodes()}, {"styled_directed", styled_directed()}, {"small_got", small_got()}};
}

}  // namespace fixture
