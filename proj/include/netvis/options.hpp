#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace netvis {

using ordered_json = nlohmann::ordered_json;

/// Integral doubles become JSON integers so that -80000.0 prints as -80000.
ordered_json json_number(double value);

enum class SolverKind { barnesHut, forceAtlas2Based, repulsion, hierarchicalRepulsion };

std::string_view to_string(SolverKind kind);
/// Throws ValidationError for anything but the four exact solver names.
SolverKind solver_from_string(std::string_view name);

struct BarnesHutParams {
    double gravity = -80000.0;  // negative repels
    double central_gravity = 0.3;
    double spring_length = 250.0;
    double spring_strength = 0.001;
    double damping = 0.09;
    double overlap = 0.0;

    bool operator==(const BarnesHutParams&) const = default;
};

struct ForceAtlas2Params {
    double gravitational_constant = -50.0;
    double central_gravity = 0.01;
    double spring_length = 100.0;
    double spring_constant = 0.08;
    double damping = 0.4;

    bool operator==(const ForceAtlas2Params&) const = default;
};

struct RepulsionParams {
    double central_gravity = 0.2;
    double spring_constant = 0.05;
    double node_distance = 100.0;
    double damping = 0.09;
    double spring_length = 200.0;

    bool operator==(const RepulsionParams&) const = default;
};

/// Same parameter set as repulsion; the solver differs only in how the
/// layout engine seeds and locks vertical levels.
struct HierarchicalRepulsionParams {
    double central_gravity = 0.0;
    double spring_constant = 0.01;
    double node_distance = 120.0;
    double damping = 0.09;
    double spring_length = 100.0;

    bool operator==(const HierarchicalRepulsionParams&) const = default;
};

/// Variant alternatives are ordered like SolverKind so index() maps onto it.
using SolverParams =
    std::variant<BarnesHutParams, ForceAtlas2Params, RepulsionParams, HierarchicalRepulsionParams>;

SolverParams default_params(SolverKind kind);

struct Stabilization {
    bool enabled = true;
    std::int64_t max_iterations = 1000;
    /// Other stabilization keys (e.g. "fit"), preserved in order.
    ordered_json extra = ordered_json::object();

    bool operator==(const Stabilization&) const = default;
};

/// The force-model constants every solver shares, pulled out of whichever
/// block is active.
struct ForceConstants {
    double central_gravity;
    double spring_length;
    double spring_constant;
    double damping;
};

struct PhysicsOptions {
    bool enabled = true;
    SolverParams solver_params = BarnesHutParams{};
    double max_velocity = 50.0;
    double min_velocity = 0.1;
    double timestep = 0.5;
    Stabilization stabilization;
    /// Unrecognised keys inside "physics" (e.g. "adaptiveTimestep"), kept in
    /// first-seen order and emitted after the typed fields.
    ordered_json extra = ordered_json::object();

    SolverKind solver() const { return static_cast<SolverKind>(solver_params.index()); }
    ForceConstants constants() const;

    bool operator==(const PhysicsOptions&) const = default;
};

struct Options {
    PhysicsOptions physics;
    /// Top-level sections other than "physics", passed through untouched.
    ordered_json sections = ordered_json::object();

    bool operator==(const Options&) const = default;
};

/// Throws ValidationError when a parameter is out of range.
void validate(const BarnesHutParams& params);
void validate(const PhysicsOptions& physics);

/// Accepts a bare JSON object or `var options = {...};`. Recognised physics
/// fields are overlaid on the defaults; everything else is preserved.
/// Throws ParseError (syntax) or ValidationError (semantics), both located.
Options parse_options_script(std::string_view text);

/// Canonical JSON: fixed key order, minified unless `pretty`.
std::string serialize_options(const Options& opts, bool pretty = false);
ordered_json options_to_json(const Options& opts);

/// The configurator panel sections the viewer knows how to show.
enum class WidgetSection : std::uint8_t {
    nodes,
    edges,
    layout,
    interaction,
    manipulation,
    physics,
    selection,
    renderer,
};

std::string_view to_string(WidgetSection section);

class WidgetSpec {
public:
    /// Every section, the result of an unfiltered show_buttons().
    static WidgetSpec all();
    /// Throws ValidationError on an unknown name. Empty filter means all.
    static WidgetSpec from_filter(std::span<const std::string> filter);

    bool contains(WidgetSection section) const;
    /// Sections in vocabulary order.
    std::vector<WidgetSection> sections() const;
    std::vector<std::string> names() const;

    bool operator==(const WidgetSpec&) const = default;

private:
    std::uint32_t mask_ = 0;
};

}  // namespace netvis
