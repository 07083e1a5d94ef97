#include "netvis/options.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "netvis/errors.hpp"
#include "script_reader.hpp"

namespace netvis {

ordered_json json_number(double value) {
    constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53
    if (std::isfinite(value) && std::trunc(value) == value && std::fabs(value) < kExactIntegerLimit &&
        !(value == 0.0 && std::signbit(value))) {
        return static_cast<std::int64_t>(value);
    }
    return value;
}

namespace {

constexpr std::array<std::string_view, 4> kSolverNames = {
    "barnesHut", "forceAtlas2Based", "repulsion", "hierarchicalRepulsion"};

template <class Params>
struct Field {
    std::string_view key;
    double Params::*member;
};

// Canonical key order per block. Aliases are accepted on input only.
constexpr std::array<Field<BarnesHutParams>, 6> kBarnesHutFields = {{
    {"gravity", &BarnesHutParams::gravity},
    {"centralGravity", &BarnesHutParams::central_gravity},
    {"springLength", &BarnesHutParams::spring_length},
    {"springStrength", &BarnesHutParams::spring_strength},
    {"damping", &BarnesHutParams::damping},
    {"overlap", &BarnesHutParams::overlap},
}};
constexpr std::array<Field<BarnesHutParams>, 3> kBarnesHutAliases = {{
    {"gravitationalConstant", &BarnesHutParams::gravity},
    {"springConstant", &BarnesHutParams::spring_strength},
    {"avoidOverlap", &BarnesHutParams::overlap},
}};

constexpr std::array<Field<ForceAtlas2Params>, 5> kForceAtlas2Fields = {{
    {"gravitationalConstant", &ForceAtlas2Params::gravitational_constant},
    {"centralGravity", &ForceAtlas2Params::central_gravity},
    {"springLength", &ForceAtlas2Params::spring_length},
    {"springConstant", &ForceAtlas2Params::spring_constant},
    {"damping", &ForceAtlas2Params::damping},
}};

constexpr std::array<Field<RepulsionParams>, 5> kRepulsionFields = {{
    {"centralGravity", &RepulsionParams::central_gravity},
    {"springConstant", &RepulsionParams::spring_constant},
    {"nodeDistance", &RepulsionParams::node_distance},
    {"damping", &RepulsionParams::damping},
    {"springLength", &RepulsionParams::spring_length},
}};

constexpr std::array<Field<HierarchicalRepulsionParams>, 5> kHierarchicalFields = {{
    {"centralGravity", &HierarchicalRepulsionParams::central_gravity},
    {"springConstant", &HierarchicalRepulsionParams::spring_constant},
    {"nodeDistance", &HierarchicalRepulsionParams::node_distance},
    {"damping", &HierarchicalRepulsionParams::damping},
    {"springLength", &HierarchicalRepulsionParams::spring_length},
}};

template <class Params>
struct Schema;

template <>
struct Schema<BarnesHutParams> {
    static constexpr auto& fields = kBarnesHutFields;
    static constexpr auto& aliases = kBarnesHutAliases;
};
template <>
struct Schema<ForceAtlas2Params> {
    static constexpr auto& fields = kForceAtlas2Fields;
    static constexpr std::array<Field<ForceAtlas2Params>, 0> aliases{};
};
template <>
struct Schema<RepulsionParams> {
    static constexpr auto& fields = kRepulsionFields;
    static constexpr std::array<Field<RepulsionParams>, 0> aliases{};
};
template <>
struct Schema<HierarchicalRepulsionParams> {
    static constexpr auto& fields = kHierarchicalFields;
    static constexpr std::array<Field<HierarchicalRepulsionParams>, 0> aliases{};
};

std::string block_pointer(SolverKind kind, std::string_view key) {
    return "/physics/" + std::string(to_string(kind)) + "/" + std::string(key);
}

void require_non_negative(double value, SolverKind kind, std::string_view key) {
    if (!(value >= 0.0)) {
        throw ValidationError(std::string(key) + " must be >= 0", block_pointer(kind, key));
    }
}

void require_damping(double value, SolverKind kind) {
    if (!(value >= 0.0 && value < 1.0)) {
        throw ValidationError("damping must be in [0, 1)", block_pointer(kind, "damping"));
    }
}

void validate_block(const BarnesHutParams& p) {
    constexpr auto kind = SolverKind::barnesHut;
    if (!std::isfinite(p.gravity)) {
        throw ValidationError("gravity must be finite", block_pointer(kind, "gravity"));
    }
    require_non_negative(p.central_gravity, kind, "centralGravity");
    require_non_negative(p.spring_length, kind, "springLength");
    require_non_negative(p.spring_strength, kind, "springStrength");
    require_damping(p.damping, kind);
    if (!(p.overlap >= 0.0 && p.overlap <= 1.0)) {
        throw ValidationError("overlap must be in [0, 1]", block_pointer(kind, "overlap"));
    }
}

void validate_block(const ForceAtlas2Params& p) {
    constexpr auto kind = SolverKind::forceAtlas2Based;
    if (!std::isfinite(p.gravitational_constant)) {
        throw ValidationError("gravitationalConstant must be finite", block_pointer(kind, "gravitationalConstant"));
    }
    require_non_negative(p.central_gravity, kind, "centralGravity");
    require_non_negative(p.spring_length, kind, "springLength");
    require_non_negative(p.spring_constant, kind, "springConstant");
    require_damping(p.damping, kind);
}

template <class Params>
void validate_repulsion_like(const Params& p, SolverKind kind) {
    require_non_negative(p.central_gravity, kind, "centralGravity");
    require_non_negative(p.spring_constant, kind, "springConstant");
    if (!(p.node_distance > 0.0) || !std::isfinite(p.node_distance)) {
        throw ValidationError("nodeDistance must be > 0", block_pointer(kind, "nodeDistance"));
    }
    require_damping(p.damping, kind);
    require_non_negative(p.spring_length, kind, "springLength");
}

void validate_block(const RepulsionParams& p) {
    validate_repulsion_like(p, SolverKind::repulsion);
}

void validate_block(const HierarchicalRepulsionParams& p) {
    validate_repulsion_like(p, SolverKind::hierarchicalRepulsion);
}

}  // namespace

std::string_view to_string(SolverKind kind) {
    return kSolverNames[static_cast<std::size_t>(kind)];
}

SolverKind solver_from_string(std::string_view name) {
    for (std::size_t k = 0; k < kSolverNames.size(); ++k) {
        if (kSolverNames[k] == name) {
            return static_cast<SolverKind>(k);
        }
    }
    throw ValidationError("unknown solver \"" + std::string(name) +
                              "\" (expected barnesHut, forceAtlas2Based, repulsion or hierarchicalRepulsion)",
                          "/physics/solver");
}

SolverParams default_params(SolverKind kind) {
    switch (kind) {
        case SolverKind::barnesHut: return BarnesHutParams{};
        case SolverKind::forceAtlas2Based: return ForceAtlas2Params{};
        case SolverKind::repulsion: return RepulsionParams{};
        case SolverKind::hierarchicalRepulsion: return HierarchicalRepulsionParams{};
    }
    return BarnesHutParams{};
}

ForceConstants PhysicsOptions::constants() const {
    return std::visit(
        [](const auto& p) -> ForceConstants {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BarnesHutParams>) {
                return {p.central_gravity, p.spring_length, p.spring_strength, p.damping};
            } else {
                return {p.central_gravity, p.spring_length, p.spring_constant, p.damping};
            }
        },
        solver_params);
}

void validate(const BarnesHutParams& params) {
    validate_block(params);
}

void validate(const PhysicsOptions& physics) {
    std::visit([](const auto& p) { validate_block(p); }, physics.solver_params);
    if (!(physics.max_velocity > 0.0) || !std::isfinite(physics.max_velocity)) {
        throw ValidationError("maxVelocity must be > 0", "/physics/maxVelocity");
    }
    if (!(physics.min_velocity > 0.0)) {
        throw ValidationError("minVelocity must be > 0", "/physics/minVelocity");
    }
    if (!(physics.min_velocity < physics.max_velocity)) {
        throw ValidationError("minVelocity must be less than maxVelocity", "/physics/minVelocity");
    }
    if (!(physics.timestep > 0.0) || !std::isfinite(physics.timestep)) {
        throw ValidationError("timestep must be > 0", "/physics/timestep");
    }
    if (physics.stabilization.max_iterations <= 0) {
        throw ValidationError("stabilization.iterations must be a positive integer",
                              "/physics/stabilization/iterations");
    }
}

namespace {

double number_at(const ordered_json& value, const std::string& pointer) {
    if (!value.is_number()) {
        throw ValidationError("expected a number, got " + value.dump(), pointer);
    }
    return value.get<double>();
}

bool bool_at(const ordered_json& value, const std::string& pointer) {
    if (!value.is_boolean()) {
        throw ValidationError("expected true or false, got " + value.dump(), pointer);
    }
    return value.get<bool>();
}

template <class Params>
Params read_block(const ordered_json& block, SolverKind kind) {
    const std::string base = "/physics/" + std::string(to_string(kind));
    if (!block.is_object()) {
        throw ValidationError(std::string(to_string(kind)) + " must be an object", base);
    }
    Params params;
    for (const auto& [key, value] : block.items()) {
        const std::string pointer = base + "/" + key;
        double Params::*member = nullptr;
        for (const auto& field : Schema<Params>::fields) {
            if (field.key == key) {
                member = field.member;
            }
        }
        for (const auto& field : Schema<Params>::aliases) {
            if (field.key == key) {
                member = field.member;
            }
        }
        if (member == nullptr) {
            throw ValidationError("unknown " + std::string(to_string(kind)) + " parameter \"" + key + "\"",
                                  pointer);
        }
        params.*member = number_at(value, pointer);
    }
    return params;
}

SolverParams read_solver_block(const ordered_json& block, SolverKind kind) {
    switch (kind) {
        case SolverKind::barnesHut: return read_block<BarnesHutParams>(block, kind);
        case SolverKind::forceAtlas2Based: return read_block<ForceAtlas2Params>(block, kind);
        case SolverKind::repulsion: return read_block<RepulsionParams>(block, kind);
        case SolverKind::hierarchicalRepulsion: return read_block<HierarchicalRepulsionParams>(block, kind);
    }
    return BarnesHutParams{};
}

bool is_solver_name(std::string_view key) {
    for (auto name : kSolverNames) {
        if (name == key) {
            return true;
        }
    }
    return false;
}

Stabilization read_stabilization(const ordered_json& value) {
    const std::string base = "/physics/stabilization";
    Stabilization out;
    if (value.is_boolean()) {
        out.enabled = value.get<bool>();
        return out;
    }
    if (!value.is_object()) {
        throw ValidationError("stabilization must be a boolean or an object", base);
    }
    for (const auto& [key, item] : value.items()) {
        if (key == "enabled") {
            out.enabled = bool_at(item, base + "/enabled");
        } else if (key == "iterations") {
            if (!item.is_number_integer()) {
                throw ValidationError("stabilization.iterations must be an integer", base + "/iterations");
            }
            out.max_iterations = item.get<std::int64_t>();
        } else {
            out.extra[key] = item;
        }
    }
    return out;
}

PhysicsOptions read_physics(const ordered_json& physics) {
    if (!physics.is_object()) {
        throw ValidationError("physics must be an object", "/physics");
    }
    PhysicsOptions out;
    std::optional<SolverKind> named;
    if (auto it = physics.find("solver"); it != physics.end()) {
        if (!it->is_string()) {
            throw ValidationError("solver must be a string", "/physics/solver");
        }
        named = solver_from_string(it->get<std::string>());
    }

    std::optional<SolverKind> block_kind;
    for (const auto& [key, value] : physics.items()) {
        if (!is_solver_name(key)) {
            continue;
        }
        const SolverKind kind = solver_from_string(key);
        if (named && *named != kind) {
            throw ValidationError("block \"" + key + "\" does not match solver \"" +
                                      std::string(to_string(*named)) + "\"",
                                  "/physics/" + key);
        }
        if (block_kind) {
            throw ValidationError("more than one solver block given without a \"solver\" field", "/physics/" + key);
        }
        block_kind = kind;
        out.solver_params = read_solver_block(value, kind);
    }
    if (named && !block_kind) {
        out.solver_params = default_params(*named);
    }

    for (const auto& [key, value] : physics.items()) {
        const std::string pointer = "/physics/" + key;
        if (key == "solver" || is_solver_name(key)) {
            continue;
        }
        if (key == "enabled") {
            out.enabled = bool_at(value, pointer);
        } else if (key == "maxVelocity") {
            out.max_velocity = number_at(value, pointer);
        } else if (key == "minVelocity") {
            out.min_velocity = number_at(value, pointer);
        } else if (key == "timestep") {
            out.timestep = number_at(value, pointer);
        } else if (key == "stabilization") {
            out.stabilization = read_stabilization(value);
        } else {
            out.extra[key] = value;
        }
    }
    return out;
}

detail::Location locate(const detail::LocatedDocument& doc, std::string pointer) {
    while (true) {
        if (auto it = doc.locations.find(pointer); it != doc.locations.end()) {
            return it->second;
        }
        if (pointer.empty()) {
            return {};
        }
        pointer.erase(pointer.rfind('/'));
    }
}

template <class Params>
ordered_json block_to_json(const Params& params) {
    ordered_json out = ordered_json::object();
    for (const auto& field : Schema<Params>::fields) {
        out[std::string(field.key)] = json_number(params.*(field.member));
    }
    return out;
}

}  // namespace

Options parse_options_script(std::string_view text) {
    const detail::LocatedDocument doc = detail::read_options_script(text);
    Options out;
    try {
        for (const auto& [key, value] : doc.value.items()) {
            if (key == "physics") {
                out.physics = read_physics(value);
            } else {
                out.sections[key] = value;
            }
        }
        validate(out.physics);
    } catch (const ValidationError& e) {
        if (e.line() != 0) {
            throw;
        }
        const detail::Location where = locate(doc, e.field());
        throw ValidationError(e.detail(), where.line, where.column);
    }
    return out;
}

ordered_json options_to_json(const Options& opts) {
    const PhysicsOptions& ph = opts.physics;
    ordered_json physics = ordered_json::object();
    physics["enabled"] = ph.enabled;
    physics["solver"] = std::string(to_string(ph.solver()));
    physics[std::string(to_string(ph.solver()))] =
        std::visit([](const auto& p) { return block_to_json(p); }, ph.solver_params);
    physics["maxVelocity"] = json_number(ph.max_velocity);
    physics["minVelocity"] = json_number(ph.min_velocity);
    physics["timestep"] = json_number(ph.timestep);
    ordered_json stabilization = ordered_json::object();
    stabilization["enabled"] = ph.stabilization.enabled;
    stabilization["iterations"] = ph.stabilization.max_iterations;
    for (const auto& [key, value] : ph.stabilization.extra.items()) {
        stabilization[key] = value;
    }
    physics["stabilization"] = std::move(stabilization);
    for (const auto& [key, value] : ph.extra.items()) {
        physics[key] = value;
    }

    ordered_json out = ordered_json::object();
    out["physics"] = std::move(physics);
    for (const auto& [key, value] : opts.sections.items()) {
        out[key] = value;
    }
    return out;
}

std::string serialize_options(const Options& opts, bool pretty) {
    return options_to_json(opts).dump(pretty ? 2 : -1);
}

namespace {

constexpr std::array<std::string_view, 8> kSectionNames = {
    "nodes", "edges", "layout", "interaction", "manipulation", "physics", "selection", "renderer"};

}  // namespace

std::string_view to_string(WidgetSection section) {
    return kSectionNames[static_cast<std::size_t>(section)];
}

WidgetSpec WidgetSpec::all() {
    WidgetSpec spec;
    spec.mask_ = (1u << kSectionNames.size()) - 1u;
    return spec;
}

WidgetSpec WidgetSpec::from_filter(std::span<const std::string> filter) {
    if (filter.empty()) {
        return all();
    }
    WidgetSpec spec;
    for (const auto& name : filter) {
        bool known = false;
        for (std::size_t k = 0; k < kSectionNames.size(); ++k) {
            if (kSectionNames[k] == name) {
                spec.mask_ |= 1u << k;
                known = true;
            }
        }
        if (!known) {
            throw ValidationError("unknown configurator section \"" + name +
                                  "\" (expected nodes, edges, layout, interaction, manipulation, physics, "
                                  "selection or renderer)");
        }
    }
    return spec;
}

bool WidgetSpec::contains(WidgetSection section) const {
    return (mask_ >> static_cast<unsigned>(section)) & 1u;
}

std::vector<WidgetSection> WidgetSpec::sections() const {
    std::vector<WidgetSection> out;
    for (std::size_t k = 0; k < kSectionNames.size(); ++k) {
        if ((mask_ >> k) & 1u) {
            out.push_back(static_cast<WidgetSection>(k));
        }
    }
    return out;
}

std::vector<std::string> WidgetSpec::names() const {
    std::vector<std::string> out;
    for (auto section : sections()) {
        out.emplace_back(to_string(section));
    }
    return out;
}

}  // namespace netvis
