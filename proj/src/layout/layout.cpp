#include "netvis/layout.hpp"

#include <cmath>
#include <deque>

#include "netvis/errors.hpp"
#include "netvis/kernels.hpp"
#include "netvis/quadtree.hpp"

namespace netvis::layout {

LayoutState::LayoutState(std::size_t n)
    : x(n, 0.0), y(n, 0.0), vx(n, 0.0), vy(n, 0.0), pinned(n, 0), y_locked(n, 0) {}

void ForceField::add(const ForceField& other) {
    for (std::size_t i = 0; i < fx.size(); ++i) {
        fx[i] += other.fx[i];
        fy[i] += other.fy[i];
    }
}

Bodies bodies_of(const Network& net) {
    const std::size_t n = net.nodes().size();
    Bodies bodies;
    bodies.mass.assign(n, 1.0);
    bodies.radius = node_radii(net);
    bodies.degree.assign(n, 0.0);
    for (const auto& edge : net.edges()) {
        bodies.degree[net.index_of(edge.from)] += 1.0;
        bodies.degree[net.index_of(edge.to)] += 1.0;
    }
    return bodies;
}

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::vector<std::int64_t> bfs_levels(const Network& net) {
    const std::size_t n = net.nodes().size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& edge : net.edges()) {
        const std::size_t a = net.index_of(edge.from);
        const std::size_t b = net.index_of(edge.to);
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<std::int64_t> level(n, -1);
    std::deque<std::size_t> queue;
    for (std::size_t root = 0; root < n; ++root) {
        if (level[root] >= 0) {
            continue;
        }
        level[root] = 0;
        queue.push_back(root);
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (std::size_t v : adj[u]) {
                if (level[v] < 0) {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return level;
}

LayoutState initial_positions(const Network& net, const PhysicsOptions& physics, std::uint64_t seed) {
    const std::size_t n = net.nodes().size();
    LayoutState state(n);
    if (n == 0) {
        return state;
    }
    const double spring_length = physics.constants().spring_length;
    // A zero spring length would collapse every free node onto the origin.
    const double radius = (spring_length > 0.0 ? spring_length : 1.0) * std::sqrt(static_cast<double>(n));
    const bool hierarchical = physics.solver() == SolverKind::hierarchicalRepulsion;
    std::vector<std::int64_t> levels;
    if (hierarchical) {
        levels = bfs_levels(net);
    }

    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const Node& node = net.nodes()[i];
        // Every node draws a point, pinned or not, so one node's explicit
        // coordinates never shift the others' placement.
        double px, py;
        do {
            px = (2.0 * rng.next_unit() - 1.0) * radius;
            py = (2.0 * rng.next_unit() - 1.0) * radius;
        } while (px * px + py * py > radius * radius);

        if (node.x) {
            px = *node.x;
        }
        if (node.y) {
            py = *node.y;
        }
        if (node.has_position()) {
            state.pinned[i] = 1;
        } else if (hierarchical) {
            py = static_cast<double>(levels[i]) * spring_length;
            state.y_locked[i] = 1;
        }
        state.x[i] = px;
        state.y[i] = py;
    }
    return state;
}

LayoutState initial_positions(const Network& net, std::uint64_t seed) {
    return initial_positions(net, net.options().physics, seed);
}

namespace {

kernels::Bodies2D view_of(const LayoutState& state, const Bodies& bodies) {
    return {state.x.data(), state.y.data(), bodies.mass.data(), bodies.radius.data(), bodies.degree.data(),
            state.size()};
}

}  // namespace

ForceField repulsive_forces(const LayoutState& state, const Bodies& bodies, const PhysicsOptions& physics,
                            double theta) {
    if (!(theta >= 0.0)) {
        throw ValidationError("theta must be >= 0");
    }
    const std::size_t n = state.size();
    ForceField out(n);
    if (n == 0) {
        return out;
    }
    const auto& k = kernels::active_kernels();
    const auto view = view_of(state, bodies);
    const kernels::Forces2D sink{out.fx.data(), out.fy.data()};

    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, BarnesHutParams>) {
                const double strength = -p.gravity;
                if (theta == 0.0) {
                    k.inverse_square(view, strength, p.overlap, sink);
                    return;
                }
                const QuadTree tree = QuadTree::build(state.x, state.y, bodies.mass, bodies.radius);
                for (std::size_t i = 0; i < n; ++i) {
                    const Vec2 f = tree.force_on(i, strength, p.overlap, theta);
                    out.fx[i] = f.x;
                    out.fy[i] = f.y;
                }
            } else if constexpr (std::is_same_v<T, ForceAtlas2Params>) {
                k.degree_weighted(view, -p.gravitational_constant, sink);
            } else {
                k.linear_cutoff(view, p.spring_constant, p.node_distance, sink);
            }
        },
        physics.solver_params);
    return out;
}

ForceField spring_forces(const Network& net, const LayoutState& state, const PhysicsOptions& physics) {
    ForceField out(state.size());
    const ForceConstants c = physics.constants();
    for (const auto& edge : net.edges()) {
        const std::size_t a = net.index_of(edge.from);
        const std::size_t b = net.index_of(edge.to);
        if (a == b) {
            continue;
        }
        const double dx = state.x[b] - state.x[a];
        const double dy = state.y[b] - state.y[a];
        const double d = std::sqrt(dx * dx + dy * dy);
        if (d == 0.0) {
            continue;
        }
        const double f = c.spring_constant * (d - c.spring_length);
        const double fx = f * (dx / d);
        const double fy = f * (dy / d);
        out.fx[a] += fx;
        out.fy[a] += fy;
        out.fx[b] -= fx;
        out.fy[b] -= fy;
    }
    return out;
}

ForceField central_gravity_forces(const LayoutState& state, const Bodies& bodies, const PhysicsOptions& physics) {
    ForceField out(state.size());
    if (state.size() == 0) {
        return out;
    }
    kernels::active_kernels().central_gravity(view_of(state, bodies), physics.constants().central_gravity,
                                              {out.fx.data(), out.fy.data()});
    return out;
}

double step(LayoutState& state, const ForceField& forces, const Bodies& bodies, const PhysicsOptions& physics,
            const Network* net) {
    const std::size_t n = state.size();
    if (forces.size() != n || bodies.size() != n) {
        throw ValidationError("step inputs are not index-aligned");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(forces.fx[i]) || !std::isfinite(forces.fy[i])) {
            const std::string who = net != nullptr ? "node " + net->nodes()[i].id.text()
                                                   : "node index " + std::to_string(i);
            throw NumericError("non-finite force on " + who);
        }
    }
    const kernels::IntegrateArgs args{state.x.data(),  state.y.data(),        state.vx.data(),
                                      state.vy.data(), forces.fx.data(),      forces.fy.data(),
                                      bodies.mass.data(), state.pinned.data(), state.y_locked.data(),
                                      n,               physics.timestep,      physics.constants().damping,
                                      physics.max_velocity};
    const double max_speed = n == 0 ? 0.0 : kernels::active_kernels().integrate(args);
    ++state.iteration;
    return max_speed;
}

ForceField total_forces(const Network& net, const LayoutState& state, const Bodies& bodies,
                        const PhysicsOptions& physics, double theta) {
    ForceField total = repulsive_forces(state, bodies, physics, theta);
    total.add(spring_forces(net, state, physics));
    total.add(central_gravity_forces(state, bodies, physics));
    return total;
}

double stabilization_theta(std::size_t node_count) {
    return node_count <= kExactSummationLimit ? 0.0 : kDefaultTheta;
}

LayoutResult stabilize(const Network& net, const Options& opts, std::uint64_t seed, std::optional<double> theta) {
    const PhysicsOptions& physics = opts.physics;
    const double opening = theta.value_or(stabilization_theta(net.nodes().size()));
    validate(physics);
    LayoutResult result{initial_positions(net, physics, seed), {}};
    if (net.nodes().empty() || !physics.enabled || !physics.stabilization.enabled) {
        result.report.converged = true;
        return result;
    }
    const Bodies bodies = bodies_of(net);
    double max_speed = 0.0;
    while (result.state.iteration < physics.stabilization.max_iterations) {
        const ForceField forces = total_forces(net, result.state, bodies, physics, opening);
        max_speed = step(result.state, forces, bodies, physics, &net);
        if (max_speed < physics.min_velocity) {
            break;
        }
    }
    result.report.iterations_used = result.state.iteration;
    result.report.final_max_speed = max_speed;
    result.report.converged = max_speed < physics.min_velocity;
    return result;
}

ordered_json positions_document(const Network& net, const LayoutResult& result) {
    ordered_json doc = ordered_json::object();
    doc["converged"] = result.report.converged;
    doc["iterations"] = result.report.iterations_used;
    doc["final_max_speed"] = result.report.final_max_speed;
    ordered_json list = ordered_json::array();
    for (std::size_t i = 0; i < net.nodes().size(); ++i) {
        ordered_json entry = ordered_json::object();
        entry["id"] = net.nodes()[i].id.to_json();
        entry["x"] = result.state.x[i];
        entry["y"] = result.state.y[i];
        list.push_back(std::move(entry));
    }
    doc["positions"] = std::move(list);
    return doc;
}

PositionsDocument parse_positions_document(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("positions document: ") + e.what(), 1, 0);
    }
    if (!doc.is_object() || !doc.contains("positions") || !doc["positions"].is_array()) {
        throw ValidationError("positions document needs a \"positions\" array");
    }
    PositionsDocument out;
    out.converged = doc.value("converged", false);
    out.iterations = doc.value("iterations", std::int64_t{0});
    out.final_max_speed = doc.value("final_max_speed", 0.0);
    for (const auto& entry : doc["positions"]) {
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("x") || !entry.contains("y") ||
            !entry["x"].is_number() || !entry["y"].is_number()) {
            throw ValidationError("each position needs id, x and y");
        }
        out.positions.emplace_back(NodeId::from_json(entry["id"]),
                                   Vec2{entry["x"].get<double>(), entry["y"].get<double>()});
    }
    return out;
}

}  // namespace netvis::layout
