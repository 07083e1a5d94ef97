#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netvis/network.hpp"
#include "netvis/options.hpp"

namespace netvis::layout {

/// Distance floor for every force law, in px.
inline constexpr double kEpsilon = 0.1;
/// Default Barnes-Hut opening threshold.
inline constexpr double kDefaultTheta = 0.5;
/// Largest node count stabilize() evaluates with exact pairwise sums when no
/// theta is given. Below this the tree is not faster, and its approximation
/// error keeps a lightly damped layout from settling under minVelocity.
inline constexpr std::size_t kExactSummationLimit = 1024;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Vec2&) const = default;
};

/// Simulation state, structure-of-arrays and index-aligned with the
/// network's node order.
struct LayoutState {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> vx;
    std::vector<double> vy;
    /// Pinned nodes never move.
    std::vector<std::uint8_t> pinned;
    /// Vertically locked nodes keep their y (hierarchical levels).
    std::vector<std::uint8_t> y_locked;
    std::int64_t iteration = 0;

    explicit LayoutState(std::size_t n = 0);

    std::size_t size() const noexcept { return x.size(); }
    Vec2 position(std::size_t i) const { return {x[i], y[i]}; }
    Vec2 velocity(std::size_t i) const { return {vx[i], vy[i]}; }

    bool operator==(const LayoutState&) const = default;
};

struct ForceField {
    std::vector<double> fx;
    std::vector<double> fy;

    explicit ForceField(std::size_t n = 0) : fx(n, 0.0), fy(n, 0.0) {}
    std::size_t size() const noexcept { return fx.size(); }
    Vec2 at(std::size_t i) const { return {fx[i], fy[i]}; }
    void add(const ForceField& other);
};

/// Per-node physical properties derived from the network.
struct Bodies {
    std::vector<double> mass;    // 1 for every node
    std::vector<double> radius;  // node_radii(), used by the overlap term
    std::vector<double> degree;  // incident edge endpoints, self-loops count twice

    std::size_t size() const noexcept { return mass.size(); }
};

Bodies bodies_of(const Network& net);

/// SplitMix64. The constants are part of the position contract: any
/// implementation seeded the same way must produce the same stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, 1) with 53 bits: (next() >> 11) * 2^-53.
    double next_unit();

private:
    std::uint64_t state_;
};

/// Nodes with explicit x and y keep them and are pinned. The rest are drawn
/// uniformly from the disc of radius spring_length * sqrt(n) around the
/// origin by rejection from the enclosing square. hierarchicalRepulsion
/// additionally fixes y to BFS depth * spring_length and locks it.
LayoutState initial_positions(const Network& net, const PhysicsOptions& physics, std::uint64_t seed);
LayoutState initial_positions(const Network& net, std::uint64_t seed);

/// Breadth-first depth of every node over the undirected adjacency, each
/// component rooted at its earliest-inserted node.
std::vector<std::int64_t> bfs_levels(const Network& net);

/// Repulsion for the active solver. barnesHut uses the quadtree when
/// theta > 0 and the exact pairwise kernel at theta == 0; the other solvers
/// are always exact. Throws ValidationError for theta < 0.
ForceField repulsive_forces(const LayoutState& state, const Bodies& bodies, const PhysicsOptions& physics,
                            double theta = kDefaultTheta);

/// Hooke springs along every edge, k * (d - L) toward the other endpoint.
ForceField spring_forces(const Network& net, const LayoutState& state, const PhysicsOptions& physics);

/// Harmonic pull toward the origin: -cg * m * p.
ForceField central_gravity_forces(const LayoutState& state, const Bodies& bodies, const PhysicsOptions& physics);

/// One semi-implicit Euler step with multiplicative damping and a speed
/// clamp. Returns the largest post-step speed among movable nodes. Throws
/// NumericError naming the first node with a non-finite force.
double step(LayoutState& state, const ForceField& forces, const Bodies& bodies, const PhysicsOptions& physics,
            const Network* net = nullptr);

struct ConvergenceReport {
    std::int64_t iterations_used = 0;
    double final_max_speed = 0.0;
    bool converged = false;
};

struct LayoutResult {
    LayoutState state;
    ConvergenceReport report;
};

/// Sum of all forces acting on the state, in the order the loop applies them.
ForceField total_forces(const Network& net, const LayoutState& state, const Bodies& bodies,
                        const PhysicsOptions& physics, double theta = kDefaultTheta);

/// Steps until the fastest movable node is slower than minVelocity or the
/// iteration cap is hit. With physics or stabilization disabled the initial
/// placement is returned unchanged. Without `theta`, barnesHut uses
/// stabilization_theta(node count).
LayoutResult stabilize(const Network& net, const Options& opts, std::uint64_t seed,
                       std::optional<double> theta = std::nullopt);

/// 0 (exact) up to kExactSummationLimit nodes, kDefaultTheta above.
double stabilization_theta(std::size_t node_count);

/// {"converged":..,"iterations":..,"final_max_speed":..,"positions":[{"id","x","y"}...]}
ordered_json positions_document(const Network& net, const LayoutResult& result);

struct PositionsDocument {
    bool converged = false;
    std::int64_t iterations = 0;
    double final_max_speed = 0.0;
    std::vector<std::pair<NodeId, Vec2>> positions;
};

/// Throws ParseError/ValidationError on malformed documents.
PositionsDocument parse_positions_document(std::string_view text);

}  // namespace netvis::layout
