#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "netvis/errors.hpp"
#include "netvis/ingest.hpp"
#include "netvis/layout.hpp"
#include "netvis/quadtree.hpp"
#include "support/oracles.hpp"

using namespace netvis;
using namespace netvis::layout;

namespace {

PhysicsOptions with_solver(SolverParams params) {
    PhysicsOptions ph;
    ph.solver_params = std::move(params);
    return ph;
}

std::vector<PhysicsOptions> all_solvers() {
    BarnesHutParams bh;
    bh.overlap = 0.5;
    return {with_solver(BarnesHutParams{}), with_solver(bh), with_solver(ForceAtlas2Params{}),
            with_solver(RepulsionParams{.node_distance = 400}),
            with_solver(HierarchicalRepulsionParams{.node_distance = 300})};
}

// Largest per-component deviation, relative to the node's oracle force norm.
double worst_relative(const ForceField& got, const std::vector<oracle::Vec>& want) {
    double worst = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        const long double norm = std::hypot(want[i].x, want[i].y);
        if (norm == 0) {
            continue;
        }
        worst = std::max(worst, static_cast<double>(std::fabs(got.fx[i] - want[i].x) / norm));
        worst = std::max(worst, static_cast<double>(std::fabs(got.fy[i] - want[i].y) / norm));
    }
    return worst;
}

Network path_network(std::size_t n) {
    Network net;
    for (std::size_t i = 0; i < n; ++i) {
        net.add_node(static_cast<int>(i));
    }
    for (std::size_t i = 1; i < n; ++i) {
        net.add_edge(static_cast<int>(i - 1), static_cast<int>(i));
    }
    return net;
}

Network random_network(std::uint64_t seed, std::size_t n, std::size_t m) {
    std::mt19937_64 rng(seed);
    Network net;
    for (std::size_t i = 0; i < n; ++i) {
        net.add_node(static_cast<int>(i));
    }
    for (std::size_t k = 0; k < m; ++k) {
        net.add_edge(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
    }
    return net;
}

}  // namespace

TEST_CASE("SplitMix64 reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
    SplitMix64 u(42);
    for (int k = 0; k < 1000; ++k) {
        const double v = u.next_unit();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("initial positions") {
    Network net;
    net.add_node(1, std::nullopt, NodeAttrs{.x = 21.4, .y = 100.2});
    net.add_node(2, std::nullopt, NodeAttrs{.x = 5.0});
    for (int i = 3; i < 40; ++i) {
        net.add_node(i);
    }
    const LayoutState s = initial_positions(net, 7);
    CHECK(s.x[0] == 21.4);
    CHECK(s.y[0] == 100.2);
    CHECK(s.pinned[0] == 1);
    CHECK(s.x[1] == 5.0);
    CHECK(s.pinned[1] == 0);
    const double radius = 250.0 * std::sqrt(40.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(s.vx[i] == 0.0);
        CHECK(s.vy[i] == 0.0);
        if (i >= 2) {
            CHECK(std::hypot(s.x[i], s.y[i]) <= radius);
        }
    }
    CHECK(initial_positions(net, 7) == s);
    CHECK_FALSE(initial_positions(net, 8) == s);
    CHECK(initial_positions(Network{}, 1).size() == 0);

    // Pinning one node does not move the others.
    Network plain;
    plain.add_node(1);
    plain.add_node(2, std::nullopt, NodeAttrs{.x = 5.0});
    for (int i = 3; i < 40; ++i) {
        plain.add_node(i);
    }
    const LayoutState p = initial_positions(plain, 7);
    for (std::size_t i = 2; i < s.size(); ++i) {
        CHECK(p.x[i] == s.x[i]);
        CHECK(p.y[i] == s.y[i]);
    }
}

TEST_CASE("hierarchical placement uses BFS levels") {
    Network net = path_network(4);
    net.add_node(10);
    net.add_node(11);
    net.add_edge(11, 10);
    CHECK(bfs_levels(net) == std::vector<std::int64_t>{0, 1, 2, 3, 0, 1});
    PhysicsOptions ph = with_solver(HierarchicalRepulsionParams{.spring_length = 80});
    const LayoutState s = initial_positions(net, ph, 3);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(s.y[i] == 80.0 * static_cast<double>(i));
        CHECK(s.y_locked[i] == 1);
    }
    CHECK(s.y[5] == 80.0);

    Options opts;
    opts.physics = ph;
    const LayoutResult r = stabilize(net, opts, 3);
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(r.state.y[i] == s.y[i]);
    }
}

TEST_CASE("quadtree basics") {
    const std::vector<double> one{3.0}, zero{0.0}, mass{2.5}, rad{10.0};
    const QuadTree single = QuadTree::build(one, zero, mass, rad);
    CHECK(single.cells().size() == 1);
    CHECK(single.root().is_leaf());
    CHECK(single.root().mass == 2.5);

    const std::vector<double> xs{-1.0, 1.0}, ys{0.0, 0.0}, ms{1.0, 1.0}, rs{0.0, 0.0};
    const QuadTree pair = QuadTree::build(xs, ys, ms, rs);
    CHECK(pair.root().mass == 2.0);
    CHECK(pair.root().com_x == 0.0);
    CHECK(pair.root().com_y == 0.0);
    CHECK(pair.root().side == doctest::Approx(2.2));

    const std::vector<double> empty;
    CHECK_THROWS_AS(QuadTree::build(empty, empty, empty, empty), ValidationError);
    const std::vector<double> bad{0.0, NAN};
    CHECK_THROWS_AS(QuadTree::build(bad, xs, ms, rs), NumericError);

    // Identical points end in one bucket at the depth limit.
    const std::vector<double> same(5, 1.0), m5(5, 1.0), r5(5, 0.0);
    const QuadTree stacked = QuadTree::build(same, same, m5, r5);
    CHECK(stacked.root().mass == 5.0);
}

TEST_CASE("quadtree mass and centre of mass match recomputation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto inst = oracle::random_instance(100, seed, 500.0);
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> mdist(0.5, 3.0);
        for (auto& m : inst.bodies.mass) {
            m = mdist(rng);
        }
        const QuadTree tree =
            QuadTree::build(inst.state.x, inst.state.y, inst.bodies.mass, inst.bodies.radius);

        std::vector<int> seen(100, 0);
        // Recursive recomputation straight from the leaves.
        std::function<void(std::int32_t, long double&, long double&, long double&)> visit =
            [&](std::int32_t c, long double& m, long double& mx, long double& my) {
                const auto& cell = tree.cells()[static_cast<std::size_t>(c)];
                m = mx = my = 0;
                if (cell.is_leaf()) {
                    for (std::uint32_t i : tree.items(cell)) {
                        ++seen[i];
                        CHECK(cell.contains(inst.state.x[i], inst.state.y[i]));
                        m += inst.bodies.mass[i];
                        mx += inst.bodies.mass[i] * static_cast<long double>(inst.state.x[i]);
                        my += inst.bodies.mass[i] * static_cast<long double>(inst.state.y[i]);
                    }
                } else {
                    for (std::int32_t child : cell.children) {
                        if (child == QuadTree::kNone) {
                            continue;
                        }
                        long double cm, cmx, cmy;
                        visit(child, cm, cmx, cmy);
                        m += cm;
                        mx += cmx;
                        my += cmy;
                    }
                }
                CHECK(std::fabs(cell.mass - m) <= 1e-12 * m);
                CHECK(std::fabs(cell.com_x - mx / m) <= 1e-12 * std::max(1.0L, std::fabs(mx / m)));
                CHECK(std::fabs(cell.com_y - my / m) <= 1e-12 * std::max(1.0L, std::fabs(my / m)));
            };
        // Second moments about each cell's center of mass, from its members.
        std::function<void(std::int32_t, std::vector<std::uint32_t>&)> members =
            [&](std::int32_t c, std::vector<std::uint32_t>& out) {
                const auto& cell = tree.cells()[static_cast<std::size_t>(c)];
                if (cell.is_leaf()) {
                    for (std::uint32_t i : tree.items(cell)) {
                        out.push_back(i);
                    }
                    return;
                }
                for (std::int32_t child : cell.children) {
                    if (child != QuadTree::kNone) {
                        members(child, out);
                    }
                }
            };
        for (std::size_t c = 0; c < tree.cells().size(); ++c) {
            const auto& cell = tree.cells()[c];
            std::vector<std::uint32_t> in;
            members(static_cast<std::int32_t>(c), in);
            long double ixx = 0, ixy = 0, iyy = 0, scale = 0;
            for (std::uint32_t i : in) {
                const long double sx = inst.state.x[i] - static_cast<long double>(cell.com_x);
                const long double sy = inst.state.y[i] - static_cast<long double>(cell.com_y);
                ixx += inst.bodies.mass[i] * sx * sx;
                ixy += inst.bodies.mass[i] * sx * sy;
                iyy += inst.bodies.mass[i] * sy * sy;
                scale += inst.bodies.mass[i] * (sx * sx + sy * sy);
            }
            const long double tol = 1e-9L * std::max(1.0L, scale);
            CHECK(std::fabs(cell.ixx - ixx) <= tol);
            CHECK(std::fabs(cell.ixy - ixy) <= tol);
            CHECK(std::fabs(cell.iyy - iyy) <= tol);
        }
        long double m, mx, my;
        visit(0, m, mx, my);
        for (int count : seen) {
            CHECK(count == 1);
        }
    }
}

TEST_CASE("theta = 0 matches the pairwise oracle for every solver") {
    for (const auto& ph : all_solvers()) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto inst = oracle::random_instance(61, seed, 300.0);
            const ForceField f = repulsive_forces(inst.state, inst.bodies, ph, 0.0);
            CHECK(worst_relative(f, oracle::pairwise_repulsion(inst.state, inst.bodies, ph)) <= 1e-9);
        }
    }
}

TEST_CASE("theta = 0.5 error against the oracle") {
    // With overlap, a cell shrinks distances by its mean radius, which costs
    // accuracy next to the epsilon floor.
    for (const auto& [overlap, per_node] : {std::pair{0.0, 1e-2}, std::pair{0.5, 5e-2}}) {
        PhysicsOptions ph = with_solver(BarnesHutParams{.overlap = overlap});
        const auto& bh = std::get<BarnesHutParams>(ph.solver_params);
        for (std::uint64_t seed = 100; seed < 110; ++seed) {
            const auto inst = oracle::random_instance(200, seed);
            const ForceField f = repulsive_forces(inst.state, inst.bodies, ph, 0.5);
            const auto want = oracle::pairwise_repulsion(inst.state, inst.bodies, ph);
            const auto scale = oracle::pair_magnitude_sum(inst.state, inst.bodies, bh);
            long double err2 = 0, norm2 = 0;
            for (std::size_t i = 0; i < want.size(); ++i) {
                const long double ex = f.fx[i] - want[i].x;
                const long double ey = f.fy[i] - want[i].y;
                err2 += ex * ex + ey * ey;
                norm2 += want[i].x * want[i].x + want[i].y * want[i].y;
                CHECK(static_cast<double>(std::hypot(ex, ey) / scale[i]) <= per_node);
            }
            CHECK(static_cast<double>(std::sqrt(err2 / norm2)) <= 5e-3);
        }
    }
    const auto inst = oracle::random_instance(10, 1);
    CHECK_THROWS_AS(repulsive_forces(inst.state, inst.bodies, PhysicsOptions{}, -0.1), ValidationError);
}

TEST_CASE("far cluster: quadrupole expansion beats a point mass") {
    // Two bodies 20 px apart seen from 1000 px away; the tree must approximate them.
    auto inst = oracle::random_instance(3, 9);
    inst.state.x = {0.0, 1000.0, 1000.0};
    inst.state.y = {0.0, -10.0, 10.0};
    inst.bodies.radius = {0.0, 0.0, 0.0};
    const PhysicsOptions ph;
    const ForceField f = repulsive_forces(inst.state, inst.bodies, ph, 0.5);
    const auto want = oracle::pairwise_repulsion(inst.state, inst.bodies, ph);
    const double point_mass = 2.0 * 80000.0 / (1000.0 * 1000.0);
    const double monopole_error = std::fabs(point_mass - static_cast<double>(-want[0].x));
    CHECK(monopole_error > 1e-5);
    CHECK(std::fabs(f.fx[0] - want[0].x) < 1e-3 * monopole_error);
    CHECK(std::fabs(f.fy[0] - want[0].y) < 1e-12);
}

TEST_CASE("coincident nodes get finite, opposite forces") {
    for (const auto& ph : all_solvers()) {
        for (double theta : {0.0, 0.5}) {
            auto inst = oracle::random_instance(2, 5);
            inst.state.x = {4.0, 4.0};
            inst.state.y = {-2.0, -2.0};
            const ForceField f = repulsive_forces(inst.state, inst.bodies, ph, theta);
            CHECK(std::isfinite(f.fx[0]));
            CHECK(std::isfinite(f.fy[0]));
            CHECK(std::hypot(f.fx[0], f.fy[0]) > 0.0);
            CHECK(f.fx[0] == -f.fx[1]);
            CHECK(f.fy[0] == -f.fy[1]);
        }
    }
}

TEST_CASE("repulsion cutoff at nodeDistance") {
    auto inst = oracle::random_instance(2, 5);
    inst.state.x = {0.0, 100.0};
    inst.state.y = {0.0, 0.0};
    const ForceField f = repulsive_forces(inst.state, inst.bodies, with_solver(RepulsionParams{}), 0.0);
    CHECK(f.fx[0] == 0.0);
    CHECK(f.fx[1] == 0.0);
    inst.state.x[1] = 50.0;
    const ForceField g = repulsive_forces(inst.state, inst.bodies, with_solver(RepulsionParams{}), 0.0);
    CHECK(g.fx[0] == doctest::Approx(-0.025));
    CHECK(g.fx[1] == doctest::Approx(0.025));
}

TEST_CASE("spring forces") {
    Network net = path_network(2);
    LayoutState s(2);
    s.x = {0.0, 250.0};
    const PhysicsOptions ph;
    ForceField f = spring_forces(net, s, ph);
    CHECK(f.fx[0] == 0.0);
    CHECK(f.fx[1] == 0.0);

    s.x = {0.0, 500.0};
    f = spring_forces(net, s, ph);
    CHECK(f.fx[0] == doctest::Approx(0.25));
    CHECK(f.fx[1] == doctest::Approx(-0.25));
    CHECK(f.fy[0] == 0.0);

    s.x = {0.0, 100.0};
    f = spring_forces(net, s, ph);
    CHECK(f.fx[0] < 0.0);
    CHECK(f.fx[1] > 0.0);

    Network loop;
    loop.add_node(1);
    loop.add_edge(1, 1);
    LayoutState one(1);
    one.x = {3.0};
    f = spring_forces(loop, one, ph);
    CHECK(f.fx[0] == 0.0);
    CHECK(f.fy[0] == 0.0);

    s.x = {7.0, 7.0};
    s.y = {1.0, 1.0};
    f = spring_forces(net, s, ph);
    CHECK(f.fx[0] == 0.0);

    // Weighted edges pull no harder.
    Network weighted = path_network(2);
    weighted.set_edge_attrs(0, EdgeAttrs::weighted(50));
    s.x = {0.0, 500.0};
    s.y = {0.0, 0.0};
    CHECK(spring_forces(weighted, s, ph).fx == spring_forces(net, s, ph).fx);
}

TEST_CASE("spring forces match the oracle") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Network net = random_network(seed, 30, 60);
        const LayoutState s = initial_positions(net, seed);
        const PhysicsOptions ph = with_solver(RepulsionParams{});
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& e : net.edges()) {
            edges.emplace_back(net.index_of(e.from), net.index_of(e.to));
        }
        const auto want = oracle::springs(s, edges, 0.05L, 200.0L);
        const ForceField got = spring_forces(net, s, ph);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(std::fabs(got.fx[i] - want[i].x) <= 1e-9 * (1.0 + std::fabs(want[i].x)));
            CHECK(std::fabs(got.fy[i] - want[i].y) <= 1e-9 * (1.0 + std::fabs(want[i].y)));
        }
    }
}

TEST_CASE("central gravity") {
    LayoutState s(3);
    s.x = {0.0, 3.0, -6.0};
    s.y = {0.0, 4.0, 8.0};
    Bodies b{{1.0, 1.0, 2.0}, {10.0, 10.0, 10.0}, {0.0, 0.0, 0.0}};
    const ForceField f = central_gravity_forces(s, b, PhysicsOptions{});
    CHECK(f.fx[0] == 0.0);
    CHECK(f.fy[0] == 0.0);
    CHECK(std::hypot(f.fx[1], f.fy[1]) == doctest::Approx(1.5));
    CHECK(f.fx[1] < 0.0);
    CHECK(f.fy[1] < 0.0);
    CHECK(std::hypot(f.fx[2], f.fy[2]) == doctest::Approx(6.0));

    PhysicsOptions off = with_solver(BarnesHutParams{.central_gravity = 0.0});
    const ForceField z = central_gravity_forces(s, b, off);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(z.fx[i] == 0.0);
        CHECK(z.fy[i] == 0.0);
    }
}

TEST_CASE("step") {
    PhysicsOptions ph = with_solver(RepulsionParams{.damping = 0.19});
    ph.timestep = 0.34;
    ph.max_velocity = 45;
    Bodies b{{1.0}, {10.0}, {0.0}};

    LayoutState s(1);
    ForceField zero(1);
    CHECK(step(s, zero, b, ph) == 0.0);
    CHECK(s.x[0] == 0.0);
    CHECK(s.iteration == 1);

    s.vx[0] = 10.0;
    s.x[0] = 1.0;
    step(s, zero, b, ph);
    CHECK(s.vx[0] == doctest::Approx(8.1).epsilon(1e-12));
    CHECK(s.x[0] - 1.0 == doctest::Approx(2.754).epsilon(1e-12));
    CHECK(s.vy[0] == 0.0);

    // |v + a dt| = 2 maxVelocity, no damping: clamped to maxVelocity.
    PhysicsOptions clamp = with_solver(RepulsionParams{.damping = 0.0});
    clamp.max_velocity = 10.0;
    clamp.timestep = 1.0;
    LayoutState c(1);
    ForceField push(1);
    push.fx[0] = 12.0;
    push.fy[0] = 16.0;
    const double speed = step(c, push, b, clamp);
    CHECK(speed == doctest::Approx(10.0));
    CHECK(c.vx[0] == doctest::Approx(6.0));
    CHECK(c.vy[0] == doctest::Approx(8.0));

    LayoutState pinned(2);
    pinned.pinned[0] = 1;
    pinned.y_locked[1] = 1;
    pinned.x = {5.0, 6.0};
    pinned.y = {7.0, 8.0};
    ForceField f(2);
    f.fx = {100.0, 1.0};
    f.fy = {100.0, 1.0};
    Bodies two{{1.0, 1.0}, {10.0, 10.0}, {0.0, 0.0}};
    step(pinned, f, two, ph);
    CHECK(pinned.x[0] == 5.0);
    CHECK(pinned.y[0] == 7.0);
    CHECK(pinned.x[1] != 6.0);
    CHECK(pinned.y[1] == 8.0);
    CHECK(pinned.vy[1] == 0.0);

    Network net;
    net.add_node("a");
    net.add_node("b");
    f.fx[1] = NAN;
    try {
        step(pinned, f, two, ph, &net);
        FAIL("expected NumericError");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("node b") != std::string::npos);
    }
}

TEST_CASE("stabilize edge cases") {
    const LayoutResult empty = stabilize(Network{}, Options{}, 0);
    CHECK(empty.report.converged);
    CHECK(empty.report.iterations_used == 0);

    Options off;
    off.physics.enabled = false;
    const Network net = path_network(5);
    const LayoutResult r = stabilize(net, off, 4);
    CHECK(r.report.converged);
    CHECK(r.state == initial_positions(net, off.physics, 4));

    Options capped;
    capped.physics.stabilization.max_iterations = 3;
    const LayoutResult c = stabilize(random_network(1, 40, 80), capped, 0);
    CHECK(c.report.iterations_used == 3);
    CHECK(c.report.converged == (c.report.final_max_speed < capped.physics.min_velocity));
}

TEST_CASE("two-node spring system rests at the spring length") {
    for (const double rest : {250.0, 80.0}) {
        Options opts;
        opts.physics.solver_params = BarnesHutParams{.gravity = 0.0, .central_gravity = 0.0, .spring_length = rest,
                                                     .spring_strength = 0.05};
        opts.physics.stabilization.max_iterations = 5000;
        opts.physics.min_velocity = 1e-4;
        const Network net = path_network(2);
        const LayoutResult r = stabilize(net, opts, 11);
        CHECK(r.report.converged);
        const double d = std::hypot(r.state.x[1] - r.state.x[0], r.state.y[1] - r.state.y[0]);
        CHECK(std::fabs(d - rest) <= 0.01 * rest);
    }
}

TEST_CASE("property: repulsion plus springs conserve momentum") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        for (auto ph : all_solvers()) {
            std::visit([](auto& p) { p.central_gravity = 0.0; }, ph.solver_params);
            const Network net = random_network(seed, 50, 90);
            const Bodies bodies = bodies_of(net);
            const LayoutState s = initial_positions(net, ph, seed);
            const ForceField f = total_forces(net, s, bodies, ph, 0.0);
            long double sx = 0, sy = 0, total = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                sx += f.fx[i];
                sy += f.fy[i];
                total += std::hypot(f.fx[i], f.fy[i]);
            }
            CHECK(std::hypot(sx, sy) <= 1e-9 * total);
        }
    }
}

TEST_CASE("property: translation leaves non-central forces unchanged") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (const auto& ph : all_solvers()) {
            const Network net = random_network(seed, 40, 70);
            const Bodies bodies = bodies_of(net);
            LayoutState s = initial_positions(net, ph, seed);
            auto forces = [&](const LayoutState& st) {
                ForceField f = repulsive_forces(st, bodies, ph, 0.0);
                f.add(spring_forces(net, st, ph));
                return f;
            };
            const ForceField before = forces(s);
            for (std::size_t i = 0; i < s.size(); ++i) {
                s.x[i] += 317.25;
                s.y[i] -= 88.5;
            }
            const ForceField after = forces(s);
            for (std::size_t i = 0; i < s.size(); ++i) {
                CHECK(std::fabs(after.fx[i] - before.fx[i]) <= 1e-12 * std::max(1.0, std::fabs(before.fx[i])));
                CHECK(std::fabs(after.fy[i] - before.fy[i]) <= 1e-12 * std::max(1.0, std::fabs(before.fy[i])));
            }
        }
    }
}

TEST_CASE("property: stabilize is deterministic and keeps pinned nodes") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        Network net = random_network(seed, 30, 45);
        net.add_node(0, std::nullopt, NodeAttrs{.x = 12.5, .y = -40.0});
        net.add_node(7, std::nullopt, NodeAttrs{.x = -300.0, .y = 2.0});
        for (const auto& ph : all_solvers()) {
            Options opts;
            opts.physics = ph;
            opts.physics.stabilization.max_iterations = 200;
            const LayoutResult a = stabilize(net, opts, seed);
            const LayoutResult b = stabilize(net, opts, seed);
            CHECK(a.state == b.state);
            CHECK(a.report.iterations_used == b.report.iterations_used);
            CHECK(a.report.final_max_speed == b.report.final_max_speed);
            CHECK(a.report.converged == (a.report.final_max_speed < opts.physics.min_velocity));
            CHECK(a.state.x[0] == 12.5);
            CHECK(a.state.y[0] == -40.0);
            CHECK(a.state.x[7] == -300.0);
            CHECK(a.state.y[7] == 2.0);
        }
    }
}

TEST_CASE("stabilize: exact sums up to the limit, tree above") {
    CHECK(stabilization_theta(0) == 0.0);
    CHECK(stabilization_theta(kExactSummationLimit) == 0.0);
    CHECK(stabilization_theta(kExactSummationLimit + 1) == kDefaultTheta);

    const Network net = random_network(3, 60, 100);
    Options opts;
    opts.physics.stabilization.max_iterations = 50;
    CHECK(stabilize(net, opts, 1).state == stabilize(net, opts, 1, 0.0).state);
    CHECK_FALSE(stabilize(net, opts, 1).state == stabilize(net, opts, 1, 0.5).state);
}

TEST_CASE("GoT sample converges under barnesHut defaults") {
    const Network net = ingest::build_got_network(
        ingest::parse_edge_csv(oracle::read_file(oracle::data_path("got_sample.csv"))), ingest::got_style());
    const LayoutResult a = stabilize(net, net.options(), 0);
    CHECK(a.report.converged);
    CHECK(a.report.iterations_used <= 1000);
    const LayoutResult b = stabilize(net, net.options(), 0);
    CHECK(positions_document(net, a).dump() == positions_document(net, b).dump());
}

TEST_CASE("positions document round-trip") {
    const Network net = path_network(3);
    const LayoutResult r = stabilize(net, Options{}, 2);
    const ordered_json doc = positions_document(net, r);
    const PositionsDocument back = parse_positions_document(doc.dump());
    CHECK(back.converged == r.report.converged);
    CHECK(back.iterations == r.report.iterations_used);
    REQUIRE(back.positions.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.positions[i].first == net.nodes()[i].id);
        CHECK(back.positions[i].second.x == r.state.x[i]);
        CHECK(back.positions[i].second.y == r.state.y[i]);
    }
    CHECK_THROWS_AS(parse_positions_document("{"), ParseError);
    CHECK_THROWS_AS(parse_positions_document("{\"positions\":[{\"id\":1}]}"), ValidationError);
}
