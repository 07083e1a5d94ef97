#include "netvis/quadtree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kernels/pair_terms.hpp"
#include "netvis/errors.hpp"

namespace netvis::layout {

bool QuadTree::Cell::contains(double px, double py) const {
    const double half = side / 2.0;
    return std::fabs(px - center_x) <= half && std::fabs(py - center_y) <= half;
}

QuadTree QuadTree::build(const LayoutState& state, std::span<const double> mass) {
    const std::vector<double> radius(state.size(), 0.0);
    return build(state.x, state.y, mass, radius);
}

QuadTree QuadTree::build(std::span<const double> x, std::span<const double> y, std::span<const double> mass,
                         std::span<const double> radius) {
    const std::size_t n = x.size();
    if (n == 0) {
        throw ValidationError("quadtree needs at least one node");
    }
    if (y.size() != n || mass.size() != n || radius.size() != n) {
        throw ValidationError("quadtree inputs are not index-aligned");
    }
    double lo_x = x[0], hi_x = x[0], lo_y = y[0], hi_y = y[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
            throw NumericError("non-finite position for node index " + std::to_string(i));
        }
        lo_x = std::min(lo_x, x[i]);
        hi_x = std::max(hi_x, x[i]);
        lo_y = std::min(lo_y, y[i]);
        hi_y = std::max(hi_y, y[i]);
    }

    QuadTree tree;
    tree.x_.assign(x.begin(), x.end());
    tree.y_.assign(y.begin(), y.end());
    tree.mass_.assign(mass.begin(), mass.end());
    tree.radius_.assign(radius.begin(), radius.end());

    double side = std::max(hi_x - lo_x, hi_y - lo_y) * 1.1;
    if (!(side > 0.0)) {
        side = 1.0;
    }
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        idx[i] = static_cast<std::uint32_t>(i);
    }
    tree.cells_.reserve(2 * n);
    tree.items_.reserve(n);
    tree.build_cell((lo_x + hi_x) / 2.0, (lo_y + hi_y) / 2.0, side, idx, 0, n, 0);
    return tree;
}

std::int32_t QuadTree::build_cell(double cx, double cy, double side, std::vector<std::uint32_t>& idx,
                                  std::size_t begin, std::size_t end, int depth) {
    const auto self = static_cast<std::int32_t>(cells_.size());
    cells_.push_back(Cell{cx, cy, side});

    if (end - begin == 1 || depth == kMaxDepth) {
        double m = 0.0, mx = 0.0, my = 0.0, mr = 0.0;
        Cell& cell = cells_[static_cast<std::size_t>(self)];
        cell.first_item = static_cast<std::uint32_t>(items_.size());
        cell.item_count = static_cast<std::uint32_t>(end - begin);
        for (std::size_t k = begin; k < end; ++k) {
            const std::uint32_t i = idx[k];
            items_.push_back(i);
            m += mass_[i];
            mx += mass_[i] * x_[i];
            my += mass_[i] * y_[i];
            mr += mass_[i] * radius_[i];
            cell.max_radius = std::max(cell.max_radius, radius_[i]);
        }
        cell.mass = m;
        cell.com_x = m > 0.0 ? mx / m : cx;
        cell.com_y = m > 0.0 ? my / m : cy;
        cell.mean_radius = m > 0.0 ? mr / m : 0.0;
        for (std::size_t k = begin; k < end; ++k) {
            const std::uint32_t i = idx[k];
            const double sx = x_[i] - cell.com_x;
            const double sy = y_[i] - cell.com_y;
            cell.ixx += mass_[i] * sx * sx;
            cell.ixy += mass_[i] * sx * sy;
            cell.iyy += mass_[i] * sy * sy;
        }
        return self;
    }

    auto quadrant = [&](std::uint32_t i) {
        return (x_[i] >= cx ? 1 : 0) | (y_[i] >= cy ? 2 : 0);
    };
    // Stable split keeps the item order, and with it the summation order,
    // a pure function of the input.
    std::array<std::size_t, 5> bounds{};
    bounds[0] = begin;
    auto cursor = idx.begin() + static_cast<std::ptrdiff_t>(begin);
    const auto last = idx.begin() + static_cast<std::ptrdiff_t>(end);
    for (int q = 0; q < 4; ++q) {
        cursor = std::stable_partition(cursor, last, [&](std::uint32_t i) { return quadrant(i) == q; });
        bounds[static_cast<std::size_t>(q) + 1] = static_cast<std::size_t>(cursor - idx.begin());
    }

    const double quarter = side / 4.0;
    std::array<std::int32_t, 4> children{kNone, kNone, kNone, kNone};
    for (std::size_t q = 0; q < 4; ++q) {
        if (bounds[q] == bounds[q + 1]) {
            continue;
        }
        const double ccx = (q & 1) ? cx + quarter : cx - quarter;
        const double ccy = (q & 2) ? cy + quarter : cy - quarter;
        children[q] = build_cell(ccx, ccy, side / 2.0, idx, bounds[q], bounds[q + 1], depth + 1);
    }

    double m = 0.0, mx = 0.0, my = 0.0, mr = 0.0;
    for (std::int32_t c : children) {
        if (c == kNone) {
            continue;
        }
        const Cell& child = cells_[static_cast<std::size_t>(c)];
        m += child.mass;
        mx += child.mass * child.com_x;
        my += child.mass * child.com_y;
        mr += child.mass * child.mean_radius;
    }
    double max_radius = 0.0;
    for (std::int32_t c : children) {
        if (c != kNone) {
            max_radius = std::max(max_radius, cells_[static_cast<std::size_t>(c)].max_radius);
        }
    }
    Cell& cell = cells_[static_cast<std::size_t>(self)];
    cell.max_radius = max_radius;
    cell.children = children;
    cell.mass = m;
    cell.com_x = m > 0.0 ? mx / m : cx;
    cell.com_y = m > 0.0 ? my / m : cy;
    cell.mean_radius = m > 0.0 ? mr / m : 0.0;
    // Parallel-axis shift of each child's moments to this cell's center of mass.
    for (std::int32_t c : children) {
        if (c == kNone) {
            continue;
        }
        const Cell& child = cells_[static_cast<std::size_t>(c)];
        const double sx = child.com_x - cell.com_x;
        const double sy = child.com_y - cell.com_y;
        cell.ixx += child.ixx + child.mass * sx * sx;
        cell.ixy += child.ixy + child.mass * sx * sy;
        cell.iyy += child.iyy + child.mass * sy * sy;
    }
    return self;
}

std::span<const std::uint32_t> QuadTree::items(const Cell& cell) const {
    return std::span<const std::uint32_t>(items_).subspan(cell.first_item, cell.item_count);
}

Vec2 QuadTree::force_on(std::size_t i, double strength, double overlap, double theta) const {
    const kernels::Bodies2D bodies{x_.data(), y_.data(), mass_.data(), radius_.data(), nullptr, x_.size()};
    const double px = x_[i];
    const double py = y_[i];
    double fx = 0.0;
    double fy = 0.0;

    std::vector<std::int32_t> stack;
    stack.reserve(64);
    stack.push_back(0);
    while (!stack.empty()) {
        const Cell& cell = cells_[static_cast<std::size_t>(stack.back())];
        stack.pop_back();
        if (cell.is_leaf()) {
            for (std::uint32_t j : items(cell)) {
                if (j == i) {
                    continue;
                }
                double cx, cy;
                kernels::detail::inverse_square_term(bodies, i, j, strength, overlap, cx, cy);
                fx += cx;
                fy += cy;
            }
            continue;
        }
        const double dx = px - cell.com_x;
        const double dy = py - cell.com_y;
        const double d = std::sqrt(dx * dx + dy * dy);
        // Distance for the opening test: shortened by how far the center of
        // mass sits from the cell center and by the largest overlap shrink.
        const double reach = d - std::hypot(cell.com_x - cell.center_x, cell.com_y - cell.center_y) -
                             overlap * (radius_[i] + cell.max_radius);
        if (theta > 0.0 && d >= kEpsilon && reach > 0.0 && cell.side / reach < theta && !cell.contains(px, py)) {
            double dp = d - overlap * (radius_[i] + cell.mean_radius);
            dp = dp > kEpsilon ? dp : kEpsilon;
            const double f = ((strength * mass_[i]) * cell.mass) / (dp * dp);
            fx += f * (dx / d);
            fy += f * (dy / d);
            // Quadrupole term of sum m_j / |r - r_j| around the center of mass,
            // with the traceless tensor Q = 3I - tr(I).
            const double qxx = 2.0 * cell.ixx - cell.iyy;
            const double qyy = 2.0 * cell.iyy - cell.ixx;
            const double qxy = 3.0 * cell.ixy;
            const double d2 = d * d;
            const double d5 = d2 * d2 * d;
            const double qrx = qxx * dx + qxy * dy;
            const double qry = qxy * dx + qyy * dy;
            const double rqr = dx * qrx + dy * qry;
            const double g = strength * mass_[i];
            fx += g * (2.5 * rqr * dx / (d5 * d2) - qrx / d5);
            fy += g * (2.5 * rqr * dy / (d5 * d2) - qry / d5);
            continue;
        }
        for (auto it = cell.children.rbegin(); it != cell.children.rend(); ++it) {
            if (*it != kNone) {
                stack.push_back(*it);
            }
        }
    }
    return {fx, fy};
}

}  // namespace netvis::layout
