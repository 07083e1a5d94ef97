#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "netvis/layout.hpp"

namespace netvis::layout {

/// Barnes-Hut spatial tree over a 2-D point set. Cells are squares; each
/// internal cell stores the total mass, center of mass and mass-weighted
/// mean radius of everything below it.
class QuadTree {
public:
    static constexpr std::int32_t kNone = -1;
    /// Cells at this depth stop splitting and hold every remaining point,
    /// which only happens for (near-)coincident nodes.
    static constexpr int kMaxDepth = 48;

    struct Cell {
        double center_x = 0.0;
        double center_y = 0.0;
        double side = 0.0;
        double mass = 0.0;
        double com_x = 0.0;
        double com_y = 0.0;
        double mean_radius = 0.0;
        double max_radius = 0.0;
        /// Second mass moments about the center of mass.
        double ixx = 0.0;
        double ixy = 0.0;
        double iyy = 0.0;
        /// Quadrant order: SW, SE, NW, NE.
        std::array<std::int32_t, 4> children{kNone, kNone, kNone, kNone};
        /// Slice of leaf_items(); empty for internal cells.
        std::uint32_t first_item = 0;
        std::uint32_t item_count = 0;

        bool is_leaf() const noexcept { return item_count > 0; }
        bool contains(double px, double py) const;
    };

    /// Bounds are the smallest square enclosing every point, grown by 10%
    /// (a 1 px square for a single point). Throws NumericError on a
    /// non-finite coordinate and ValidationError on an empty set.
    static QuadTree build(std::span<const double> x, std::span<const double> y, std::span<const double> mass,
                          std::span<const double> radius);
    static QuadTree build(const LayoutState& state, std::span<const double> mass);

    const Cell& root() const { return cells_.front(); }
    const std::vector<Cell>& cells() const noexcept { return cells_; }
    std::span<const std::uint32_t> items(const Cell& cell) const;

    /// Inverse-square repulsion on point `i`; `strength` is -gravity (so
    /// positive repels) and `overlap` shrinks distances by the radii.
    /// A cell that does not contain `i` is approximated when side / d < theta.
    /// Here d is the distance to the cell's center of mass, less that center's
    /// offset from the cell center and less overlap * (r_i + largest radius
    /// in the cell). The approximation is the expansion about the center of
    /// mass up to the quadrupole term.
    Vec2 force_on(std::size_t i, double strength, double overlap, double theta) const;

private:
    std::int32_t build_cell(double cx, double cy, double side, std::vector<std::uint32_t>& idx, std::size_t begin,
                            std::size_t end, int depth);

    std::vector<Cell> cells_;
    std::vector<std::uint32_t> items_;
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> mass_;
    std::vector<double> radius_;
};

}  // namespace netvis::layout
