#pragma once

#include <cmath>
#include <cstddef>

#include "netvis/kernels.hpp"
#include "netvis/layout.hpp"

// Single-pair force terms. The scalar kernels are loops over these, and the
// SIMD kernels call them for the rare lanes that hit the coincident-node
// branch, so both paths share one definition of every operation order.
// Internal linkage keeps the copy compiled with AVX2 flags out of the
// scalar translation units.

namespace netvis::layout::kernels::detail {
namespace {

inline void pair_direction(const Bodies2D& b, std::size_t i, std::size_t j, double& d, double& ux, double& uy) {
    const double dx = b.x[i] - b.x[j];
    const double dy = b.y[i] - b.y[j];
    d = std::sqrt(dx * dx + dy * dy);
    if (d < kEpsilon) {
        coincident_direction(i, j, ux, uy);
    } else {
        ux = dx / d;
        uy = dy / d;
    }
}

inline void inverse_square_term(const Bodies2D& b, std::size_t i, std::size_t j, double strength, double overlap,
                                double& cx, double& cy) {
    double d, ux, uy;
    pair_direction(b, i, j, d, ux, uy);
    double dp = d - overlap * (b.radius[i] + b.radius[j]);
    dp = dp > kEpsilon ? dp : kEpsilon;
    const double f = ((strength * b.mass[i]) * b.mass[j]) / (dp * dp);
    cx = f * ux;
    cy = f * uy;
}

inline void linear_cutoff_term(const Bodies2D& b, std::size_t i, std::size_t j, double k, double distance,
                               double& cx, double& cy) {
    double d, ux, uy;
    pair_direction(b, i, j, d, ux, uy);
    const double f = d < distance ? (k * (distance - d)) / distance : 0.0;
    cx = f * ux;
    cy = f * uy;
}

inline void degree_weighted_term(const Bodies2D& b, std::size_t i, std::size_t j, double strength, double& cx,
                                 double& cy) {
    double d, ux, uy;
    pair_direction(b, i, j, d, ux, uy);
    const double dd = d > kEpsilon ? d : kEpsilon;
    const double f = ((strength * (b.degree[i] + 1.0)) * (b.degree[j] + 1.0)) / dd;
    cx = f * ux;
    cy = f * uy;
}

}  // namespace
}  // namespace netvis::layout::kernels::detail
