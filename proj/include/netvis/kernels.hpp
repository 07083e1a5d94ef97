#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace netvis::layout::kernels {

// Data-parallel inner loops of the layout engine. Every variant must be
// bitwise identical to the scalar reference: pair sums are vectorised
// across target nodes so each lane accumulates sources in the same order,
// and no multiply-add is fused.

struct Bodies2D {
    const double* x;
    const double* y;
    const double* mass;
    const double* radius;
    const double* degree;
    std::size_t n;
};

struct Forces2D {
    double* fx;
    double* fy;
};

struct IntegrateArgs {
    double* x;
    double* y;
    double* vx;
    double* vy;
    const double* fx;
    const double* fy;
    const double* mass;
    const std::uint8_t* pinned;
    const std::uint8_t* y_locked;
    std::size_t n;
    double timestep;
    double damping;
    double max_velocity;
};

struct KernelTable {
    std::string_view name;

    /// f_i += strength * m_i * m_j / d'^2 along (p_i - p_j) / d, with
    /// d' = max(eps, d - overlap * (r_i + r_j)).
    void (*inverse_square)(const Bodies2D& bodies, double strength, double overlap, Forces2D out);

    /// f_i += k * (D - d) / D along (p_i - p_j) / d when d < D.
    void (*linear_cutoff)(const Bodies2D& bodies, double k, double distance, Forces2D out);

    /// f_i += strength * (deg_i + 1) * (deg_j + 1) / max(eps, d) along (p_i - p_j) / d.
    void (*degree_weighted)(const Bodies2D& bodies, double strength, Forces2D out);

    /// f_i -= cg * m_i * p_i.
    void (*central_gravity)(const Bodies2D& bodies, double cg, Forces2D out);

    /// Advances velocities and positions in place; returns the largest speed
    /// among movable nodes (0 if none).
    double (*integrate)(const IntegrateArgs& args);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();

/// Picks the widest supported variant once. NETVIS_KERNELS=scalar in the
/// environment forces the reference path.
const KernelTable& active_kernels();

/// Unit vector used to separate two (near-)coincident nodes; a fixed
/// function of the unordered pair, sign-flipped for the higher index.
void coincident_direction(std::size_t i, std::size_t j, double& ux, double& uy);

}  // namespace netvis::layout::kernels
