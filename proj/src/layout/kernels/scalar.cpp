#include <array>
#include <cmath>

#include "netvis/kernels.hpp"
#include "pair_terms.hpp"

namespace netvis::layout::kernels {

void coincident_direction(std::size_t i, std::size_t j, double& ux, double& uy) {
    static constexpr double kDiag = 0.70710678118654752440;
    static constexpr std::array<std::array<double, 2>, 8> kDirections = {{
        {1.0, 0.0},
        {kDiag, kDiag},
        {0.0, 1.0},
        {-kDiag, kDiag},
        {-1.0, 0.0},
        {-kDiag, -kDiag},
        {0.0, -1.0},
        {kDiag, -kDiag},
    }};
    const std::size_t lo = i < j ? i : j;
    const std::size_t hi = i < j ? j : i;
    const auto& dir = kDirections[(lo * 7 + hi * 13) % kDirections.size()];
    const double sign = i == lo ? 1.0 : -1.0;
    ux = sign * dir[0];
    uy = sign * dir[1];
}

namespace {

template <class Term>
void pair_sum(const Bodies2D& b, Forces2D out, Term term) {
    for (std::size_t i = 0; i < b.n; ++i) {
        double ax = out.fx[i];
        double ay = out.fy[i];
        for (std::size_t j = 0; j < b.n; ++j) {
            if (j == i) {
                continue;
            }
            double cx, cy;
            term(i, j, cx, cy);
            ax += cx;
            ay += cy;
        }
        out.fx[i] = ax;
        out.fy[i] = ay;
    }
}

void inverse_square(const Bodies2D& b, double strength, double overlap, Forces2D out) {
    pair_sum(b, out, [&](std::size_t i, std::size_t j, double& cx, double& cy) {
        detail::inverse_square_term(b, i, j, strength, overlap, cx, cy);
    });
}

void linear_cutoff(const Bodies2D& b, double k, double distance, Forces2D out) {
    pair_sum(b, out, [&](std::size_t i, std::size_t j, double& cx, double& cy) {
        detail::linear_cutoff_term(b, i, j, k, distance, cx, cy);
    });
}

void degree_weighted(const Bodies2D& b, double strength, Forces2D out) {
    pair_sum(b, out, [&](std::size_t i, std::size_t j, double& cx, double& cy) {
        detail::degree_weighted_term(b, i, j, strength, cx, cy);
    });
}

void central_gravity(const Bodies2D& b, double cg, Forces2D out) {
    for (std::size_t i = 0; i < b.n; ++i) {
        const double g = cg * b.mass[i];
        out.fx[i] = out.fx[i] - g * b.x[i];
        out.fy[i] = out.fy[i] - g * b.y[i];
    }
}

double integrate(const IntegrateArgs& a) {
    const double keep = 1.0 - a.damping;
    double max_speed = 0.0;
    for (std::size_t i = 0; i < a.n; ++i) {
        if (a.pinned[i]) {
            a.vx[i] = 0.0;
            a.vy[i] = 0.0;
            continue;
        }
        double vx = (a.vx[i] + (a.fx[i] / a.mass[i]) * a.timestep) * keep;
        double vy = (a.vy[i] + (a.fy[i] / a.mass[i]) * a.timestep) * keep;
        if (a.y_locked[i]) {
            vy = 0.0;
        }
        double speed = std::sqrt(vx * vx + vy * vy);
        if (speed > a.max_velocity) {
            const double s = a.max_velocity / speed;
            vx = vx * s;
            vy = vy * s;
            speed = a.max_velocity;
        }
        a.vx[i] = vx;
        a.vy[i] = vy;
        a.x[i] = a.x[i] + vx * a.timestep;
        a.y[i] = a.y[i] + vy * a.timestep;
        if (speed > max_speed) {
            max_speed = speed;
        }
    }
    return max_speed;
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", inverse_square, linear_cutoff, degree_weighted, central_gravity,
                                   integrate};
    return table;
}

}  // namespace netvis::layout::kernels
