// Built with -mavx2 (no FMA). Only reached through avx2_kernels(), which
// checks the CPU first.

#include "netvis/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cstring>

#include "pair_terms.hpp"

namespace netvis::layout::kernels {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d lane_indices(std::size_t i) {
    return _mm256_set_pd(static_cast<double>(i + 3), static_cast<double>(i + 2), static_cast<double>(i + 1),
                         static_cast<double>(i));
}

inline __m256d load_flags(const std::uint8_t* flags) {
    std::int32_t raw = 0;
    std::memcpy(&raw, flags, sizeof(raw));
    const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(raw));
    return _mm256_castsi256_pd(_mm256_cmpgt_epi64(wide, _mm256_setzero_si256()));
}

// Shared driver: lanes are four consecutive target nodes, j runs over all
// sources in order. `lane_force` returns the force magnitude per lane;
// `scalar_term` recomputes a single lane for the coincident branch.
template <class LaneForce, class ScalarTerm>
void pair_sum(const Bodies2D& b, Forces2D out, LaneForce lane_force, ScalarTerm scalar_term) {
    const __m256d eps = _mm256_set1_pd(kEpsilon);
    std::size_t i = 0;
    for (; i + kLanes <= b.n; i += kLanes) {
        const __m256d xi = _mm256_loadu_pd(b.x + i);
        const __m256d yi = _mm256_loadu_pd(b.y + i);
        const __m256d idx = lane_indices(i);
        __m256d ax = _mm256_loadu_pd(out.fx + i);
        __m256d ay = _mm256_loadu_pd(out.fy + i);
        for (std::size_t j = 0; j < b.n; ++j) {
            const __m256d dx = _mm256_sub_pd(xi, _mm256_set1_pd(b.x[j]));
            const __m256d dy = _mm256_sub_pd(yi, _mm256_set1_pd(b.y[j]));
            const __m256d d = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
            const __m256d ux = _mm256_div_pd(dx, d);
            const __m256d uy = _mm256_div_pd(dy, d);
            const __m256d f = lane_force(i, j, d);
            __m256d cx = _mm256_mul_pd(f, ux);
            __m256d cy = _mm256_mul_pd(f, uy);

            const __m256d self = _mm256_cmp_pd(idx, _mm256_set1_pd(static_cast<double>(j)), _CMP_EQ_OQ);
            const __m256d near = _mm256_andnot_pd(self, _mm256_cmp_pd(d, eps, _CMP_LT_OQ));
            if (const int lanes = _mm256_movemask_pd(near); lanes != 0) {
                alignas(32) double lx[kLanes];
                alignas(32) double ly[kLanes];
                _mm256_store_pd(lx, cx);
                _mm256_store_pd(ly, cy);
                for (std::size_t l = 0; l < kLanes; ++l) {
                    if ((lanes >> l) & 1) {
                        scalar_term(i + l, j, lx[l], ly[l]);
                    }
                }
                cx = _mm256_load_pd(lx);
                cy = _mm256_load_pd(ly);
            }
            ax = _mm256_blendv_pd(_mm256_add_pd(ax, cx), ax, self);
            ay = _mm256_blendv_pd(_mm256_add_pd(ay, cy), ay, self);
        }
        _mm256_storeu_pd(out.fx + i, ax);
        _mm256_storeu_pd(out.fy + i, ay);
    }
    for (; i < b.n; ++i) {
        double ax = out.fx[i];
        double ay = out.fy[i];
        for (std::size_t j = 0; j < b.n; ++j) {
            if (j == i) {
                continue;
            }
            double cx, cy;
            scalar_term(i, j, cx, cy);
            ax += cx;
            ay += cy;
        }
        out.fx[i] = ax;
        out.fy[i] = ay;
    }
}

void inverse_square(const Bodies2D& b, double strength, double overlap, Forces2D out) {
    const __m256d eps = _mm256_set1_pd(kEpsilon);
    const __m256d s = _mm256_set1_pd(strength);
    const __m256d ov = _mm256_set1_pd(overlap);
    pair_sum(
        b, out,
        [&](std::size_t i, std::size_t j, __m256d d) {
            const __m256d ri = _mm256_loadu_pd(b.radius + i);
            const __m256d mi = _mm256_loadu_pd(b.mass + i);
            __m256d dp = _mm256_sub_pd(d, _mm256_mul_pd(ov, _mm256_add_pd(ri, _mm256_set1_pd(b.radius[j]))));
            dp = _mm256_max_pd(dp, eps);
            const __m256d num = _mm256_mul_pd(_mm256_mul_pd(s, mi), _mm256_set1_pd(b.mass[j]));
            return _mm256_div_pd(num, _mm256_mul_pd(dp, dp));
        },
        [&](std::size_t i, std::size_t j, double& cx, double& cy) {
            detail::inverse_square_term(b, i, j, strength, overlap, cx, cy);
        });
}

void linear_cutoff(const Bodies2D& b, double k, double distance, Forces2D out) {
    const __m256d kv = _mm256_set1_pd(k);
    const __m256d dist = _mm256_set1_pd(distance);
    pair_sum(
        b, out,
        [&](std::size_t, std::size_t, __m256d d) {
            const __m256d value = _mm256_div_pd(_mm256_mul_pd(kv, _mm256_sub_pd(dist, d)), dist);
            return _mm256_and_pd(_mm256_cmp_pd(d, dist, _CMP_LT_OQ), value);
        },
        [&](std::size_t i, std::size_t j, double& cx, double& cy) {
            detail::linear_cutoff_term(b, i, j, k, distance, cx, cy);
        });
}

void degree_weighted(const Bodies2D& b, double strength, Forces2D out) {
    const __m256d eps = _mm256_set1_pd(kEpsilon);
    const __m256d s = _mm256_set1_pd(strength);
    const __m256d one = _mm256_set1_pd(1.0);
    pair_sum(
        b, out,
        [&](std::size_t i, std::size_t j, __m256d d) {
            const __m256d di = _mm256_add_pd(_mm256_loadu_pd(b.degree + i), one);
            const __m256d dj = _mm256_set1_pd(b.degree[j] + 1.0);
            const __m256d num = _mm256_mul_pd(_mm256_mul_pd(s, di), dj);
            return _mm256_div_pd(num, _mm256_max_pd(d, eps));
        },
        [&](std::size_t i, std::size_t j, double& cx, double& cy) {
            detail::degree_weighted_term(b, i, j, strength, cx, cy);
        });
}

void central_gravity(const Bodies2D& b, double cg, Forces2D out) {
    const __m256d c = _mm256_set1_pd(cg);
    std::size_t i = 0;
    for (; i + kLanes <= b.n; i += kLanes) {
        const __m256d g = _mm256_mul_pd(c, _mm256_loadu_pd(b.mass + i));
        _mm256_storeu_pd(out.fx + i,
                         _mm256_sub_pd(_mm256_loadu_pd(out.fx + i), _mm256_mul_pd(g, _mm256_loadu_pd(b.x + i))));
        _mm256_storeu_pd(out.fy + i,
                         _mm256_sub_pd(_mm256_loadu_pd(out.fy + i), _mm256_mul_pd(g, _mm256_loadu_pd(b.y + i))));
    }
    for (; i < b.n; ++i) {
        const double g = cg * b.mass[i];
        out.fx[i] = out.fx[i] - g * b.x[i];
        out.fy[i] = out.fy[i] - g * b.y[i];
    }
}

double integrate(const IntegrateArgs& a) {
    const double keep = 1.0 - a.damping;
    const __m256d keep_v = _mm256_set1_pd(keep);
    const __m256d dt = _mm256_set1_pd(a.timestep);
    const __m256d vmax = _mm256_set1_pd(a.max_velocity);
    const __m256d zero = _mm256_setzero_pd();
    __m256d max_v = zero;
    std::size_t i = 0;
    for (; i + kLanes <= a.n; i += kLanes) {
        const __m256d pinned = load_flags(a.pinned + i);
        const __m256d locked = load_flags(a.y_locked + i);
        const __m256d m = _mm256_loadu_pd(a.mass + i);
        const __m256d x = _mm256_loadu_pd(a.x + i);
        const __m256d y = _mm256_loadu_pd(a.y + i);
        __m256d vx = _mm256_add_pd(_mm256_loadu_pd(a.vx + i), _mm256_mul_pd(_mm256_div_pd(_mm256_loadu_pd(a.fx + i), m), dt));
        __m256d vy = _mm256_add_pd(_mm256_loadu_pd(a.vy + i), _mm256_mul_pd(_mm256_div_pd(_mm256_loadu_pd(a.fy + i), m), dt));
        vx = _mm256_mul_pd(vx, keep_v);
        vy = _mm256_andnot_pd(locked, _mm256_mul_pd(vy, keep_v));
        __m256d speed = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(vx, vx), _mm256_mul_pd(vy, vy)));
        const __m256d over = _mm256_cmp_pd(speed, vmax, _CMP_GT_OQ);
        const __m256d s = _mm256_div_pd(vmax, speed);
        vx = _mm256_blendv_pd(vx, _mm256_mul_pd(vx, s), over);
        vy = _mm256_blendv_pd(vy, _mm256_mul_pd(vy, s), over);
        speed = _mm256_blendv_pd(speed, vmax, over);

        const __m256d nx = _mm256_add_pd(x, _mm256_mul_pd(vx, dt));
        const __m256d ny = _mm256_add_pd(y, _mm256_mul_pd(vy, dt));
        _mm256_storeu_pd(a.vx + i, _mm256_blendv_pd(vx, zero, pinned));
        _mm256_storeu_pd(a.vy + i, _mm256_blendv_pd(vy, zero, pinned));
        _mm256_storeu_pd(a.x + i, _mm256_blendv_pd(nx, x, pinned));
        _mm256_storeu_pd(a.y + i, _mm256_blendv_pd(ny, y, pinned));
        max_v = _mm256_max_pd(max_v, _mm256_andnot_pd(pinned, speed));
    }
    alignas(32) double lanes[kLanes];
    _mm256_store_pd(lanes, max_v);
    double max_speed = 0.0;
    for (double v : lanes) {
        if (v > max_speed) {
            max_speed = v;
        }
    }
    for (; i < a.n; ++i) {
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
            const double sc = a.max_velocity / speed;
            vx = vx * sc;
            vy = vy * sc;
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

const KernelTable* avx2_kernels() {
    static const bool supported = __builtin_cpu_supports("avx2");
    static const KernelTable table{"avx2", inverse_square, linear_cutoff, degree_weighted, central_gravity,
                                   integrate};
    return supported ? &table : nullptr;
}

}  // namespace netvis::layout::kernels

#else

namespace netvis::layout::kernels {

const KernelTable* avx2_kernels() {
    return nullptr;
}

}  // namespace netvis::layout::kernels

#endif
