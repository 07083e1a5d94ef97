#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cstdlib>
#include <random>
#include <string_view>
#include <vector>

#include "netvis/kernels.hpp"

using namespace netvis::layout::kernels;

namespace {

struct Cloud {
    std::vector<double> x, y, mass, radius, degree;

    Bodies2D view() const { return {x.data(), y.data(), mass.data(), radius.data(), degree.data(), x.size()}; }
};

// Mixed scales, exact duplicates and near-duplicates so the epsilon and
// coincident branches are hit in every lane position.
Cloud make_cloud(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(-400.0, 400.0);
    std::uniform_real_distribution<double> rad(1.0, 40.0);
    std::uniform_real_distribution<double> mass(0.5, 2.0);
    std::uniform_int_distribution<int> deg(0, 9);
    Cloud c;
    for (std::size_t i = 0; i < n; ++i) {
        double px = pos(rng), py = pos(rng);
        if (i > 0 && rng() % 5 == 0) {
            px = c.x[i - 1];
            py = c.y[i - 1];
        } else if (i > 0 && rng() % 7 == 0) {
            px = c.x[i - 1] + 0.03;
            py = c.y[i - 1] - 0.02;
        }
        c.x.push_back(px);
        c.y.push_back(py);
        c.mass.push_back(mass(rng));
        c.radius.push_back(rad(rng));
        c.degree.push_back(deg(rng));
    }
    return c;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) {
            return false;
        }
    }
    return true;
}

template <class Fn>
void compare_pair_kernel(const KernelTable& wide, Fn&& call) {
    for (std::size_t n = 0; n <= 37; ++n) {
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            const Cloud c = make_cloud(n, seed * 100 + n);
            // Nonzero starting values check that kernels accumulate.
            std::vector<double> sx(n, 0.25), sy(n, -0.5), wx(n, 0.25), wy(n, -0.5);
            call(scalar_kernels(), c.view(), Forces2D{sx.data(), sy.data()});
            call(wide, c.view(), Forces2D{wx.data(), wy.data()});
            INFO("n = " << n << ", seed = " << seed);
            CHECK(same_bits(sx, wx));
            CHECK(same_bits(sy, wy));
        }
    }
}

}  // namespace

TEST_CASE("dispatch honours NETVIS_KERNELS") {
    const char* forced = std::getenv("NETVIS_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") {
        CHECK(active_kernels().name == scalar_kernels().name);
    } else if (avx2_kernels() != nullptr) {
        CHECK(active_kernels().name == avx2_kernels()->name);
    } else {
        CHECK(active_kernels().name == scalar_kernels().name);
    }
}

TEST_CASE("coincident direction is unit length and antisymmetric") {
    for (std::size_t i = 0; i < 20; ++i) {
        for (std::size_t j = 0; j < 20; ++j) {
            if (i == j) {
                continue;
            }
            double ax, ay, bx, by;
            coincident_direction(i, j, ax, ay);
            coincident_direction(j, i, bx, by);
            CHECK(ax * ax + ay * ay == doctest::Approx(1.0));
            CHECK(ax == -bx);
            CHECK(ay == -by);
        }
    }
}

TEST_CASE("AVX2 kernels are bitwise equal to scalar") {
    const KernelTable* wide = avx2_kernels();
    if (wide == nullptr) {
        MESSAGE("AVX2 unavailable on this CPU; equivalence not exercised");
        return;
    }

    SUBCASE("inverse square") {
        for (const double overlap : {0.0, 0.5, 1.0}) {
            compare_pair_kernel(*wide, [&](const KernelTable& k, const Bodies2D& b, Forces2D out) {
                k.inverse_square(b, 80000.0, overlap, out);
            });
        }
    }
    SUBCASE("linear cutoff") {
        for (const double distance : {50.0, 120.0, 1000.0}) {
            compare_pair_kernel(*wide, [&](const KernelTable& k, const Bodies2D& b, Forces2D out) {
                k.linear_cutoff(b, 0.05, distance, out);
            });
        }
    }
    SUBCASE("degree weighted") {
        compare_pair_kernel(*wide, [&](const KernelTable& k, const Bodies2D& b, Forces2D out) {
            k.degree_weighted(b, 50.0, out);
        });
    }
    SUBCASE("central gravity") {
        compare_pair_kernel(*wide, [&](const KernelTable& k, const Bodies2D& b, Forces2D out) {
            k.central_gravity(b, 0.3, out);
        });
    }
    SUBCASE("integrate") {
        for (std::size_t n = 0; n <= 37; ++n) {
            for (const double max_velocity : {0.5, 50.0}) {
                std::mt19937_64 rng(n * 31 + static_cast<std::uint64_t>(max_velocity));
                std::uniform_real_distribution<double> u(-60.0, 60.0);
                std::vector<double> x(n), y(n), vx(n), vy(n), fx(n), fy(n), mass(n);
                std::vector<std::uint8_t> pinned(n), locked(n);
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] = u(rng);
                    y[i] = u(rng);
                    vx[i] = u(rng);
                    vy[i] = u(rng);
                    fx[i] = u(rng) * 10.0;
                    fy[i] = u(rng) * 10.0;
                    mass[i] = 1.0 + static_cast<double>(i % 3);
                    pinned[i] = rng() % 4 == 0;
                    locked[i] = rng() % 3 == 0;
                }
                auto sx = x, sy = y, svx = vx, svy = vy;
                auto wx = x, wy = y, wvx = vx, wvy = vy;
                const IntegrateArgs a{sx.data(), sy.data(), svx.data(), svy.data(), fx.data(), fy.data(),
                                      mass.data(), pinned.data(), locked.data(), n, 0.5, 0.09, max_velocity};
                const IntegrateArgs b{wx.data(), wy.data(), wvx.data(), wvy.data(), fx.data(), fy.data(),
                                      mass.data(), pinned.data(), locked.data(), n, 0.5, 0.09, max_velocity};
                const double s_speed = scalar_kernels().integrate(a);
                const double w_speed = wide->integrate(b);
                INFO("n = " << n << ", max_velocity = " << max_velocity);
                CHECK(std::bit_cast<std::uint64_t>(s_speed) == std::bit_cast<std::uint64_t>(w_speed));
                CHECK(same_bits(sx, wx));
                CHECK(same_bits(sy, wy));
                CHECK(same_bits(svx, wvx));
                CHECK(same_bits(svy, wvy));
                for (std::size_t i = 0; i < n; ++i) {
                    if (pinned[i]) {
                        CHECK(wx[i] == x[i]);
                        CHECK(wy[i] == y[i]);
                    } else if (locked[i]) {
                        CHECK(wy[i] == y[i]);
                    }
                }
            }
        }
    }
}
