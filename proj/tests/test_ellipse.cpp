#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/ellipse.hpp"
#include "tspgap/exact.hpp"
#include "tspgap/families/ijk.hpp"
#include "tspgap/families/pseudo_tour.hpp"
#include "tspgap/lp/subtour.hpp"

using namespace tspgap;
using namespace tspgap::ellipse;

namespace
{

double on_ellipse(const Point& q, double A, double B) { return q[0] * q[0] / (A * A) + q[1] * q[1] / (B * B) - 1.0; }

} // namespace

TEST(Ellipse, DiffInnerChangesSignAcrossTheSegment)
{
    // With Y_{h+1} at Y_h the difference is negative; at the right corner's abscissa it is positive.
    auto pl = ellipse::detail::corners(0, 2, 1.0);
    pl.Y.front() = {-0.4, 0.0};
    pl.Y.back() = {0.4, 0.0};
    pl.Y[1] = pl.Y[0];
    EXPECT_LT(diff_inner(pl, 0), 0.0);
    pl.Y[1] = {1.0, 0.0};
    EXPECT_GT(diff_inner(pl, 0), 0.0);
}

TEST(Ellipse, InnerVerticesSymmetricAndBalanced)
{
    for (int j = 0; j <= 7; ++j) {
        const auto pl = inner_vertices(1, j, 1.4);
        ASSERT_EQ(pl.Y.size(), static_cast<std::size_t>(j + 2));
        for (std::size_t s = 0; s < pl.Y.size(); ++s) {
            EXPECT_EQ(pl.Y[s][1], 0.0);
            EXPECT_NEAR(pl.Y[s][0], -pl.Y[pl.Y.size() - 1 - s][0], 1e-12);
            if (s > 0) {
                EXPECT_LT(pl.Y[s - 1][0], pl.Y[s][0]);
            }
        }
        if (j % 2 == 1) {
            EXPECT_EQ(pl.Y[static_cast<std::size_t>((j + 1) / 2)][0], 0.0);
        }
        EXPECT_LE(max_inner_residual(pl), 1e-9);
    }
}

TEST(Ellipse, InvalidArguments)
{
    EXPECT_THROW(inner_vertices(-1, 0, 1.0), std::invalid_argument);
    EXPECT_THROW(inner_vertices(0, 0, 0.0), std::invalid_argument);
    EXPECT_THROW(ellipse_construct(0, 0, 0.0), std::invalid_argument);
}

TEST(Ellipse, OuterVerticesOnTheEllipse)
{
    for (int i = 1; i <= 5; ++i) {
        const auto res = ellipse_construct(i, 2);
        const auto& pl = [&] {
            Placement q;
            q.i = i;
            q.j = 2;
            for (int v = 0; v < res.instance.size(); ++v) {
                const auto pt = res.instance.point(v);
                const Point z{pt[0], pt[1]};
                const char c = res.instance.label(v)[0];
                (c == 'X' ? q.X : c == 'Y' ? q.Y : q.Z).push_back(z);
            }
            return q;
        }();
        const double b = res.params.b;
        const double A = 0.5 * (std::hypot(b - res.params.e, 1.0) + std::hypot(b + res.params.e, 1.0));
        const double B = std::sqrt(A * A - res.params.e * res.params.e);
        for (std::size_t s = 0; s < pl.Z.size(); ++s) {
            EXPECT_NEAR(on_ellipse(pl.Z[s], A, B), 0.0, 1e-9);
            EXPECT_EQ(pl.X[s][0], pl.Z[s][0]);
            EXPECT_EQ(pl.X[s][1], -pl.Z[s][1]);
            EXPECT_NEAR(pl.Z[s][0], -pl.Z[pl.Z.size() - 1 - s][0], 1e-12);
        }
        if (i % 2 == 1) {
            EXPECT_EQ(pl.Z[static_cast<std::size_t>((i + 1) / 2)][0], 0.0);
            EXPECT_NEAR(pl.Z[static_cast<std::size_t>((i + 1) / 2)][1], B, 1e-15);
        }
        EXPECT_LE(max_inner_residual(pl), 1e-9);
        EXPECT_LE(max_outer_residual(pl), 1e-9);
        EXPECT_LE(res.residual_inner, 1e-9);
        EXPECT_LE(res.residual_outer, 1e-9);
    }
}

TEST(Ellipse, KnownRatios)
{
    struct Row {
        int i, j;
        double ratio;
    };
    for (const Row r : {Row{0, 0, 1.023810}, Row{0, 4, 1.047596}, Row{1, 0, 1.041287}, Row{1, 1, 1.060146},
                        Row{1, 3, 1.078352}, Row{2, 2, 1.089632}}) {
        EXPECT_NEAR(ellipse_construct(r.i, r.j).ratio, r.ratio, 1e-3) << r.i << "," << r.j;
    }
}

TEST(Ellipse, ShortcutsAgreeAndSolversConfirm)
{
    for (const auto& [i, j] : std::vector<std::pair<int, int>>{{0, 0}, {0, 3}, {1, 1}, {1, 2}, {2, 1}, {3, 0}}) {
        const auto res = ellipse_construct(i, j);
        EXPECT_LE(res.shortcut_spread, 1e-9);
        EXPECT_NEAR(held_karp(res.instance).length, res.tour_length, 1e-9) << i << "," << j;
        EXPECT_NEAR(lp::solve_subtour_lp(res.instance).cost, res.lp_cost, 1e-7) << i << "," << j;
        const families::IJK p{i, j, i};
        EXPECT_NEAR(res.lp_cost, fractional_cost(res.instance, families::fractional_xijk(p)), 1e-12);
        EXPECT_NEAR(res.ratio, res.tour_length / res.lp_cost, 1e-15);
    }
}

TEST(Ellipse, BestRatioNondecreasingInN)
{
    const std::vector<std::vector<std::pair<int, int>>> ladder{
        {{0, 0}}, {{1, 1}, {0, 3}}, {{2, 2}, {1, 4}, {0, 6}}, {{3, 6}, {2, 8}}};
    double prev = 1.0;
    for (const auto& group : ladder) {
        double best = 0.0;
        for (const auto& [i, j] : group) best = std::max(best, ellipse_construct(i, j).ratio);
        EXPECT_GE(best, prev);
        prev = best;
    }
    EXPECT_GT(prev, 1.13);
}

TEST(Ellipse, Deterministic)
{
    const auto a = ellipse_construct(2, 1);
    const auto b = ellipse_construct(2, 1);
    EXPECT_EQ(a.ratio, b.ratio);
    EXPECT_EQ(a.instance.coords(), b.instance.coords());
}
