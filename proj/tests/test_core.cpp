#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tspgap/core.hpp"
#include "tspgap/families/ijk.hpp"

using namespace tspgap;
using families::IJK;

namespace
{

Instance random_points(std::mt19937_64& rng, int n, int d, double p)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(n * d));
    for (auto& v : c) v = u(rng);
    return Instance(d, c, NormSpec(p));
}

Instance unit_square(NormSpec norm = NormSpec::euclidean())
{
    return Instance::from_points({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, norm);
}

} // namespace

TEST(NormSpec, RejectsExponentBelowOne)
{
    EXPECT_THROW(NormSpec(0.5), std::invalid_argument);
    EXPECT_THROW(NormSpec(std::nan("")), std::invalid_argument);
    EXPECT_NO_THROW(NormSpec(1.0));
    EXPECT_NO_THROW(NormSpec(3.5));
}

TEST(Distance, ThreeFourFive)
{
    const auto e = Instance::from_points({{0, 0}, {3, 4}, {9, 9}}, NormSpec::euclidean());
    EXPECT_DOUBLE_EQ(distance(e, 0, 1), 5.0);
    const auto r = Instance::from_points({{0, 0}, {3, 4}, {9, 9}}, NormSpec::rectilinear());
    EXPECT_DOUBLE_EQ(distance(r, 0, 1), 7.0);
}

TEST(Distance, GeneralExponent)
{
    const auto inst = Instance::from_points({{0, 0}, {3, 4}, {9, 9}}, NormSpec(3.0));
    EXPECT_NEAR(distance(inst, 0, 1), std::cbrt(27.0 + 64.0), 1e-12);
}

TEST(Distance, MetricI3FirstPair)
{
    // X0 = (0,0,0), Y0 = (1/(i+1) + 1/(j+1), 0, 0) with i = j = 0
    const auto inst = families::gen_I3(IJK{0, 0, 0});
    const families::LabeledVertexSet V(IJK{0, 0, 0});
    EXPECT_DOUBLE_EQ(distance(inst, V.X(0), V.Y(0)), 2.0);
}

TEST(Distance, SymmetricAndTriangleInequality)
{
    std::mt19937_64 rng(7);
    for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto inst = random_points(rng, 6, 3, p);
            for (int a = 0; a < 6; ++a) {
                for (int b = 0; b < 6; ++b) {
                    if (a == b) continue;
                    EXPECT_EQ(distance(inst, a, b), distance(inst, b, a));
                    EXPECT_GT(distance(inst, a, b), 0.0);
                    for (int c = 0; c < 6; ++c) {
                        if (c == a || c == b) continue;
                        EXPECT_LE(distance(inst, a, c), distance(inst, a, b) + distance(inst, b, c) + 1e-12);
                    }
                }
            }
        }
    }
}

TEST(Instance, RejectsCoincidentPoints)
{
    EXPECT_THROW(Instance::from_points({{0, 0}, {1, 1}, {0, 0}}, NormSpec::euclidean()), std::invalid_argument);
}

TEST(Instance, RejectsDuplicateLabels)
{
    EXPECT_THROW(Instance(1, {0, 1, 2}, NormSpec::euclidean(), {"a", "b", "a"}), std::invalid_argument);
}

TEST(Instance, RejectsBadShapes)
{
    EXPECT_THROW(Instance(2, {0, 1, 2}, NormSpec::euclidean()), std::invalid_argument);
    EXPECT_THROW(Instance(0, {}, NormSpec::euclidean()), std::invalid_argument);
    EXPECT_THROW(Instance(1, {0, 1, 2}, NormSpec::euclidean(), {"a", "b"}), std::invalid_argument);
    EXPECT_THROW(Instance(1, {0, INFINITY}, NormSpec::euclidean()), std::invalid_argument);
}

TEST(Instance, LabelsAndLookup)
{
    const Instance inst(1, {0, 1, 2}, NormSpec::euclidean(), {"a", "b", "c"});
    EXPECT_EQ(inst.label(1), "b");
    EXPECT_EQ(inst.find_label("c"), 2);
    EXPECT_FALSE(inst.find_label("z").has_value());
    const Instance bare(1, {0, 1, 2}, NormSpec::euclidean());
    EXPECT_EQ(bare.label(2), "2");
}

TEST(Edge, CanonicalOrder)
{
    const Edge e(5, 2);
    EXPECT_EQ(e.u, 2);
    EXPECT_EQ(e.v, 5);
    EXPECT_THROW(Edge(3, 3), std::invalid_argument);
    EXPECT_THROW(Edge(-1, 3), std::out_of_range);
}

TEST(Tour, CanonicalFormIsUniquePerCycle)
{
    std::vector<int> base{0, 3, 1, 4, 2, 5};
    const Tour ref(base);
    for (int rot = 0; rot < 6; ++rot) {
        std::vector<int> o(base);
        std::rotate(o.begin(), o.begin() + rot, o.end());
        EXPECT_EQ(Tour(o), ref);
        std::reverse(o.begin(), o.end());
        EXPECT_EQ(Tour(o), ref);
    }
    EXPECT_EQ(ref.order().front(), 0);
    EXPECT_LT(ref.order()[1], ref.order().back());
}

TEST(Tour, RejectsNonPermutations)
{
    EXPECT_THROW(Tour({0, 1}), std::invalid_argument);
    EXPECT_THROW(Tour({0, 1, 1}), std::invalid_argument);
    EXPECT_THROW(Tour({0, 1, 3}), std::invalid_argument);
}

TEST(TourLength, UnitSquare)
{
    EXPECT_DOUBLE_EQ(tour_length(unit_square(), Tour({0, 1, 2, 3})), 4.0);
    EXPECT_DOUBLE_EQ(tour_length(unit_square(), Tour({0, 2, 1, 3})), 2.0 + 2.0 * std::sqrt(2.0));
}

TEST(TourLength, RotationAndReflectionInvariant)
{
    std::mt19937_64 rng(3);
    const auto inst = random_points(rng, 7, 2, 2.0);
    std::vector<int> o{0, 1, 2, 3, 4, 5, 6};
    std::shuffle(o.begin(), o.end(), rng);
    double ref = 0.0;
    for (std::size_t k = 0; k < o.size(); ++k) ref += distance(inst, o[k], o[(k + 1) % o.size()]);
    EXPECT_NEAR(tour_length(inst, Tour(o)), ref, 1e-12);
}

TEST(TourLength, I2Oracles)
{
    // 4 + 2 b1 + 2 b2 - 2/(j+3) with b1 = b2 = 2/3 for (0,0,0) and 1/2 for (1,2,1)
    const auto a = families::gen_I2(IJK{0, 0, 0});
    const auto b = families::gen_I2(IJK{1, 2, 1});
    double best_a = 1e9;
    std::vector<int> o{1, 2, 3, 4, 5};
    do {
        std::vector<int> t{0};
        t.insert(t.end(), o.begin(), o.end());
        best_a = std::min(best_a, tour_length(a, Tour(t)));
    } while (std::next_permutation(o.begin(), o.end()));
    EXPECT_NEAR(best_a, 6.0, 1e-12);
    EXPECT_NEAR(4.0 + 2.0 * (2.0 / 3) + 2.0 * (2.0 / 3) - 2.0 / 3, 6.0, 1e-12);
    EXPECT_NEAR(4.0 + 1.0 + 1.0 - 2.0 / 5, 28.0 / 5, 1e-12);
    EXPECT_NEAR(families::closed_form_opt_I2(IJK{1, 2, 1}), 28.0 / 5, 1e-12);
    (void)b;
}

TEST(FractionalCost, Zero)
{
    const EdgeWeightVector x(4);
    EXPECT_EQ(fractional_cost(unit_square(), x), 0.0);
}

TEST(FractionalCost, XijkOracles)
{
    EXPECT_NEAR(fractional_cost(families::gen_I2(IJK{0, 0, 0}), families::fractional_xijk(IJK{0, 0, 0})), 17.0 / 3, 1e-12);
    EXPECT_NEAR(fractional_cost(families::gen_I3(IJK{0, 0, 0}), families::fractional_xijk(IJK{0, 0, 0})), 9.0, 1e-12);
}

TEST(FractionalCost, Linear)
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto inst = random_points(rng, 8, 2, 2.0);
    for (int rep = 0; rep < 50; ++rep) {
        EdgeWeightVector x(8);
        for (int a = 0; a < 8; ++a) {
            for (int b = a + 1; b < 8; ++b) x.set(a, b, u(rng));
        }
        const double alpha = u(rng);
        EXPECT_NEAR(fractional_cost(inst, x.scaled(alpha)), alpha * fractional_cost(inst, x), 1e-12);
    }
}

TEST(FractionalCost, SizeMismatchThrows)
{
    EXPECT_THROW(fractional_cost(unit_square(), EdgeWeightVector(5)), std::invalid_argument);
}

TEST(EdgeWeightVector, BoundsAndZeroErasure)
{
    EdgeWeightVector x(3);
    x.set(0, 1, 0.5);
    EXPECT_EQ(x.get(1, 0), 0.5);
    x.set(0, 1, 0.0);
    EXPECT_TRUE(x.empty());
    EXPECT_THROW(x.set(0, 1, 1.5), std::invalid_argument);
    EXPECT_THROW(x.set(0, 3, 0.5), std::out_of_range);
}

TEST(DegreeVector, Examples)
{
    EdgeWeightVector tri(3);
    tri.set(0, 1, 1);
    tri.set(1, 2, 1);
    tri.set(0, 2, 1);
    EXPECT_EQ(degree_vector(tri), (std::vector<double>{2, 2, 2}));

    EdgeWeightVector single(3);
    single.set(0, 1, 1);
    EXPECT_EQ(degree_vector(single), (std::vector<double>{1, 1, 0}));

    for (const auto& d : degree_vector(families::fractional_xijk(IJK{0, 0, 0}))) EXPECT_NEAR(d, 2.0, 1e-12);
}

TEST(DistanceMatrix, MatchesDistance)
{
    std::mt19937_64 rng(5);
    const auto inst = random_points(rng, 5, 2, 1.5);
    const auto m = distance_matrix(inst);
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
            EXPECT_EQ(m[static_cast<std::size_t>(a * 5 + b)], a == b ? 0.0 : distance(inst, a, b));
        }
    }
}
