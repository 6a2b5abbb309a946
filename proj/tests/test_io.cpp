#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>

#include "tspgap/core.hpp"
#include "tspgap/families/ijk.hpp"
#include "tspgap/io/atomic_write.hpp"
#include "tspgap/io/native_format.hpp"
#include "tspgap/io/svg.hpp"
#include "tspgap/io/tsplib.hpp"
#include "tspgap/lp/subtour.hpp"

using namespace tspgap;
using namespace tspgap::io;

namespace
{

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::filesystem::path temp_dir()
{
    auto d = std::filesystem::temp_directory_path() / ("tspgap_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    std::filesystem::create_directories(d);
    return d;
}

} // namespace

TEST(Native, RoundTripIsBitExact)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> c(30);
        for (auto& v : c) v = u(rng) * std::pow(10.0, static_cast<double>(rep % 7) - 3.0);
        const Instance inst(3, c, NormSpec(1.0 + 0.37 * (rep % 5)));
        const auto back = read_native(write_native(inst));
        ASSERT_EQ(back.size(), inst.size());
        EXPECT_TRUE(same_bits(back.norm().p, inst.norm().p));
        for (std::size_t k = 0; k < c.size(); ++k) EXPECT_TRUE(same_bits(back.coords()[k], c[k]));
        EXPECT_EQ(write_native(back), write_native(inst));
    }
}

TEST(Native, LabelsSurvive)
{
    const auto inst = families::gen_I2(families::IJK{1, 0, 2});
    const auto back = read_native(write_native(inst));
    for (int v = 0; v < inst.size(); ++v) EXPECT_EQ(back.label(v), inst.label(v));
    EXPECT_EQ(back.norm(), NormSpec::rectilinear());
}

TEST(Native, CommentsAndBlankLines)
{
    const std::string text = "# hello\ntspgap-instance v1\n\nn 3 d 1 p 2\n0 0\n# mid\n1 1.5\n2 -2\n";
    const auto inst = read_native(text);
    EXPECT_EQ(inst.size(), 3);
    EXPECT_EQ(inst.point(2)[0], -2.0);
    EXPECT_EQ(inst.label(1), "1");
}

TEST(Native, ParseErrorsCarryLineNumbers)
{
    auto line_of = [](const std::string& t) -> std::size_t {
        try {
            (void)read_native(t);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    EXPECT_EQ(line_of(""), 1u);
    EXPECT_EQ(line_of("hello\n"), 1u);
    EXPECT_EQ(line_of("tspgap-instance v1\nn 2 d 1\n"), 2u);
    EXPECT_EQ(line_of("tspgap-instance v1\nn 2 d 1 p 2\na 0\nb x\n"), 4u);
    EXPECT_EQ(line_of("tspgap-instance v1\nn 2 d 1 p 2\na 0 1\nb 1\n"), 3u);
    EXPECT_EQ(line_of("tspgap-instance v1\nn 3 d 1 p 2\na 0\nb 1\n"), 4u);
    EXPECT_EQ(line_of("tspgap-instance v1\nn 2 d 1 p 0.5\na 0\nb 1\n"), 2u);
    // Instance validation failures are reported against the size line
    EXPECT_EQ(line_of("tspgap-instance v1\nn 2 d 1 p 2\na 0\nb 0\n"), 2u);
}

TEST(Tsplib, CostRounding)
{
    EXPECT_EQ(tsplib_cost(0.0), 0);
    EXPECT_EQ(tsplib_cost(2.0), 2000);
    EXPECT_EQ(tsplib_cost(0.29), 290);
    EXPECT_EQ(tsplib_cost(0.57), 570);
    EXPECT_EQ(tsplib_cost(1.0 / 3), 333);
    EXPECT_EQ(tsplib_cost(2.0 / 3), 666);
    EXPECT_EQ(tsplib_cost(0.0009999), 0);
}

TEST(Tsplib, MetricOriginEntries)
{
    const families::IJK p{0, 0, 0};
    const auto inst = families::gen_I3(p);
    const families::LabeledVertexSet V(p);
    const auto m = tsplib_matrix(inst, "I3_0_0_0");
    EXPECT_EQ(m.dimension, 6);
    EXPECT_EQ(m.at(V.X(0), V.Y(0)), 2000);
    EXPECT_EQ(m.at(V.X(0), V.X(1)), 1000);
    for (int a = 0; a < 6; ++a) {
        EXPECT_EQ(m.at(a, a), 0);
        for (int b = 0; b < 6; ++b) {
            EXPECT_EQ(m.at(a, b), m.at(b, a));
            if (a != b) {
                EXPECT_EQ(m.at(a, b), static_cast<std::int64_t>(std::llround(1000 * distance(inst, a, b))));
            }
        }
    }
}

TEST(Tsplib, WriteReadRoundTrip)
{
    const auto inst = families::gen_I3(families::IJK{1, 0, 2});
    const auto text = write_tsplib(inst, "I3_1_0_2", "metric family");
    EXPECT_NE(text.find("EDGE_WEIGHT_FORMAT: FULL_MATRIX"), std::string::npos);
    EXPECT_EQ(text.substr(text.size() - 4), "EOF\n");
    const auto back = read_tsplib(text);
    EXPECT_EQ(back.name, "I3_1_0_2");
    EXPECT_EQ(back.weights, tsplib_matrix(inst, "x").weights);
    EXPECT_EQ(write_tsplib(back, "metric family"), text);
}

TEST(Tsplib, RejectsMalformed)
{
    EXPECT_THROW(read_tsplib("NAME: a\nTYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\n"), ParseError);
    EXPECT_THROW(read_tsplib("NAME: a\nTYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: "
                             "FULL_MATRIX\nEDGE_WEIGHT_SECTION\n0 1\n1\nEOF\n"),
                 ParseError);
    EXPECT_THROW(read_tsplib("BOGUS: 1\n"), ParseError);
}

TEST(Svg, DeterministicAndComplete)
{
    const families::IJK p{1, 2, 1};
    const auto inst = families::gen_I2(p);
    const auto x = families::fractional_xijk(p);
    const Tour t({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    const auto a = render_svg(inst, t, x);
    EXPECT_EQ(a, render_svg(inst, t, x));
    EXPECT_NE(a.find("<svg"), std::string::npos);
    EXPECT_NE(a.find("</svg>"), std::string::npos);
    EXPECT_NE(a.find("stroke-dasharray=\"6 4\""), std::string::npos);
    EXPECT_NE(a.find("id=\"tour\""), std::string::npos);
    EXPECT_NE(a.find(">Z2<"), std::string::npos);
    std::size_t circles = 0;
    for (auto pos = a.find("<circle"); pos != std::string::npos; pos = a.find("<circle", pos + 1)) ++circles;
    EXPECT_EQ(circles, 10u);
    SvgOptions bare;
    bare.labels = false;
    EXPECT_EQ(render_svg(inst, std::nullopt, std::nullopt, bare).find(">Z2<"), std::string::npos);
}

TEST(AtomicWrite, ReplacesContentAndLeavesNoTemp)
{
    const auto dir = temp_dir();
    const auto f = dir / "out.txt";
    write_file_atomic(f, "first");
    write_file_atomic(f, "second");
    EXPECT_EQ(read_file(f), "second");
    for (const auto& e : std::filesystem::directory_iterator(dir)) EXPECT_EQ(e.path().filename(), "out.txt");
    EXPECT_THROW(read_file(dir / "missing"), std::runtime_error);
    std::filesystem::remove_all(dir);
}
