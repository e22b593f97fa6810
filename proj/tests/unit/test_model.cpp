#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace rainbow;

namespace {

Instance two_colour(ColourClass a, ColourClass b, bool simple = false) {
    Instance inst;
    inst.n = 2;
    inst.simple_mode = simple;
    inst.classes = {std::move(a), std::move(b)};
    return inst;
}

bool has_rule(const ValidationReport& r, const std::string& rule) {
    for (const Violation& v : r.violations)
        if (v.rule == rule) return true;
    return false;
}

} // namespace

TEST(VertexSet, SortsAndDeduplicates) {
    VertexSet s{5, 1, 3, 1};
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s, (VertexSet{1, 3, 5}));
    EXPECT_TRUE(s.contains(3));
    EXPECT_FALSE(s.contains(2));
}

TEST(VertexSet, SetAlgebra) {
    VertexSet a{1, 2, 3}, b{3, 4};
    EXPECT_EQ(a.union_with(b), (VertexSet{1, 2, 3, 4}));
    EXPECT_EQ(a.intersection_with(b), (VertexSet{3}));
    EXPECT_EQ(a.difference(b), (VertexSet{1, 2}));
    EXPECT_TRUE(a.intersects(b));
    EXPECT_TRUE((VertexSet{1, 2}).is_subset_of(a));
}

TEST(Kernel, UnionOfCliques) {
    Instance inst = two_colour({{1, 2}, {4, 5, 6}}, {{0, 1}});
    EXPECT_EQ(kernel(inst, 0), (VertexSet{1, 2, 4, 5, 6}));
    EXPECT_EQ(kernel(inst, 0).size(), 5u);
    EXPECT_EQ(kernel(inst, 1), (VertexSet{0, 1}));
}

TEST(Kernel, ExtremalTrianglesHaveKernelNine) {
    Instance inst = extremal_triangles(4);
    for (Colour c = 0; c < 4; ++c) EXPECT_EQ(kernel(inst, c).size(), 9u);
}

TEST(Kernel, RejectsOutOfRangeColour) {
    Instance inst = two_colour({{0, 1}}, {{0, 1}});
    try {
        (void)kernel(inst, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_colour);
    }
}

TEST(Validate, CanonicalInstanceIsValid) {
    EXPECT_TRUE(validate_instance(two_colour({{0, 1}, {2, 3}}, {{0, 2}})).valid());
}

TEST(Validate, ReportsSmallClique) {
    Instance inst;
    inst.n = 1;
    inst.classes = {{{3}}};
    auto r = validate_instance(inst);
    ASSERT_FALSE(r.valid());
    EXPECT_TRUE(has_rule(r, "clique of size < 2"));
}

TEST(Validate, ReportsSharedPairInSimpleMode) {
    auto r = validate_instance(two_colour({{1, 2, 3}}, {{1, 2}}, true));
    EXPECT_TRUE(has_rule(r, "shared pair {1,2}"));
    EXPECT_TRUE(validate_instance(two_colour({{1, 2, 3}}, {{1, 2}}, false)).valid());
}

TEST(Validate, ReportsDuplicateVertexAndOrdering) {
    EXPECT_TRUE(has_rule(validate_instance(two_colour({{0, 1}, {1, 2}}, {{0, 1}})), "duplicate vertex within class"));
    EXPECT_TRUE(has_rule(validate_instance(two_colour({{1, 0}}, {{0, 1}})), "non-canonical ordering"));
    EXPECT_TRUE(has_rule(validate_instance(two_colour({{2, 3}, {0, 1}}, {{0, 1}})), "non-canonical ordering"));
}

TEST(Validate, ReportsEveryViolation) {
    Instance inst = two_colour({{3}, {1, 0}}, {{5}});
    auto r = validate_instance(inst);
    std::size_t small = 0;
    for (const auto& v : r.violations) small += v.rule == "clique of size < 2";
    EXPECT_EQ(small, 2u);
    EXPECT_TRUE(has_rule(r, "non-canonical ordering"));
}

TEST(Canonicalize, IsIdempotent) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Instance inst;
        inst.n = 3;
        for (int c = 0; c < 3; ++c) {
            auto blocks = oracle::random_partition(8, rng);
            ColourClass cls;
            for (auto b : blocks)
                if (b.size() >= 2) {
                    std::shuffle(b.begin(), b.end(), rng);
                    cls.push_back(b);
                }
            std::shuffle(cls.begin(), cls.end(), rng);
            inst.classes.push_back(cls);
        }
        Instance once = canonicalize(inst);
        EXPECT_EQ(canonicalize(once).classes, once.classes);
        EXPECT_TRUE(validate_instance(once).valid());
    }
}

TEST(RainbowMatching, EmptyMatchingAtSizeZero) {
    EXPECT_TRUE(is_rainbow_matching(two_colour({{0, 1}}, {{2, 3}}), Matching{}, 0));
}

TEST(RainbowMatching, SharedVertexFails) {
    Instance inst = two_colour({{0, 1, 2}}, {{0, 1, 2}});
    Matching m{{make_edge(0, 0, 1), make_edge(1, 1, 2)}};
    EXPECT_FALSE(is_rainbow_matching(inst, m, 2));
}

TEST(RainbowMatching, RepeatedColourFails) {
    Instance inst = two_colour({{0, 1}, {2, 3}}, {{4, 5}});
    Matching m{{make_edge(0, 0, 1), make_edge(0, 2, 3)}};
    EXPECT_FALSE(is_rainbow_matching(inst, m, 2));
}

TEST(RainbowMatching, NonEdgeFails) {
    Instance inst = two_colour({{0, 1}, {2, 3}}, {{4, 5}});
    EXPECT_FALSE(is_rainbow_matching(inst, Matching{{make_edge(0, 1, 2)}}, 1));
    EXPECT_TRUE(is_rainbow_matching(inst, Matching{{make_edge(0, 0, 1), make_edge(1, 4, 5)}}, 2));
    EXPECT_FALSE(is_rainbow_matching(inst, Matching{{make_edge(0, 0, 1)}}, 2));
}

TEST(RainbowMatching, DanglingColourThrows) {
    Instance inst = two_colour({{0, 1}}, {{2, 3}});
    EXPECT_THROW((void)is_rainbow_matching(inst, Matching{{make_edge(7, 0, 1)}}, 1), Error);
}

TEST(RainbowMatching, NoFourDisjointEdgesInThreeTriangles) {
    Instance inst = extremal_triangles(4);
    // Any four edges: at least two share a triangle, hence a vertex.
    std::vector<Edge> all;
    for (Colour c = 0; c < 4; ++c)
        for (const Edge& e : edges_of(inst, c)) all.push_back(e);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 2000; ++trial) {
        Matching m;
        for (int i = 0; i < 4; ++i) m.edges.push_back(all[pick(rng)]);
        EXPECT_FALSE(is_rainbow_matching(inst, m, 4));
    }
}

TEST(Restriction, MapsColoursBothWays) {
    Instance inst;
    inst.n = 3;
    inst.classes = {{{0, 1}}, {{2, 3}}, {{4, 5}}};
    ColourRestriction r = restrict_colours(inst, {0, 2});
    EXPECT_EQ(r.instance.n, 2);
    EXPECT_EQ(r.local(2), 1);
    Matching m{{make_edge(2, 4, 5)}};
    EXPECT_EQ(r.to_original_matching(r.to_local(m)).edges, m.edges);
}
