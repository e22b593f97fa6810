#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace rainbow;

namespace {

Instance single(ColourClass cls) {
    Instance inst;
    inst.n = 1;
    inst.classes = {std::move(cls)};
    return inst;
}

std::vector<VertexSet> members_of(const FiniteAlgebra& a) {
    std::vector<VertexSet> out;
    for (Mask m : a.members) out.push_back(a.to_set(m));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST(Algebra, PairAndSingleton) {
    FiniteAlgebra a = relation_to_algebra(single({{1, 2}}), 0, VertexSet{1, 2, 3});
    std::vector<VertexSet> expect{VertexSet{}, VertexSet{1, 2}, VertexSet{1, 2, 3}, VertexSet{3}};
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(members_of(a), expect);
    EXPECT_TRUE(closure_violations(a).empty());
}

TEST(Algebra, WholeGroundClass) {
    FiniteAlgebra a = relation_to_algebra(single({{4, 5, 6}}), 0, VertexSet{4, 5, 6});
    EXPECT_EQ(a.members, (std::vector<Mask>{0, 7}));
}

TEST(Algebra, MemberCountIsPowerOfClassCount) {
    std::mt19937_64 rng(5);
    for (int size = 1; size <= 8; ++size)
        for (int trial = 0; trial < 20; ++trial) {
            auto blocks = oracle::random_partition(size, rng);
            std::vector<int> all(size);
            std::iota(all.begin(), all.end(), 0);
            FiniteAlgebra a = relation_to_algebra(single(oracle::class_of(blocks)), 0, VertexSet(all));
            EXPECT_EQ(a.members.size(), std::size_t{1} << blocks.size());
            // Independent check: a subset is a member iff it never splits a block.
            for (Mask q = 0; q < (Mask{1} << size); ++q) {
                bool closed = true;
                for (const auto& b : blocks) {
                    int in = 0;
                    for (int x : b) in += (q >> x) & 1;
                    closed = closed && (in == 0 || in == static_cast<int>(b.size()));
                }
                EXPECT_EQ(a.contains(q), closed);
            }
        }
}

TEST(Algebra, CapEnforced) {
    std::vector<int> big(21);
    std::iota(big.begin(), big.end(), 0);
    try {
        (void)relation_to_algebra(single({{0, 1}}), 0, VertexSet(big));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::cap_exceeded);
    }
    EXPECT_THROW((void)relation_to_algebra(single({{0, 9}}), 0, VertexSet{0, 1}), Error);
}

TEST(AlgebraToRelation, Atoms) {
    FiniteAlgebra a = make_algebra(VertexSet{1, 2, 3}, {0b000, 0b100, 0b011, 0b111});
    EXPECT_EQ(algebra_to_relation(a), (std::vector<VertexSet>{VertexSet{1, 2}, VertexSet{3}}));
    FiniteAlgebra power = make_algebra(VertexSet{1, 2}, {0, 1, 2, 3});
    EXPECT_EQ(algebra_to_relation(power), (std::vector<VertexSet>{VertexSet{1}, VertexSet{2}}));
}

TEST(AlgebraToRelation, ClosureViolationsRejected) {
    for (std::vector<Mask> members : {std::vector<Mask>{0, 1, 7}, std::vector<Mask>{0, 1, 2, 6, 7},
                                      std::vector<Mask>{1, 6, 7}, std::vector<Mask>{}}) {
        try {
            (void)algebra_to_relation(make_algebra(VertexSet{1, 2, 3}, members));
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::invalid_algebra);
        }
    }
}

TEST(AlgebraToRelation, LargeFamilyUsesAtomCheck) {
    std::vector<int> g(14);
    std::iota(g.begin(), g.end(), 0);
    FiniteAlgebra a = relation_to_algebra(single({{0, 1}}), 0, VertexSet(g));
    EXPECT_GT(a.members.size(), pairwise_closure_cap);
    EXPECT_TRUE(closure_violations(a).empty());
    FiniteAlgebra broken = a;
    broken.members.erase(broken.members.begin() + 5);
    EXPECT_FALSE(closure_violations(broken).empty());
}

TEST(AlgebraToRelation, RoundTripRandomPartitions) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 200; ++trial) {
        int size = 1 + static_cast<int>(rng() % 8);
        auto blocks = oracle::random_partition(size, rng);
        std::vector<int> all(size);
        std::iota(all.begin(), all.end(), 0);
        FiniteAlgebra a = relation_to_algebra(single(oracle::class_of(blocks)), 0, VertexSet(all));
        std::vector<VertexSet> expect;
        for (const auto& b : blocks) expect.emplace_back(b.begin(), b.end());
        std::sort(expect.begin(), expect.end(), [](const VertexSet& x, const VertexSet& y) { return x[0] < y[0]; });
        EXPECT_EQ(algebra_to_relation(a), expect);
    }
}

TEST(AlgebraToRelation, NonMembersContainANonMemberSingleton) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        int size = 1 + static_cast<int>(rng() % 8);
        auto blocks = oracle::random_partition(size, rng);
        std::vector<int> all(size);
        std::iota(all.begin(), all.end(), 0);
        FiniteAlgebra a = relation_to_algebra(single(oracle::class_of(blocks)), 0, VertexSet(all));
        for (Mask b = 0; b < (Mask{1} << size); ++b) {
            if (a.contains(b)) continue;
            bool witness = false;
            for (int x = 0; x < size; ++x)
                if ((b >> x) & 1) witness = witness || !a.contains(Mask{1} << x);
            EXPECT_TRUE(witness);
        }
    }
}

TEST(Witness, FromMatchingSingletons) {
    Instance inst;
    inst.n = 2;
    inst.classes = {{{1, 2}}, {{3, 4, 5}}};
    Matching m{{make_edge(1, 3, 5), make_edge(0, 1, 2)}};
    WitnessFamily w = witness_from_matching(inst, m);
    ASSERT_EQ(w.pairs.size(), 2u);
    EXPECT_EQ(w.pairs[0].first, VertexSet{1});
    EXPECT_EQ(w.pairs[0].second, VertexSet{2});
    EXPECT_TRUE(w.pairwise_disjoint());
    EXPECT_THROW((void)witness_from_matching(inst, Matching{{make_edge(0, 1, 2)}}), Error);
}

TEST(Witness, PropertyPassAndViolation) {
    Instance inst;
    inst.n = 1;
    inst.classes = {{{1, 2}}};
    std::vector<FiniteAlgebra> algebras{relation_to_algebra(inst, 0, VertexSet{1, 2, 3})};
    WitnessFamily ok{{{VertexSet{1}, VertexSet{2}}}};
    EXPECT_TRUE(verify_witness_property(algebras, ok).pass());
    // 1 and 3 lie in different classes, so {1} u {2} = {1, 2} separates them.
    WitnessFamily bad{{{VertexSet{1}, VertexSet{3}}}};
    auto report = verify_witness_property(algebras, bad);
    EXPECT_FALSE(report.pass());
    EXPECT_THROW((void)matching_from_witness(algebras, bad), Error);
}

TEST(Witness, EmptyFamilyPassesVacuously) {
    EXPECT_TRUE(verify_witness_property({}, WitnessFamily{}).pass());
}

TEST(Witness, RoundTripOnRandomRelations) {
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int size = 4 + static_cast<int>(rng() % 5);
        const int n = 1 + static_cast<int>(rng() % 3);
        Instance inst;
        inst.n = n;
        for (int c = 0; c < n; ++c) inst.classes.push_back(oracle::class_of(oracle::random_partition(size, rng)));
        if (!validate_instance(inst).valid()) continue;
        bool nonempty = true;
        for (const auto& cls : inst.classes) nonempty = nonempty && !cls.empty();
        if (!nonempty) continue;
        auto found = solve_exact(inst, static_cast<std::size_t>(n), 1'000'000);
        if (found.status != Status::found) continue;
        std::vector<int> all(size);
        std::iota(all.begin(), all.end(), 0);
        std::vector<FiniteAlgebra> algebras;
        for (Colour c = 0; c < n; ++c) algebras.push_back(relation_to_algebra(inst, c, VertexSet(all)));
        WitnessFamily w = witness_from_matching(inst, *found.matching);
        ASSERT_TRUE(verify_witness_property(algebras, w).pass());
        Matching back = matching_from_witness(algebras, w);
        EXPECT_TRUE(is_rainbow_matching(inst, back, static_cast<std::size_t>(n)));
        EXPECT_EQ(sorted(back).edges, sorted(*found.matching).edges);
        ++checked;
    }
    EXPECT_GT(checked, 50);
}

TEST(Witness, LargerWitnessSetsPickSmallestClass) {
    Instance inst;
    inst.n = 1;
    inst.classes = {{{0, 5}, {1, 4}}};
    std::vector<FiniteAlgebra> algebras{relation_to_algebra(inst, 0, VertexSet{0, 1, 2, 3, 4, 5})};
    WitnessFamily w{{{VertexSet{0, 1}, VertexSet{4, 5}}}};
    ASSERT_TRUE(verify_witness_property(algebras, w).pass());
    Matching m = matching_from_witness(algebras, w);
    EXPECT_EQ(m.edges, (std::vector<Edge>{make_edge(0, 0, 5)}));
}

TEST(Witness, ScanCap) {
    std::vector<int> g(17);
    std::iota(g.begin(), g.end(), 0);
    Instance inst;
    inst.n = 1;
    inst.classes = {{{0, 1}}};
    std::vector<FiniteAlgebra> algebras{relation_to_algebra(inst, 0, VertexSet(g))};
    try {
        (void)verify_witness_property(algebras, WitnessFamily{{{VertexSet{0}, VertexSet{1}}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::cap_exceeded);
    }
}
