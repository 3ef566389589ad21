#include "support.hpp"

#include <surfdecide/parse.hpp>

#include <gtest/gtest.h>

using namespace surfdecide;
using testsupport::Rng;

namespace {

SurfaceDescriptor surf(const std::string& genus, const std::string& ends, int boundary = 0) {
    return parse_surface("surface(genus=" + genus + ", boundary=" + std::to_string(boundary) + ", ends=" + ends + ")");
}

TEST(Validate, Examples) {
    EXPECT_FALSE(validate(surf("inf", "pt!np")));
    const auto mismatch = validate(surf("0", "pt!np"));
    ASSERT_TRUE(mismatch);
    EXPECT_EQ(mismatch->kind, ValidationError::Kind::GenusMarkMismatch);
    const auto closed = validate(surf("inf", "seq1pc(U(pt!p, pt!np); p)"));
    ASSERT_TRUE(closed);
    EXPECT_EQ(closed->kind, ValidationError::Kind::ClosednessViolation);
    EXPECT_EQ(closed->path, "ends");
}

TEST(Validate, ReportsNestedPath) {
    const auto err = validate(surf("inf", "U(pt, cantor!np, seq1pc(seq1pc(pt!np; np)))"));
    ASSERT_TRUE(err);
    EXPECT_EQ(err->kind, ValidationError::Kind::ClosednessViolation);
    EXPECT_EQ(err->path, "ends/2");
}

TEST(Validate, InfiniteGenusNeedsNonplanarEnd) {
    const auto err = validate(surf("inf", "cantor"));
    ASSERT_TRUE(err);
    EXPECT_EQ(err->kind, ValidationError::Kind::GenusMarkMismatch);
    EXPECT_FALSE(validate(surf("3", "cantor")));
}

TEST(Punctures, Examples) {
    EXPECT_EQ(punctures_of(surf("0", "seq1pc(pt!p; p)")), Count::omega());
    EXPECT_EQ(punctures_of(surf("inf", "pt!np")), Count(0));
    EXPECT_EQ(punctures_of(surf("inf", "U(pt!np, pt!p)")), Count(1));
    EXPECT_EQ(punctures_of(surf("0", "U(cantor, I(3))")), Count(4));
    EXPECT_EQ(punctures_of(surf("inf", "I(w)!np")), Count(0));
}

TEST(MixedEnd, Examples) {
    EXPECT_FALSE(has_mixed_end(surf("inf", "U(pt!np, seq1pc(pt!p; p))")));
    EXPECT_TRUE(has_mixed_end(surf("inf", "seq1pc(U(pt!p, pt!np); np)")));
    EXPECT_FALSE(has_mixed_end(surf("inf", "cantor!np")));
}

TEST(SurfaceHomeo, Examples) {
    EXPECT_EQ(surfaces_homeomorphic(surf("inf", "pt!np"), surf("inf", "pt!np")), Decision::Yes);
    EXPECT_EQ(surfaces_homeomorphic(surf("0", "seq1pc(pt)"), surf("0", "I(w)!p")), Decision::Yes);
    EXPECT_EQ(surfaces_homeomorphic(surf("inf", "U(cantor!np, pt!p)"), surf("inf", "seq1pc(pt!p; np)")),
              Decision::No);
    EXPECT_EQ(surfaces_homeomorphic(surf("inf", "U(cantor!np, pt, pt)"), surf("inf", "U(pt, cantor!np, pt)")),
              Decision::Yes);
    EXPECT_EQ(surfaces_homeomorphic(surf("inf", "U(cantor!np, pt)"), surf("inf", "U(cantor, pt!np)")), Decision::No);
    EXPECT_EQ(surfaces_homeomorphic(surf("2", "cantor"), surf("3", "cantor")), Decision::No);
    EXPECT_EQ(surfaces_homeomorphic(surf("0", "cantor", 1), surf("0", "cantor")), Decision::No);
    // nonplanar compactification over planar content: outside the clopen fragment
    EXPECT_EQ(surfaces_homeomorphic(surf("inf", "seq1pc(pt; np)"), surf("inf", "seq1pc(pt; np)")),
              Decision::Unknown);
}

TEST(SurfaceProperty, RandomDescriptorsAreValidAndRoundTrip) {
    Rng rng(31);
    for (int i = 0; i < 2000; ++i) {
        const auto d = testsupport::random_descriptor(rng);
        ASSERT_FALSE(validate(d)) << d.to_string();
        const auto back = parse_surface(d.to_string());
        EXPECT_EQ(back.ends, d.ends) << d.to_string();
        EXPECT_EQ(back.genus, d.genus);
        EXPECT_FALSE(validate(back));
    }
}

TEST(SurfaceProperty, InvariantRelations) {
    Rng rng(32);
    for (int i = 0; i < 2000; ++i) {
        const auto d = testsupport::random_descriptor(rng);
        const auto inv = invariants(d);
        const auto iso = isolated_count(d.ends.unmarked());
        EXPECT_TRUE(!inv.punctures.is_infinite() || iso.is_infinite());
        if (!iso.is_infinite()) {
            EXPECT_LE(inv.punctures.value(), iso.value());
        }
        if (inv.mixed_end) {
            EXPECT_TRUE(d.genus.is_infinite());
            EXPECT_TRUE(inv.punctures.is_infinite());
        }
        EXPECT_EQ(surfaces_homeomorphic(d, d) == Decision::No, false);
    }
}

TEST(SurfaceProperty, HomeomorphismIsSymmetric) {
    Rng rng(33);
    std::vector<SurfaceDescriptor> pool;
    for (int i = 0; i < 80; ++i) pool.push_back(testsupport::random_descriptor(rng, 2));
    for (const auto& a : pool)
        for (const auto& b : pool) {
            const auto ab = surfaces_homeomorphic(a, b);
            EXPECT_EQ(ab, surfaces_homeomorphic(b, a));
            if (ab == Decision::Yes) {
                const auto ia = invariants(a), ib = invariants(b);
                EXPECT_EQ(ia.genus, ib.genus);
                EXPECT_EQ(ia.punctures, ib.punctures);
                EXPECT_EQ(ia.mixed_end, ib.mixed_end);
                EXPECT_EQ(ia.ends.scattered_rank, ib.ends.scattered_rank);
                EXPECT_EQ(ia.ends.isolated, ib.ends.isolated);
            }
        }
}

TEST(SurfaceProperty, PuncturesStableUnderUnionReordering) {
    Rng rng(34);
    for (int i = 0; i < 500; ++i) {
        const auto d = testsupport::random_descriptor(rng);
        if (d.ends.kind() != EndSpaceExpr::Kind::Union) continue;
        std::vector<MarkedEndSpace> kids(d.ends.children().begin(), d.ends.children().end());
        std::shuffle(kids.begin(), kids.end(), rng);
        SurfaceDescriptor e = d;
        e.ends = MarkedEndSpace::union_of(kids);
        EXPECT_EQ(punctures_of(e), punctures_of(d));
        EXPECT_EQ(has_mixed_end(e), has_mixed_end(d));
    }
}

} // namespace
