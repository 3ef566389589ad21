#include "support.hpp"

#include <surfdecide/parse.hpp>

#include <gtest/gtest.h>

using namespace surfdecide;
using testsupport::Rng;

namespace {

EndSpaceExpr ex(const char* s) { return parse_endspace(s).unmarked(); }
NormalForm canon(CanonicalEndSpace c) { return {std::move(c)}; }

TEST(Normalize, IntervalUnionExamples) {
    EXPECT_EQ(normalize(ex("U(I(w^2), I(w))")), canon(CanonicalEndSpace::orbit(1, Ordinal::finite(2))));
    EXPECT_EQ(normalize(ex("seq1pc(I(w))")), canon(CanonicalEndSpace::orbit(1, Ordinal::finite(2))));
    EXPECT_EQ(normalize(ex("lim1pc(w)")), canon(CanonicalEndSpace::orbit(1, Ordinal::omega())));
}

TEST(Normalize, SeqOfCantorIsCantor) {
    const auto e = ex("seq1pc(cantor)");
    EXPECT_EQ(normalize(e), canon(CanonicalEndSpace::cantor_plus()));
    // derivative reaches a fixed point with no isolated points
    const auto d = cb_derivative(e);
    EXPECT_EQ(cb_derivative(d), d);
    EXPECT_TRUE(isolated_count(d).is_zero());
    EXPECT_TRUE(isolated_count(e).is_zero());
    EXPECT_TRUE(has_kernel(e));
}

TEST(Normalize, MixedCompactificationIsIrreducible) {
    const auto nf = normalize(ex("seq1pc(U(cantor, pt))"));
    ASSERT_FALSE(nf.is_canonical());
    EXPECT_EQ(nf.irreducible().to_string(), "seq1pc(U(cantor, pt))");
    EXPECT_EQ(normalize(ex("seq1pc(U(pt, cantor))")), nf);
    EXPECT_EQ(normalize(ex("seq1pc(U(pt, cantor, pt))")), normalize(ex("seq1pc(U(cantor, I(1)))")));
}

TEST(Normalize, IntervalDecomposition) {
    EXPECT_EQ(normalize(ex("I(4)")), canon(CanonicalEndSpace::discrete(5)));
    EXPECT_EQ(normalize(ex("I(w^3*2 + w + 1)")), canon(CanonicalEndSpace::orbit(2, Ordinal::finite(3))));
    EXPECT_EQ(normalize(ex("U(I(w), I(w), pt)")), canon(CanonicalEndSpace::orbit(2, Ordinal::finite(1))));
    EXPECT_EQ(normalize(ex("U(cantor, cantor)")), canon(CanonicalEndSpace::cantor_plus()));
    EXPECT_EQ(normalize(ex("U(cantor, pt, pt)")),
              canon(CanonicalEndSpace::cantor_plus(ScatteredPart::discrete(2))));
    EXPECT_EQ(normalize(ex("empty")), canon(CanonicalEndSpace::empty()));
    EXPECT_EQ(normalize(ex("U(pt, pt, pt)")).to_string(), "Discrete(3)");
    EXPECT_EQ(normalize(ex("U(cantor, I(w^2))")).to_string(), "Cantor + O(1, 2)");
}

TEST(Derivative, Examples) {
    EXPECT_EQ(cb_derivative(ex("I(w)")), ex("pt"));
    EXPECT_EQ(cb_derivative(ex("U(pt, cantor)")), ex("cantor"));
    EXPECT_EQ(cb_derivative(ex("seq1pc(pt)")), ex("pt"));
    EXPECT_EQ(cb_derivative(ex("I(w*3+2)")), ex("I(2)"));
    EXPECT_EQ(cb_derivative(ex("I(w^2)")), ex("I(w)"));
    EXPECT_EQ(cb_derivative(ex("I(3)")), ex("empty"));
}

TEST(CbRank, Examples) {
    EXPECT_EQ(cb_rank(ex("I(w^3)")), Ordinal::finite(4));
    EXPECT_EQ(cb_rank(ex("cantor")), Ordinal{});
    EXPECT_EQ(cb_rank(ex("I(6)")), Ordinal::finite(1));
    EXPECT_THROW(cb_rank(ex("seq1pc(U(cantor, pt))")), RankUndecidable);
}

TEST(IsolatedCount, Examples) {
    EXPECT_EQ(isolated_count(ex("cantor")), Count(0));
    EXPECT_EQ(isolated_count(ex("I(w*2+3)")), Count::omega());
    EXPECT_EQ(isolated_count(ex("U(pt, pt, cantor)")), Count(2));
}

TEST(TdMax, Examples) {
    EXPECT_EQ(td_max(CanonicalEndSpace::orbit(3, Ordinal::finite(2))), (TdMax{3, true}));
    EXPECT_EQ(td_max(ex("cantor")), (TdMax{0, true}));
    EXPECT_EQ(td_max(ex("U(cantor, pt, pt, pt, pt)")), (TdMax{4, true}));
    const auto lower = td_max(ex("U(seq1pc(U(cantor, pt)), I(w^5*4))"));
    EXPECT_FALSE(lower.exact);
    EXPECT_EQ(lower.value, 4u);
}

TEST(TdMax, GermClassOracle) {
    // Cantor + p points: the isolated points form one finite germ class, the
    // Cantor points an infinite one; only the former can be distinguished.
    for (std::uint64_t p = 0; p < 8; ++p) {
        std::vector<EndSpaceExpr> parts{EndSpaceExpr::cantor()};
        for (std::uint64_t i = 0; i < p; ++i) parts.push_back(EndSpaceExpr::point());
        const auto e = EndSpaceExpr::union_of(parts);
        EXPECT_EQ(td_max(e).value, isolated_count(e).value());
    }
}

TEST(Homeomorphic, Examples) {
    EXPECT_EQ(is_homeomorphic(ex("U(I(w), pt, pt)"), ex("I(w)")), Decision::Yes);
    EXPECT_EQ(is_homeomorphic(ex("cantor"), ex("I(w^w)")), Decision::No);
    EXPECT_EQ(is_homeomorphic(ex("seq1pc(U(cantor, pt))"), ex("U(cantor, I(w))")), Decision::Unknown);
    EXPECT_EQ(is_homeomorphic(ex("I(w)"), ex("U(I(w), pt)")), Decision::Yes);
}

TEST(EndspaceProperty, Idempotence) {
    Rng rng(21);
    for (int i = 0; i < 1000; ++i) {
        const auto e = testsupport::random_expr(rng, {});
        const auto nf = normalize(e);
        EXPECT_EQ(normalize(embed(nf)), nf) << e.to_string();
    }
}

// One random rewrite step: replace a random subterm by the embedding of its
// normal form, or reorder / regroup the children of a union.
EndSpaceExpr rewrite_somewhere(Rng& rng, const EndSpaceExpr& e) {
    using K = EndSpaceExpr::Kind;
    if (testsupport::coin(rng, 0.25)) return embed(normalize(e));
    switch (e.kind()) {
    case K::Union: {
        std::vector<EndSpaceExpr> kids(e.children().begin(), e.children().end());
        std::shuffle(kids.begin(), kids.end(), rng);
        const auto i = testsupport::uniform(rng, 0, kids.size() - 1);
        kids[i] = rewrite_somewhere(rng, kids[i]);
        if (kids.size() > 2 && testsupport::coin(rng, 0.3)) {
            auto grouped = EndSpaceExpr::union_of({kids[0], kids[1]});
            kids.erase(kids.begin(), kids.begin() + 2);
            kids.push_back(grouped);
        }
        return EndSpaceExpr::union_of(std::move(kids));
    }
    case K::SeqCompactify: return EndSpaceExpr::seq_compactify(rewrite_somewhere(rng, e.child()));
    default: return e;
    }
}

TEST(EndspaceProperty, Confluence) {
    Rng rng(22);
    for (int i = 0; i < 60; ++i) {
        testsupport::ExprOptions o;
        o.depth = 6;
        const auto e = testsupport::random_expr(rng, o);
        const auto expected = normalize(e);
        for (int order = 0; order < 100; ++order) {
            auto cur = e;
            const auto steps = testsupport::uniform(rng, 1, 6);
            for (std::uint64_t s = 0; s < steps; ++s) cur = rewrite_somewhere(rng, cur);
            ASSERT_EQ(normalize(cur), expected) << e.to_string() << " vs " << cur.to_string();
        }
    }
}

TEST(EndspaceProperty, DerivativeCompatibility) {
    Rng rng(23);
    int checked = 0;
    for (int i = 0; i < 3000 && checked < 500; ++i) {
        const auto e = testsupport::random_expr(rng, {});
        const auto nf = normalize(e);
        if (!nf.is_canonical()) continue;
        ++checked;
        const auto d = normalize(cb_derivative(e));
        ASSERT_TRUE(d.is_canonical()) << e.to_string();
        EXPECT_EQ(d.canonical(), testsupport::predicted_derivative(nf.canonical())) << e.to_string();
    }
    EXPECT_EQ(checked, 500);
}

TEST(EndspaceProperty, DerivativeOfOrbitDropsRankByOne) {
    Rng rng(24);
    for (int i = 0; i < 300; ++i) {
        const auto n = testsupport::uniform(rng, 1, 5);
        const auto delta = testsupport::random_ordinal(rng, 2);
        const auto c = CanonicalEndSpace::orbit(n, delta.successor());
        const auto d = normalize(cb_derivative(embed(c)));
        ASSERT_TRUE(d.is_canonical());
        // rank(X) = 1 + rank(X')
        EXPECT_EQ(Ordinal::finite(1) + cb_rank(d.canonical()), cb_rank(c));
        if (delta.is_zero()) {
            EXPECT_EQ(d.canonical(), CanonicalEndSpace::discrete(n));
        } else if (delta.is_finite()) {
            EXPECT_EQ(d.canonical(), CanonicalEndSpace::orbit(n, delta));
        }
    }
}

TEST(EndspaceProperty, RawAndNormalFormAgree) {
    Rng rng(25);
    for (int i = 0; i < 1000; ++i) {
        const auto e = testsupport::random_expr(rng, {});
        const auto nf = normalize(e);
        if (!nf.is_canonical()) continue;
        const auto back = embed(nf);
        EXPECT_EQ(isolated_count(e), isolated_count(back)) << e.to_string();
        EXPECT_EQ(cb_rank(e), cb_rank(back));
        EXPECT_EQ(td_max(e), td_max(back));
        EXPECT_EQ(has_kernel(e), has_kernel(back));
        EXPECT_EQ(rank_profile(e), rank_profile(back)) << e.to_string();
    }
}

TEST(EndspaceProperty, HomeomorphismIsEquivalenceOnCanonicalFragment) {
    Rng rng(26);
    std::vector<EndSpaceExpr> pool;
    while (pool.size() < 60) {
        testsupport::ExprOptions o;
        o.depth = 2;
        o.ordinal_height = 1;
        auto e = testsupport::random_expr(rng, o);
        if (normalize(e).is_canonical()) pool.push_back(e);
    }
    for (const auto& a : pool) {
        EXPECT_EQ(is_homeomorphic(a, a), Decision::Yes);
        for (const auto& b : pool) {
            const auto ab = is_homeomorphic(a, b);
            EXPECT_EQ(ab, is_homeomorphic(b, a));
            EXPECT_NE(ab, Decision::Unknown);
            if (ab == Decision::Yes) {
                const auto ia = invariants(a), ib = invariants(b);
                EXPECT_EQ(ia.countable, ib.countable);
                EXPECT_EQ(ia.isolated, ib.isolated);
                EXPECT_EQ(ia.scattered_rank, ib.scattered_rank);
                EXPECT_EQ(ia.has_kernel, ib.has_kernel);
                EXPECT_EQ(ia.td, ib.td);
                for (const auto& c : pool)
                    if (is_homeomorphic(b, c) == Decision::Yes) {
                        EXPECT_EQ(is_homeomorphic(a, c), Decision::Yes);
                    }
            }
        }
    }
}

std::vector<CanonicalEndSpace> small_canonicals() {
    std::vector<Ordinal> alphas;
    for (std::uint64_t a = 0; a <= 2; ++a)
        for (std::uint64_t b = 0; b <= 2; ++b)
            for (std::uint64_t c = 0; c <= 2; ++c) {
                Ordinal o;
                if (a) o = o + Ordinal::omega_pow(Ordinal::finite(2), a);
                if (b) o = o + Ordinal::omega_pow(Ordinal::finite(1), b);
                o = o + Ordinal::finite(c);
                if (!o.is_zero()) alphas.push_back(o);
            }
    std::vector<ScatteredPart> parts{ScatteredPart::none()};
    for (std::uint64_t n = 1; n <= 5; ++n) {
        parts.push_back(ScatteredPart::discrete(n));
        for (const auto& a : alphas) parts.push_back(ScatteredPart::orbit(n, a));
    }
    std::vector<CanonicalEndSpace> out;
    for (const auto& s : parts) {
        out.push_back({false, s});
        out.push_back({true, s});
    }
    return out;
}

TEST(EndspaceProperty, CanonicalFormsAreSeparatedByInvariants) {
    const auto all = small_canonicals();
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const auto a = embed(all[i]), b = embed(all[j]);
            const auto ia = invariants(a), ib = invariants(b);
            const bool differ = ia.countable != ib.countable || ia.has_kernel != ib.has_kernel ||
                                ia.scattered_rank != ib.scattered_rank ||
                                rank_profile(a).top != rank_profile(b).top;
            EXPECT_TRUE(differ) << all[i].to_string() << " / " << all[j].to_string();
        }
}

} // namespace
