#pragma once

// Random generators and independent oracles shared by the unit suites and
// the acceptance binary.

#include <surfdecide/endspace.hpp>
#include <surfdecide/homology.hpp>
#include <surfdecide/ordinal.hpp>
#include <surfdecide/surface.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace testsupport {

using namespace surfdecide;
using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Ordinal below w^k with finite exponents, coefficients in [0, maxc].
inline Ordinal below_omega_pow(Rng& rng, unsigned k, std::uint64_t maxc = 4) {
    Ordinal r;
    for (unsigned e = k; e-- > 0;) {
        const auto c = uniform(rng, 0, maxc);
        if (c) r = r + Ordinal::omega_pow(Ordinal::finite(e), c);
    }
    return r;
}

/// Ordinal with exponents nested up to `height` levels.
inline Ordinal random_ordinal(Rng& rng, int height, std::uint64_t maxc = 3) {
    if (height <= 0) return Ordinal::finite(uniform(rng, 0, maxc));
    Ordinal r;
    const auto terms = uniform(rng, 0, 3);
    for (std::uint64_t i = 0; i < terms; ++i) {
        // sums in any order; addition brings them to CNF
        r = r + Ordinal::omega_pow(random_ordinal(rng, height - 1, maxc), uniform(rng, 1, maxc));
    }
    return r;
}

inline Ordinal random_limit(Rng& rng, int height) {
    auto o = random_ordinal(rng, height);
    return o.kind() == OrdinalKind::Limit ? o : o + Ordinal::omega();
}

/// w * x, computed term by term from left distributivity: w * w^e = w^(1+e).
inline Ordinal omega_times(const Ordinal& x) {
    Ordinal r;
    for (const auto& t : x.terms()) r = r + Ordinal::omega_pow(Ordinal::finite(1) + t.exp(), t.coefficient);
    return r;
}

/// b with its finite part removed: the largest limit ordinal (or 0) below or equal to b.
inline Ordinal limit_part(const Ordinal& b) {
    std::vector<Ordinal::Term> ts;
    for (const auto& t : b.terms())
        if (!t.exp().is_zero()) ts.push_back(t);
    return Ordinal::from_terms(std::move(ts));
}

/// CB rank of the point x of an ordinal interval: (least exponent of x) + 1, and 1 for x = 0.
inline Ordinal point_rank(const Ordinal& x) {
    if (x.is_zero()) return Ordinal::finite(1);
    return x.terms().back().exp().successor();
}

/**
 * Highest point rank in [0,b] and how many points have it. Every x <= b is
 * either one of the block points prefix_i + w^{e_i} * c (c <= n_i) or has a
 * smaller least exponent than one of them, so only those are enumerated.
 */
inline std::pair<Ordinal, std::uint64_t> top_points(const Ordinal& b) {
    Ordinal best = Ordinal::finite(1);
    std::uint64_t count = 1; // the point 0
    Ordinal prefix;
    for (const auto& t : b.terms()) {
        for (std::uint64_t c = 1; c <= std::min<std::uint64_t>(t.coefficient, 64); ++c) {
            const Ordinal x = prefix + Ordinal::omega_pow(t.exp(), c);
            const Ordinal r = point_rank(x);
            const auto cmp = compare(r, best);
            if (cmp > 0) {
                best = r;
                count = 1;
            } else if (cmp == 0) {
                ++count;
            }
        }
        prefix = prefix + Ordinal::omega_pow(t.exp(), t.coefficient);
    }
    return {best, count};
}

/// Analytic derivative of a canonical space: O(n,a) -> O(n,-1+a), Discrete -> Empty.
inline CanonicalEndSpace predicted_derivative(const CanonicalEndSpace& c) {
    CanonicalEndSpace r;
    r.cantor = c.cantor;
    switch (c.scattered.kind) {
    case ScatteredPart::Kind::None:
    case ScatteredPart::Kind::Discrete: break;
    case ScatteredPart::Kind::Orbit: {
        const auto& a = c.scattered.alpha;
        if (!a.is_finite())
            r.scattered = ScatteredPart::orbit(c.scattered.count, a);
        else if (a.finite_value() == 1)
            r.scattered = ScatteredPart::discrete(c.scattered.count);
        else
            r.scattered = ScatteredPart::orbit(c.scattered.count, Ordinal::finite(a.finite_value() - 1));
        break;
    }
    }
    return r;
}

struct ExprOptions {
    int depth = 4;
    int ordinal_height = 2;
    bool allow_cantor = true;
    bool allow_empty = true;
};

inline EndSpaceExpr random_expr(Rng& rng, const ExprOptions& o) {
    const auto leaf = [&]() -> EndSpaceExpr {
        switch (uniform(rng, 0, o.allow_cantor ? 4 : 3)) {
        case 0: return EndSpaceExpr::point();
        case 1: return EndSpaceExpr::interval(random_ordinal(rng, o.ordinal_height));
        case 2: return EndSpaceExpr::limit_compactify(random_limit(rng, o.ordinal_height));
        case 3: return o.allow_empty && coin(rng, 0.2) ? EndSpaceExpr::empty() : EndSpaceExpr::point();
        default: return EndSpaceExpr::cantor();
        }
    };
    if (o.depth <= 0 || coin(rng, 0.3)) return leaf();
    ExprOptions sub = o;
    sub.depth = o.depth - 1;
    if (coin(rng)) {
        std::vector<EndSpaceExpr> parts;
        const auto n = uniform(rng, 2, 4);
        for (std::uint64_t i = 0; i < n; ++i) parts.push_back(random_expr(rng, sub));
        return EndSpaceExpr::union_of(std::move(parts));
    }
    auto child = random_expr(rng, sub);
    if (child.kind() == EndSpaceExpr::Kind::Empty) child = EndSpaceExpr::point();
    return EndSpaceExpr::seq_compactify(std::move(child));
}

/// Random valid marked expression together with a matching genus.
inline SurfaceDescriptor random_descriptor(Rng& rng, int depth = 4) {
    const auto mark = [&] { return coin(rng, 0.3) ? Mark::Nonplanar : Mark::Planar; };
    std::function<MarkedEndSpace(int)> gen = [&](int d) -> MarkedEndSpace {
        if (d <= 0 || coin(rng, 0.35)) {
            switch (uniform(rng, 0, 4)) {
            case 0: return MarkedEndSpace::point(mark());
            case 1: return MarkedEndSpace::interval(random_ordinal(rng, 1), mark());
            case 2: return MarkedEndSpace::limit_compactify(random_limit(rng, 1), mark());
            case 3: return MarkedEndSpace::cantor(mark());
            default: return MarkedEndSpace::interval(Ordinal::finite(uniform(rng, 0, 6)), mark());
            }
        }
        if (coin(rng)) {
            std::vector<MarkedEndSpace> parts;
            const auto n = uniform(rng, 2, 3);
            for (std::uint64_t i = 0; i < n; ++i) parts.push_back(gen(d - 1));
            return MarkedEndSpace::union_of(std::move(parts));
        }
        auto child = gen(d - 1);
        // closedness: a limit of nonplanar ends is nonplanar
        const Mark m = child.any_mark(Mark::Nonplanar) ? Mark::Nonplanar : mark();
        return MarkedEndSpace::seq_compactify(std::move(child), m);
    };
    SurfaceDescriptor d;
    d.ends = gen(depth);
    d.boundary = 0;
    d.genus = d.ends.any_mark(Mark::Nonplanar) ? Genus::infinite() : Genus(coin(rng, 0.7) ? 0 : uniform(rng, 1, 5));
    return d;
}

/// gcd of all j x j minors, by brute force over row and column subsets (small matrices only).
inline BigInt gcd_of_minors(const IntegerMatrix& a, std::size_t j) {
    const auto rows = a.rows(), cols = a.cols();
    BigInt g = 0;
    std::vector<bool> rsel(rows), csel(cols);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(j), true);
    do {
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(j), true);
        do {
            IntegerMatrix m(j, j);
            std::size_t ri = 0;
            for (std::size_t r = 0; r < rows; ++r) {
                if (!rsel[r]) continue;
                std::size_t ci = 0;
                for (std::size_t c = 0; c < cols; ++c)
                    if (csel[c]) m(ri, ci++) = a(r, c);
                ++ri;
            }
            BigInt d = m.determinant();
            if (d < 0) d = -d;
            g = boost::multiprecision::gcd(g, d);
        } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    return g;
}

/// Partitions of d into parts of size at most p, by direct recursion.
inline std::uint64_t partitions_bounded(int d, int p) {
    if (d == 0) return 1;
    if (p == 0 || d < 0) return 0;
    return partitions_bounded(d - p, p) + partitions_bounded(d, p - 1);
}

} // namespace testsupport
