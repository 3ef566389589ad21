#pragma once

/**
 * @file endspace.hpp
 * @brief Symbolic end-spaces (closed subsets of the Cantor set).
 *
 * Expressions are built from
 *
 *   empty | pt | I(b) = [0,b] | cantor | U(e1,...,ek)
 *   | seq1pc(e)   one-point compactification of countably many copies of e
 *   | lim1pc(l)   one-point compactification of the disjoint union of
 *                 [0, w^(l[i])] over the canonical fundamental sequence of l
 *
 * and normalize() reduces them to the classification of countable compact
 * spaces: every nonempty countable one is O(n, a) = n copies of [0, w^a] for
 * a unique pair, finite ones are kept apart as Discrete(m), and an uncountable
 * one with a scattered part that is clopen-separable from its kernel is
 * Cantor + (scattered part). Anything else is returned Irreducible.
 */

#include <surfdecide/ordinal.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace surfdecide {

/// A cardinal that is either a natural number or countably infinite.
class Count {
public:
    constexpr Count() = default;
    constexpr explicit Count(std::uint64_t n) : n_(n) {}
    static constexpr Count omega() {
        Count c;
        c.infinite_ = true;
        return c;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr std::uint64_t value() const { return n_; }
    constexpr bool is_zero() const { return !infinite_ && n_ == 0; }

    friend constexpr Count operator+(Count a, Count b) {
        if (a.infinite_ || b.infinite_) return omega();
        return Count(a.n_ + b.n_);
    }
    friend constexpr bool operator==(Count a, Count b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.n_ == b.n_);
    }

    std::string to_string() const { return infinite_ ? "w" : std::to_string(n_); }
    friend std::ostream& operator<<(std::ostream& os, Count c) { return os << c.to_string(); }

private:
    std::uint64_t n_ = 0;
    bool infinite_ = false;
};

class EndSpaceExpr {
public:
    enum class Kind { Empty, Point, Interval, Cantor, Union, SeqCompactify, LimitCompactify };

    EndSpaceExpr() : node_(empty_node()) {}

    static EndSpaceExpr empty() { return {}; }
    static EndSpaceExpr point() { return make(Kind::Point, {}, {}); }
    static EndSpaceExpr cantor() { return make(Kind::Cantor, {}, {}); }
    static EndSpaceExpr interval(Ordinal b) { return make(Kind::Interval, std::move(b), {}); }

    /// Flattens nested unions and drops empty summands; 0 or 1 survivors collapse.
    static EndSpaceExpr union_of(std::vector<EndSpaceExpr> parts) {
        std::vector<EndSpaceExpr> flat;
        for (auto& p : parts) {
            if (p.kind() == Kind::Union) {
                const auto kids = p.children();
                flat.insert(flat.end(), kids.begin(), kids.end());
            } else if (p.kind() != Kind::Empty) {
                flat.push_back(std::move(p));
            }
        }
        if (flat.empty()) return empty();
        if (flat.size() == 1) return flat.front();
        return make(Kind::Union, {}, std::move(flat));
    }

    static EndSpaceExpr seq_compactify(EndSpaceExpr child) {
        if (child.kind() == Kind::Empty) throw std::invalid_argument("seq1pc: child must be nonempty");
        return make(Kind::SeqCompactify, {}, {std::move(child)});
    }

    static EndSpaceExpr limit_compactify(Ordinal lambda) {
        if (lambda.kind() != OrdinalKind::Limit) throw std::invalid_argument("lim1pc: argument must be a limit ordinal");
        return make(Kind::LimitCompactify, std::move(lambda), {});
    }

    Kind kind() const { return node_->kind; }
    /// Argument of Interval / LimitCompactify.
    const Ordinal& ordinal() const { return node_->ordinal; }
    std::span<const EndSpaceExpr> children() const { return node_->children; }
    const EndSpaceExpr& child() const { return node_->children.front(); }

    friend bool operator==(const EndSpaceExpr& a, const EndSpaceExpr& b) {
        if (a.node_ == b.node_) return true;
        if (a.kind() != b.kind() || a.ordinal() != b.ordinal()) return false;
        return std::ranges::equal(a.children(), b.children());
    }
    friend std::ostream& operator<<(std::ostream& os, const EndSpaceExpr& x) { return os << x.to_string(); }

    std::string to_string() const {
        switch (kind()) {
        case Kind::Empty: return "empty";
        case Kind::Point: return "pt";
        case Kind::Cantor: return "cantor";
        case Kind::Interval: return "I(" + ordinal().to_string() + ")";
        case Kind::LimitCompactify: return "lim1pc(" + ordinal().to_string() + ")";
        case Kind::SeqCompactify: return "seq1pc(" + child().to_string() + ")";
        case Kind::Union: {
            std::string s = "U(";
            for (std::size_t i = 0; i < children().size(); ++i) {
                if (i) s += ", ";
                s += children()[i].to_string();
            }
            return s + ")";
        }
        }
        return "?";
    }

private:
    struct Node {
        Kind kind;
        Ordinal ordinal;
        std::vector<EndSpaceExpr> children;
    };

    explicit EndSpaceExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static EndSpaceExpr make(Kind k, Ordinal o, std::vector<EndSpaceExpr> kids) {
        return EndSpaceExpr(std::make_shared<const Node>(Node{k, std::move(o), std::move(kids)}));
    }

    static std::shared_ptr<const Node> empty_node() {
        static const auto n = std::make_shared<const Node>(Node{Kind::Empty, {}, {}});
        return n;
    }

    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Canonical forms
// ---------------------------------------------------------------------------

/// Countable (scattered) part of a canonical space: none, Discrete(m) or O(n, a) with a >= 1.
struct ScatteredPart {
    enum class Kind { None, Discrete, Orbit };
    Kind kind = Kind::None;
    std::uint64_t count = 0; ///< m for Discrete, n for O(n, a)
    Ordinal alpha;           ///< a for O(n, a)

    static ScatteredPart none() { return {}; }
    static ScatteredPart discrete(std::uint64_t m) {
        if (m == 0) return none();
        return {Kind::Discrete, m, {}};
    }
    static ScatteredPart orbit(std::uint64_t n, Ordinal alpha) {
        if (n == 0) return none();
        if (alpha.is_zero()) throw std::invalid_argument("O(n, 0) is represented as Discrete");
        return {Kind::Orbit, n, std::move(alpha)};
    }

    friend bool operator==(const ScatteredPart&, const ScatteredPart&) = default;
    friend std::ostream& operator<<(std::ostream& os, const ScatteredPart& x) { return os << x.to_string(); }

    /// Disjoint union: equal-rank orbits add, the strictly higher rank absorbs the lower.
    friend ScatteredPart operator+(const ScatteredPart& a, const ScatteredPart& b) {
        if (a.kind == Kind::None) return b;
        if (b.kind == Kind::None) return a;
        if (a.kind == Kind::Discrete && b.kind == Kind::Discrete) return discrete(a.count + b.count);
        if (a.kind == Kind::Discrete) return b;
        if (b.kind == Kind::Discrete) return a;
        const auto c = compare(a.alpha, b.alpha);
        if (c == 0) return orbit(a.count + b.count, a.alpha);
        return c > 0 ? a : b;
    }

    std::string to_string() const {
        switch (kind) {
        case Kind::None: return "Empty";
        case Kind::Discrete: return "Discrete(" + std::to_string(count) + ")";
        case Kind::Orbit: return "O(" + std::to_string(count) + ", " + alpha.to_string() + ")";
        }
        return "?";
    }
};

/// Empty | Discrete(m) | O(n, a) | Cantor + scattered part.
struct CanonicalEndSpace {
    bool cantor = false;
    ScatteredPart scattered;

    static CanonicalEndSpace empty() { return {}; }
    static CanonicalEndSpace discrete(std::uint64_t m) { return {false, ScatteredPart::discrete(m)}; }
    static CanonicalEndSpace orbit(std::uint64_t n, Ordinal a) { return {false, ScatteredPart::orbit(n, std::move(a))}; }
    static CanonicalEndSpace cantor_plus(ScatteredPart s = {}) { return {true, std::move(s)}; }

    bool is_empty() const { return !cantor && scattered.kind == ScatteredPart::Kind::None; }

    friend bool operator==(const CanonicalEndSpace&, const CanonicalEndSpace&) = default;
    friend std::ostream& operator<<(std::ostream& os, const CanonicalEndSpace& x) { return os << x.to_string(); }

    friend CanonicalEndSpace operator+(const CanonicalEndSpace& a, const CanonicalEndSpace& b) {
        return {a.cantor || b.cantor, a.scattered + b.scattered};
    }

    std::string to_string() const {
        if (!cantor) return scattered.to_string();
        if (scattered.kind == ScatteredPart::Kind::None) return "Cantor";
        return "Cantor + " + scattered.to_string();
    }
};

/// Result of normalize(): a canonical class, or a fully reduced expression outside the decidable fragment.
struct NormalForm {
    std::variant<CanonicalEndSpace, EndSpaceExpr> value;

    bool is_canonical() const { return value.index() == 0; }
    const CanonicalEndSpace& canonical() const { return std::get<0>(value); }
    const EndSpaceExpr& irreducible() const { return std::get<1>(value); }

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
    friend std::ostream& operator<<(std::ostream& os, const NormalForm& x) { return os << x.to_string(); }

    std::string to_string() const {
        return is_canonical() ? canonical().to_string() : "Irreducible(" + irreducible().to_string() + ")";
    }
};

/// An expression realising a canonical class.
inline EndSpaceExpr embed(const ScatteredPart& s) {
    switch (s.kind) {
    case ScatteredPart::Kind::None: return EndSpaceExpr::empty();
    case ScatteredPart::Kind::Discrete:
        return s.count == 1 ? EndSpaceExpr::point() : EndSpaceExpr::interval(Ordinal::finite(s.count - 1));
    case ScatteredPart::Kind::Orbit:
        // [0, w^a * n] is n copies of [0, w^a] when a >= 1
        return EndSpaceExpr::interval(Ordinal::omega_pow(s.alpha, s.count));
    }
    return {};
}

inline EndSpaceExpr embed(const CanonicalEndSpace& c) {
    if (!c.cantor) return embed(c.scattered);
    return EndSpaceExpr::union_of({EndSpaceExpr::cantor(), embed(c.scattered)});
}

inline EndSpaceExpr embed(const NormalForm& nf) {
    return nf.is_canonical() ? embed(nf.canonical()) : nf.irreducible();
}

class RankUndecidable : public std::runtime_error {
public:
    explicit RankUndecidable(const EndSpaceExpr& e)
        : std::runtime_error("Cantor-Bendixson rank undecidable for irreducible space " + e.to_string()) {}
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

inline NormalForm normalize(const EndSpaceExpr& e);

namespace detail {

inline CanonicalEndSpace interval_class(const Ordinal& b) {
    if (b.is_finite()) return CanonicalEndSpace::discrete(b.finite_value() + 1);
    // n1 copies of [0, w^g1] plus lower-rank pieces, which the leading block absorbs
    CanonicalEndSpace acc;
    Ordinal rest;
    for (const auto& t : b.terms()) {
        if (t.exp().is_zero()) {
            rest = Ordinal::finite(t.coefficient);
            continue;
        }
        acc = acc + CanonicalEndSpace::orbit(t.coefficient, t.exp());
    }
    return acc + (rest.is_zero() ? CanonicalEndSpace{} : CanonicalEndSpace::discrete(rest.finite_value()));
}

inline NormalForm seq_class(const NormalForm& child) {
    if (!child.is_canonical()) return {EndSpaceExpr::seq_compactify(child.irreducible())};
    const auto& c = child.canonical();
    if (c.cantor) {
        if (c.scattered.kind == ScatteredPart::Kind::None) return {CanonicalEndSpace::cantor_plus()};
        // the added point is accumulated by kernel and scattered material at once
        return {EndSpaceExpr::seq_compactify(embed(c))};
    }
    switch (c.scattered.kind) {
    case ScatteredPart::Kind::None: break;
    case ScatteredPart::Kind::Discrete: return {CanonicalEndSpace::orbit(1, Ordinal::finite(1))};
    case ScatteredPart::Kind::Orbit: return {CanonicalEndSpace::orbit(1, c.scattered.alpha.successor())};
    }
    throw std::logic_error("seq1pc of an empty space");
}

inline NormalForm union_class(std::span<const EndSpaceExpr> parts) {
    CanonicalEndSpace acc;
    std::vector<EndSpaceExpr> irreducible;
    for (const auto& p : parts) {
        auto nf = normalize(p);
        if (nf.is_canonical())
            acc = acc + nf.canonical();
        else
            irreducible.push_back(nf.irreducible());
    }
    if (irreducible.empty()) return {acc};
    // deterministic order so that the reduced form does not depend on summand order
    std::ranges::sort(irreducible, {}, [](const EndSpaceExpr& x) { return x.to_string(); });
    if (!acc.is_empty()) irreducible.push_back(embed(acc));
    return {EndSpaceExpr::union_of(std::move(irreducible))};
}

} // namespace detail

/// Rewrites an expression to its normal form. Total.
inline NormalForm normalize(const EndSpaceExpr& e) {
    using K = EndSpaceExpr::Kind;
    switch (e.kind()) {
    case K::Empty: return {CanonicalEndSpace::empty()};
    case K::Point: return {CanonicalEndSpace::discrete(1)};
    case K::Cantor: return {CanonicalEndSpace::cantor_plus()};
    case K::Interval: return {detail::interval_class(e.ordinal())};
    case K::LimitCompactify: return {CanonicalEndSpace::orbit(1, e.ordinal())};
    case K::SeqCompactify: return detail::seq_class(normalize(e.child()));
    case K::Union: return detail::union_class(e.children());
    }
    throw std::logic_error("normalize: unknown node");
}

/**
 * Structural derived set (isolated points removed).
 *
 * For I(b) the surviving points are the limit ordinals in [1,b], of order
 * type [1, div_omega(b)]. For lim1pc(l) the derived pieces have exponents
 * still cofinal in l, so the space is reproduced.
 */
inline EndSpaceExpr cb_derivative(const EndSpaceExpr& e) {
    using K = EndSpaceExpr::Kind;
    switch (e.kind()) {
    case K::Empty:
    case K::Point: return EndSpaceExpr::empty();
    case K::Cantor: return e;
    case K::Interval: {
        if (e.ordinal().is_finite()) return EndSpaceExpr::empty();
        const Ordinal q = e.ordinal().div_omega();
        if (!q.is_finite()) return EndSpaceExpr::interval(q);
        const auto m = q.finite_value(); // m >= 1 limit points
        return m == 1 ? EndSpaceExpr::point() : EndSpaceExpr::interval(Ordinal::finite(m - 1));
    }
    case K::Union: {
        std::vector<EndSpaceExpr> parts;
        for (const auto& c : e.children()) parts.push_back(cb_derivative(c));
        return EndSpaceExpr::union_of(std::move(parts));
    }
    case K::SeqCompactify: {
        auto d = cb_derivative(e.child());
        if (d.kind() == K::Empty) return EndSpaceExpr::point();
        return EndSpaceExpr::seq_compactify(std::move(d));
    }
    case K::LimitCompactify: return e;
    }
    throw std::logic_error("cb_derivative: unknown node");
}

inline Ordinal cb_rank(const ScatteredPart& s) {
    switch (s.kind) {
    case ScatteredPart::Kind::None: return {};
    case ScatteredPart::Kind::Discrete: return Ordinal::finite(1);
    case ScatteredPart::Kind::Orbit: return s.alpha.successor();
    }
    return {};
}

/// Rank of a canonical space; the filtration of Cantor + s stops at the kernel once s is gone.
inline Ordinal cb_rank(const CanonicalEndSpace& c) { return cb_rank(c.scattered); }

inline Ordinal cb_rank(const EndSpaceExpr& e) {
    auto nf = normalize(e);
    if (!nf.is_canonical()) throw RankUndecidable(nf.irreducible());
    return cb_rank(nf.canonical());
}

inline Count isolated_count(const EndSpaceExpr& e) {
    using K = EndSpaceExpr::Kind;
    switch (e.kind()) {
    case K::Empty:
    case K::Cantor: return Count(0);
    case K::Point: return Count(1);
    case K::Interval: return e.ordinal().is_finite() ? Count(e.ordinal().finite_value() + 1) : Count::omega();
    case K::LimitCompactify: return Count::omega();
    case K::SeqCompactify: return isolated_count(e.child()).is_zero() ? Count(0) : Count::omega();
    case K::Union: {
        Count c;
        for (const auto& k : e.children()) c = c + isolated_count(k);
        return c;
    }
    }
    return Count(0);
}

inline bool has_kernel(const EndSpaceExpr& e) {
    using K = EndSpaceExpr::Kind;
    switch (e.kind()) {
    case K::Cantor: return true;
    case K::SeqCompactify: return has_kernel(e.child());
    case K::Union: return std::ranges::any_of(e.children(), [](const auto& k) { return has_kernel(k); });
    default: return false;
    }
}

/**
 * Scattered-point rank profile: every rank 1..saturated occurs at infinitely
 * many points with a countable neighbourhood, and `top` (if nonzero) counts
 * the points of rank saturated+1. CB ranks inside a scattered open set have
 * no gaps, so this describes the whole profile.
 */
struct RankProfile {
    Ordinal saturated;
    std::uint64_t top = 0;

    friend bool operator==(const RankProfile&, const RankProfile&) = default;

    friend RankProfile operator+(const RankProfile& a, const RankProfile& b) {
        const auto c = compare(a.saturated, b.saturated);
        if (c == 0) return {a.saturated, a.top + b.top};
        // the lower profile's top rank is at most the higher saturation level
        return c > 0 ? a : b;
    }
};

inline RankProfile rank_profile(const EndSpaceExpr& e) {
    using K = EndSpaceExpr::Kind;
    switch (e.kind()) {
    case K::Empty:
    case K::Cantor: return {};
    case K::Point: return {{}, 1};
    case K::Interval: {
        const auto& b = e.ordinal();
        if (b.is_finite()) return {{}, b.finite_value() + 1};
        return {b.terms().front().exp(), b.terms().front().coefficient};
    }
    case K::LimitCompactify: return {e.ordinal(), 1};
    case K::Union: {
        RankProfile p;
        for (const auto& k : e.children()) p = p + rank_profile(k);
        return p;
    }
    case K::SeqCompactify: {
        const auto p = rank_profile(e.child());
        // every rank of the child now occurs infinitely often
        const Ordinal sat = p.top ? p.saturated.successor() : p.saturated;
        if (has_kernel(e.child())) return {sat, 0};
        return {sat, 1};
    }
    }
    return {};
}

/// Maximum size of a finite topologically distinguished subset: exact, or a certified lower bound.
struct TdMax {
    std::uint64_t value = 0;
    bool exact = true;

    friend bool operator==(const TdMax&, const TdMax&) = default;
    std::string to_string() const { return exact ? std::to_string(value) : ">=" + std::to_string(value); }
};

inline std::uint64_t td_max(const ScatteredPart& s) { return s.count; }
inline TdMax td_max(const CanonicalEndSpace& c) { return {td_max(c.scattered), true}; }

/**
 * A finite distinguished set is a union of whole finite germ classes. Points
 * with a countable neighbourhood share a germ exactly when their CB ranks agree,
 * so on irreducible forms the finite top-rank class of the scattered profile is
 * a certified lower bound.
 */
inline TdMax td_max(const EndSpaceExpr& e) {
    auto nf = normalize(e);
    if (nf.is_canonical()) return td_max(nf.canonical());
    return {rank_profile(nf.irreducible()).top, false};
}

struct SpaceInvariants {
    bool countable = true;
    Count isolated;
    std::optional<Ordinal> scattered_rank;
    bool has_kernel = false;
    TdMax td;
};

inline SpaceInvariants invariants(const EndSpaceExpr& e) {
    SpaceInvariants inv;
    const auto nf = normalize(e);
    inv.has_kernel = has_kernel(e);
    inv.countable = !inv.has_kernel;
    inv.isolated = isolated_count(e);
    if (nf.is_canonical()) {
        inv.scattered_rank = cb_rank(nf.canonical());
        inv.td = td_max(nf.canonical());
    } else {
        inv.td = {rank_profile(nf.irreducible()).top, false};
    }
    return inv;
}

enum class Decision { Yes, No, Unknown };

inline const char* to_string(Decision d) {
    switch (d) {
    case Decision::Yes: return "Yes";
    case Decision::No: return "No";
    case Decision::Unknown: return "Unknown";
    }
    return "?";
}

/// Homeomorphism test: decided on the canonical fragment, otherwise only refuted by differing invariants.
inline Decision is_homeomorphic(const EndSpaceExpr& a, const EndSpaceExpr& b) {
    const auto na = normalize(a);
    const auto nb = normalize(b);
    if (na.is_canonical() && nb.is_canonical()) return na == nb ? Decision::Yes : Decision::No;
    if (!na.is_canonical() && !nb.is_canonical() && na == nb) return Decision::Yes;

    const auto ia = invariants(a);
    const auto ib = invariants(b);
    if (ia.countable != ib.countable || ia.has_kernel != ib.has_kernel || !(ia.isolated == ib.isolated))
        return Decision::No;
    if (ia.scattered_rank && ib.scattered_rank && *ia.scattered_rank != *ib.scattered_rank) return Decision::No;
    return Decision::Unknown;
}

} // namespace surfdecide
