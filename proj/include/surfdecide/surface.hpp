#pragma once

/**
 * @file surface.hpp
 * @brief Surface descriptors (genus, boundary, marked end-space pair).
 *
 * A surface is determined up to homeomorphism by its genus, its number of
 * boundary circles and the nested pair (Ends, Ends_np). The pair is written as
 * an end-space expression whose leaves carry a planar / nonplanar mark; the
 * compactification point of seq1pc carries its own mark, and lim1pc is marked
 * as a whole like a leaf.
 */

#include <surfdecide/endspace.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfdecide {

enum class Mark { Planar, Nonplanar };

class MarkedEndSpace {
public:
    using Kind = EndSpaceExpr::Kind;

    MarkedEndSpace() : node_(std::make_shared<const Node>()) {}

    static MarkedEndSpace empty() { return {}; }
    static MarkedEndSpace point(Mark m = Mark::Planar) { return make(Kind::Point, {}, m, {}); }
    static MarkedEndSpace cantor(Mark m = Mark::Planar) { return make(Kind::Cantor, {}, m, {}); }
    static MarkedEndSpace interval(Ordinal b, Mark m = Mark::Planar) { return make(Kind::Interval, std::move(b), m, {}); }

    static MarkedEndSpace union_of(std::vector<MarkedEndSpace> parts) {
        std::vector<MarkedEndSpace> flat;
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
        return make(Kind::Union, {}, Mark::Planar, std::move(flat));
    }

    /// `point_mark` is the mark of the added point at infinity.
    static MarkedEndSpace seq_compactify(MarkedEndSpace child, Mark point_mark = Mark::Planar) {
        if (child.kind() == Kind::Empty) throw std::invalid_argument("seq1pc: child must be nonempty");
        return make(Kind::SeqCompactify, {}, point_mark, {std::move(child)});
    }

    static MarkedEndSpace limit_compactify(Ordinal lambda, Mark m = Mark::Planar) {
        if (lambda.kind() != OrdinalKind::Limit) throw std::invalid_argument("lim1pc: argument must be a limit ordinal");
        return make(Kind::LimitCompactify, std::move(lambda), m, {});
    }

    Kind kind() const { return node_->kind; }
    const Ordinal& ordinal() const { return node_->ordinal; }
    Mark mark() const { return node_->mark; }
    std::span<const MarkedEndSpace> children() const { return node_->children; }
    const MarkedEndSpace& child() const { return node_->children.front(); }

    friend bool operator==(const MarkedEndSpace& a, const MarkedEndSpace& b) {
        if (a.node_ == b.node_) return true;
        return a.kind() == b.kind() && a.mark() == b.mark() && a.ordinal() == b.ordinal() &&
               std::ranges::equal(a.children(), b.children());
    }

    /// The underlying end-space Ends(S).
    EndSpaceExpr unmarked() const {
        switch (kind()) {
        case Kind::Empty: return EndSpaceExpr::empty();
        case Kind::Point: return EndSpaceExpr::point();
        case Kind::Cantor: return EndSpaceExpr::cantor();
        case Kind::Interval: return EndSpaceExpr::interval(ordinal());
        case Kind::LimitCompactify: return EndSpaceExpr::limit_compactify(ordinal());
        case Kind::SeqCompactify: return EndSpaceExpr::seq_compactify(child().unmarked());
        case Kind::Union: {
            std::vector<EndSpaceExpr> parts;
            for (const auto& c : children()) parts.push_back(c.unmarked());
            return EndSpaceExpr::union_of(std::move(parts));
        }
        }
        return {};
    }

    bool any_mark(Mark m) const {
        if (kind() == Kind::Empty) return false;
        if (kind() != Kind::Union && mark() == m) return true;
        return std::ranges::any_of(children(), [m](const auto& c) { return c.any_mark(m); });
    }

    /// Planar marks are the default and are omitted when printing.
    std::string to_string() const {
        const auto suffix = [this] { return mark() == Mark::Nonplanar ? std::string("!np") : std::string(); };
        switch (kind()) {
        case Kind::Empty: return "empty";
        case Kind::Point: return "pt" + suffix();
        case Kind::Cantor: return "cantor" + suffix();
        case Kind::Interval: return "I(" + ordinal().to_string() + ")" + suffix();
        case Kind::LimitCompactify:
            return "lim1pc(" + ordinal().to_string() + (mark() == Mark::Nonplanar ? "; np)" : ")");
        case Kind::SeqCompactify:
            return "seq1pc(" + child().to_string() + (mark() == Mark::Nonplanar ? "; np)" : ")");
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
        Kind kind = Kind::Empty;
        Ordinal ordinal;
        Mark mark = Mark::Planar;
        std::vector<MarkedEndSpace> children;
    };

    explicit MarkedEndSpace(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static MarkedEndSpace make(Kind k, Ordinal o, Mark m, std::vector<MarkedEndSpace> kids) {
        return MarkedEndSpace(std::make_shared<const Node>(Node{k, std::move(o), m, std::move(kids)}));
    }

    std::shared_ptr<const Node> node_;
};

/// Finite genus or infinity.
class Genus {
public:
    constexpr Genus() = default;
    constexpr explicit Genus(std::uint64_t g) : g_(g) {}
    static constexpr Genus infinite() {
        Genus g;
        g.infinite_ = true;
        return g;
    }
    constexpr bool is_infinite() const { return infinite_; }
    constexpr std::uint64_t value() const { return g_; }
    friend constexpr bool operator==(Genus, Genus) = default;
    std::string to_string() const { return infinite_ ? "inf" : std::to_string(g_); }

private:
    std::uint64_t g_ = 0;
    bool infinite_ = false;
};

struct SurfaceDescriptor {
    Genus genus;
    std::uint64_t boundary = 0;
    MarkedEndSpace ends;

    std::string to_string() const {
        return "surface(genus=" + genus.to_string() + ", boundary=" + std::to_string(boundary) +
               ", ends=" + ends.to_string() + ")";
    }
};

struct ValidationError {
    enum class Kind { ClosednessViolation, GenusMarkMismatch };
    Kind kind;
    std::string path; ///< child-index path from the root, e.g. "ends/1/0"
    std::string message;
};

inline const char* to_string(ValidationError::Kind k) {
    return k == ValidationError::Kind::ClosednessViolation ? "ClosednessViolation" : "GenusMarkMismatch";
}

namespace detail {

inline std::optional<ValidationError> check_closed(const MarkedEndSpace& e, const std::string& path) {
    using K = EndSpaceExpr::Kind;
    if (e.kind() == K::SeqCompactify && e.mark() == Mark::Planar && e.child().any_mark(Mark::Nonplanar))
        return ValidationError{ValidationError::Kind::ClosednessViolation, path,
                               "compactification point at " + path +
                                   " is a limit of nonplanar ends but is marked planar"};
    for (std::size_t i = 0; i < e.children().size(); ++i)
        if (auto err = check_closed(e.children()[i], path + "/" + std::to_string(i))) return err;
    return std::nullopt;
}

} // namespace detail

/// Checks that Ends_np is closed and that genus is infinite exactly when it is nonempty.
inline std::optional<ValidationError> validate(const SurfaceDescriptor& d) {
    if (auto err = detail::check_closed(d.ends, "ends")) return err;
    const bool nonplanar = d.ends.any_mark(Mark::Nonplanar);
    if (nonplanar != d.genus.is_infinite())
        return ValidationError{ValidationError::Kind::GenusMarkMismatch, "ends",
                               nonplanar ? "nonplanar ends require genus=inf"
                                         : "genus=inf requires at least one nonplanar end"};
    return std::nullopt;
}

/// Isolated ends that are planar. A planar end has a nonplanar-free neighbourhood,
/// so isolation in Ends(S) and in Ends(S) minus Ends_np(S) agree for it.
inline Count punctures_of(const MarkedEndSpace& e) {
    using K = EndSpaceExpr::Kind;
    switch (e.kind()) {
    case K::Empty:
    case K::Cantor: return Count(0);
    case K::Point: return Count(e.mark() == Mark::Planar ? 1 : 0);
    case K::Interval:
        if (e.mark() == Mark::Nonplanar) return Count(0);
        return e.ordinal().is_finite() ? Count(e.ordinal().finite_value() + 1) : Count::omega();
    case K::LimitCompactify: return e.mark() == Mark::Planar ? Count::omega() : Count(0);
    case K::SeqCompactify: return punctures_of(e.child()).is_zero() ? Count(0) : Count::omega();
    case K::Union: {
        Count c;
        for (const auto& k : e.children()) c = c + punctures_of(k);
        return c;
    }
    }
    return Count(0);
}

inline Count punctures_of(const SurfaceDescriptor& d) { return punctures_of(d.ends); }

/// An end accumulated by genus and punctures: a nonplanar compactification point over punctures.
inline bool has_mixed_end(const MarkedEndSpace& e) {
    if (e.kind() == EndSpaceExpr::Kind::SeqCompactify && e.mark() == Mark::Nonplanar &&
        !punctures_of(e.child()).is_zero())
        return true;
    return std::ranges::any_of(e.children(), [](const auto& c) { return has_mixed_end(c); });
}

inline bool has_mixed_end(const SurfaceDescriptor& d) { return has_mixed_end(d.ends); }

/// Infinitely generated fundamental group: infinite genus or infinitely many ends.
inline bool is_infinite_type(const SurfaceDescriptor& d) {
    const auto ends = d.ends.unmarked();
    return d.genus.is_infinite() || has_kernel(ends) || isolated_count(ends).is_infinite();
}

struct SurfaceInvariants {
    Genus genus;
    std::uint64_t boundary = 0;
    Count punctures;
    bool mixed_end = false;
    SpaceInvariants ends;
};

inline SurfaceInvariants invariants(const SurfaceDescriptor& d) {
    return {d.genus, d.boundary, punctures_of(d), has_mixed_end(d), invariants(d.ends.unmarked())};
}

namespace detail {

/// Splits Ends into (X, Y minus X) when every top-level summand is uniformly marked.
inline std::optional<std::pair<EndSpaceExpr, EndSpaceExpr>> clopen_split(const MarkedEndSpace& e) {
    std::vector<MarkedEndSpace> summands;
    if (e.kind() == EndSpaceExpr::Kind::Union)
        summands.assign(e.children().begin(), e.children().end());
    else
        summands.push_back(e);
    std::vector<EndSpaceExpr> nonplanar, planar;
    for (const auto& s : summands) {
        const bool np = s.any_mark(Mark::Nonplanar);
        const bool p = s.any_mark(Mark::Planar);
        if (np && p) return std::nullopt;
        (np ? nonplanar : planar).push_back(s.unmarked());
    }
    return std::pair{EndSpaceExpr::union_of(std::move(nonplanar)), EndSpaceExpr::union_of(std::move(planar))};
}

} // namespace detail

/**
 * Surface homeomorphism. Refuted by genus, boundary, end-space or puncture
 * mismatch; decided positively only when Ends_np is a union of whole
 * top-level summands on both sides.
 */
inline Decision surfaces_homeomorphic(const SurfaceDescriptor& a, const SurfaceDescriptor& b) {
    if (!(a.genus == b.genus) || a.boundary != b.boundary) return Decision::No;
    const auto ends = is_homeomorphic(a.ends.unmarked(), b.ends.unmarked());
    if (ends == Decision::No) return Decision::No;
    if (!(punctures_of(a) == punctures_of(b))) return Decision::No;

    const bool a_planar_empty = !a.ends.any_mark(Mark::Planar);
    const bool b_planar_empty = !b.ends.any_mark(Mark::Planar);
    if (a_planar_empty != b_planar_empty) return Decision::No;

    const auto sa = detail::clopen_split(a.ends);
    const auto sb = detail::clopen_split(b.ends);
    if (!sa || !sb) return Decision::Unknown;
    const auto np = is_homeomorphic(sa->first, sb->first);
    const auto pl = is_homeomorphic(sa->second, sb->second);
    if (np == Decision::No || pl == Decision::No) return Decision::No;
    if (np == Decision::Yes && pl == Decision::Yes) return Decision::Yes;
    return Decision::Unknown;
}

} // namespace surfdecide
