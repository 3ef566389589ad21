#pragma once

/**
 * @file ordinal.hpp
 * @brief Countable ordinals below epsilon_0 in Cantor normal form.
 *
 * An ordinal is stored as its unique Cantor normal form
 *
 *     w^e1 * n1 + w^e2 * n2 + ... + w^ek * nk,    e1 > e2 > ... > ek,  ni >= 1
 *
 * where each exponent is itself an Ordinal. The empty term list is 0.
 * Because the representation is unique, equality is syntactic.
 *
 * Only the arithmetic needed by the end-space calculus is provided:
 * comparison, addition, the successor/limit split, the canonical
 * fundamental sequence of a limit, and the derived-set quotient
 * div_omega().
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace surfdecide {

enum class OrdinalKind { Zero, Successor, Limit };

class Ordinal {
public:
    struct Term {
        std::shared_ptr<const Ordinal> exponent;
        std::uint64_t coefficient;

        const Ordinal& exp() const { return *exponent; }
    };

    Ordinal() = default;

    static Ordinal finite(std::uint64_t n) {
        Ordinal r;
        if (n != 0) r.terms_.push_back(Term{zero_ptr(), n});
        return r;
    }

    static Ordinal omega() { return omega_pow(finite(1)); }

    /// w^exponent * coefficient (coefficient 0 yields 0).
    static Ordinal omega_pow(const Ordinal& exponent, std::uint64_t coefficient = 1) {
        Ordinal r;
        if (coefficient != 0)
            r.terms_.push_back(Term{std::make_shared<const Ordinal>(exponent), coefficient});
        return r;
    }

    /// Builds from terms that must already be in Cantor normal form.
    static Ordinal from_terms(std::vector<Term> terms) {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (terms[i].coefficient == 0 || !terms[i].exponent)
                throw std::invalid_argument("Ordinal: zero coefficient or null exponent");
            if (i > 0 && !(terms[i].exp() < terms[i - 1].exp()))
                throw std::invalid_argument("Ordinal: exponents must strictly decrease");
        }
        Ordinal r;
        r.terms_ = std::move(terms);
        return r;
    }

    std::span<const Term> terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_finite() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].exp().is_zero());
    }

    /// Value of a finite ordinal; throws for infinite ones.
    std::uint64_t finite_value() const {
        if (!is_finite()) throw std::domain_error("Ordinal: not finite");
        return terms_.empty() ? 0 : terms_[0].coefficient;
    }

    /// Coefficient of the w^0 term.
    std::uint64_t finite_part() const {
        if (!terms_.empty() && terms_.back().exp().is_zero()) return terms_.back().coefficient;
        return 0;
    }

    OrdinalKind kind() const {
        if (terms_.empty()) return OrdinalKind::Zero;
        return terms_.back().exp().is_zero() ? OrdinalKind::Successor : OrdinalKind::Limit;
    }

    friend std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
        const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            const auto& ta = a.terms_[i];
            const auto& tb = b.terms_[i];
            if (ta.exponent != tb.exponent) {
                if (auto c = compare(ta.exp(), tb.exp()); c != 0) return c;
            }
            if (auto c = ta.coefficient <=> tb.coefficient; c != 0) return c;
        }
        return a.terms_.size() <=> b.terms_.size();
    }

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) { return compare(a, b); }
    friend bool operator==(const Ordinal& a, const Ordinal& b) { return compare(a, b) == 0; }

    /// Ordinal sum a + b. Terms of a below the leading exponent of b are absorbed.
    friend Ordinal operator+(const Ordinal& a, const Ordinal& b) {
        if (b.is_zero()) return a;
        const Ordinal& lead = b.terms_.front().exp();
        Ordinal r;
        for (const auto& t : a.terms_) {
            const auto c = compare(t.exp(), lead);
            if (c > 0) {
                r.terms_.push_back(t);
            } else if (c == 0) {
                r.terms_.push_back(Term{t.exponent, checked_add(t.coefficient, b.terms_.front().coefficient)});
                r.terms_.insert(r.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
                return r;
            } else {
                break;
            }
        }
        r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
        return r;
    }

    Ordinal& operator+=(const Ordinal& b) { return *this = *this + b; }

    Ordinal successor() const { return *this + finite(1); }

    /// The ordinal whose successor this is; throws unless kind() == Successor.
    Ordinal predecessor() const {
        if (kind() != OrdinalKind::Successor) throw std::domain_error("Ordinal: predecessor of a non-successor");
        Ordinal r = *this;
        if (--r.terms_.back().coefficient == 0) r.terms_.pop_back();
        return r;
    }

    /**
     * Order type of the limit ordinals in [1, *this]: the finite part is
     * dropped and each remaining term w^g * n becomes w^(g-1) * n when g is
     * finite and stays w^g * n when g is infinite (w * w^g = w^g then).
     * Finite input gives 0.
     */
    Ordinal div_omega() const {
        Ordinal r;
        for (const auto& t : terms_) {
            const Ordinal& g = t.exp();
            switch (g.kind()) {
            case OrdinalKind::Zero:
                break;
            case OrdinalKind::Successor:
                if (g.is_finite())
                    r.terms_.push_back(Term{std::make_shared<const Ordinal>(g.predecessor()), t.coefficient});
                else
                    r.terms_.push_back(t);
                break;
            case OrdinalKind::Limit:
                r.terms_.push_back(t);
                break;
            }
        }
        return r;
    }

    /**
     * i-th element of the canonical fundamental sequence of a limit ordinal.
     * With the last term w^g * n written as rest + w^g:
     *   g successor  -> rest + w^(g-1) * i
     *   g limit      -> rest + w^(g[i])
     */
    Ordinal fundamental(std::uint64_t i) const {
        if (kind() != OrdinalKind::Limit) throw std::domain_error("Ordinal: fundamental sequence of a non-limit");
        Ordinal rest = *this;
        const Term last = rest.terms_.back();
        if (--rest.terms_.back().coefficient == 0) rest.terms_.pop_back();
        const Ordinal& g = last.exp();
        if (g.kind() == OrdinalKind::Successor) return rest + omega_pow(g.predecessor(), i);
        return rest + omega_pow(g.fundamental(i));
    }

    /// Nesting depth of exponents (0 for finite ordinals).
    int height() const {
        int h = 0;
        for (const auto& t : terms_)
            if (!t.exp().is_zero()) h = std::max(h, 1 + t.exp().height());
        return h;
    }

    /// Text form `w^(w*2+1)*3 + w + 5`; nested exponents are printed without spaces.
    std::string to_string() const { return render(" + "); }

    friend std::ostream& operator<<(std::ostream& os, const Ordinal& a) { return os << a.to_string(); }

private:
    static std::shared_ptr<const Ordinal> zero_ptr() {
        static const auto z = std::make_shared<const Ordinal>();
        return z;
    }

    static std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
        if (a > std::numeric_limits<std::uint64_t>::max() - b) throw std::overflow_error("Ordinal: coefficient overflow");
        return a + b;
    }

    std::string render(const char* joiner) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) out += joiner;
            const auto& t = terms_[i];
            const Ordinal& e = t.exp();
            if (e.is_zero()) {
                out += std::to_string(t.coefficient);
                continue;
            }
            out += 'w';
            if (e == finite(1)) {
                // plain w
            } else if (e.is_finite()) {
                out += '^' + std::to_string(e.finite_value());
            } else if (e == omega()) {
                out += "^w";
            } else {
                out += "^(" + e.render("+") + ')';
            }
            if (t.coefficient != 1) out += '*' + std::to_string(t.coefficient);
        }
        return out;
    }

    std::vector<Term> terms_;
};

inline OrdinalKind kind(const Ordinal& a) { return a.kind(); }
inline Ordinal div_omega(const Ordinal& b) { return b.div_omega(); }

/// Maximum of a nonempty list together with how often it occurs.
inline std::pair<Ordinal, std::uint64_t> max_of(std::span<const Ordinal> list) {
    if (list.empty()) throw std::invalid_argument("max_of: empty list");
    const Ordinal* best = &list[0];
    std::uint64_t count = 1;
    for (std::size_t i = 1; i < list.size(); ++i) {
        const auto c = compare(list[i], *best);
        if (c > 0) {
            best = &list[i];
            count = 1;
        } else if (c == 0) {
            ++count;
        }
    }
    return {*best, count};
}

inline const char* to_string(OrdinalKind k) {
    switch (k) {
    case OrdinalKind::Zero: return "zero";
    case OrdinalKind::Successor: return "successor";
    case OrdinalKind::Limit: return "limit";
    }
    return "?";
}

} // namespace surfdecide
