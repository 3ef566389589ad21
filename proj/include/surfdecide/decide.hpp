#pragma once

/**
 * @file decide.hpp
 * @brief Decision table for classes of compact / finite-type support.
 *
 * For a boundaryless infinite-type surface S the engine answers
 *
 *   (I)   does Map_C(S) -> Map(S) hit a nonzero homology class?
 *   (II)  does Map_c(S) in Map(S) induce a nonzero map on homology?
 *   (III) does Map_f(S) in Map(S) induce a nonzero map on homology?
 *
 * from the genus, the number of punctures, the mixed-end predicate and the
 * classification of the end-space. Negative answers carry the coefficient
 * scope that is actually proved (fields, or any coefficients); positive
 * answers are integral and point at a witness computation.
 */

#include <surfdecide/endspace.hpp>
#include <surfdecide/homology.hpp>
#include <surfdecide/surface.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace surfdecide {

enum class Coefficients { Integral, AnyField, AnyCoefficients };

inline const char* to_string(Coefficients c) {
    switch (c) {
    case Coefficients::Integral: return "integral";
    case Coefficients::AnyField: return "any-field";
    case Coefficients::AnyCoefficients: return "any-coefficients";
    }
    return "?";
}

struct EveryEvenDegree {
    friend bool operator==(EveryEvenDegree, EveryEvenDegree) = default;
};

struct WitnessRef {
    enum class Kind {
        TorusAbelianization, ///< H1(Map(S_1)) = Z/12
        ClosedH2,            ///< H2(Map(S_g)) != 0, g >= 2
        BraidSign,           ///< H1(B_p) -> H1(S_p) = Z/2
        SphericalSquare,     ///< Z/k -(*2)-> Z/2k with 2 != 0
        WreathSeries,        ///< Z summand in every even degree
    };
    Kind kind;
    std::variant<unsigned, EveryEvenDegree> degree;
    std::uint64_t parameter = 0; ///< g, p or n depending on kind
    std::string description;
    std::string computation;     ///< filled in by witness_for()
    bool verified = false;
};

inline const char* to_string(WitnessRef::Kind k) {
    switch (k) {
    case WitnessRef::Kind::TorusAbelianization: return "torus-abelianization";
    case WitnessRef::Kind::ClosedH2: return "closed-h2";
    case WitnessRef::Kind::BraidSign: return "braid-sign";
    case WitnessRef::Kind::SphericalSquare: return "spherical-square";
    case WitnessRef::Kind::WreathSeries: return "wreath-series";
    }
    return "?";
}

struct Answer {
    enum class Kind { Yes, No, Unknown };
    Kind kind = Kind::Unknown;
    std::optional<Coefficients> coefficients;
    std::string citation;
    std::optional<WitnessRef> witness;
    std::string note;

    static Answer yes(std::string citation, WitnessRef w) {
        return {Kind::Yes, Coefficients::Integral, std::move(citation), std::move(w), {}};
    }
    static Answer no(Coefficients scope, std::string citation) {
        return {Kind::No, scope, std::move(citation), std::nullopt, {}};
    }
    static Answer unknown(std::string citation, std::string note = {}) {
        return {Kind::Unknown, std::nullopt, std::move(citation), std::nullopt, std::move(note)};
    }

    bool is_yes() const { return kind == Kind::Yes; }
    bool is_no() const { return kind == Kind::No; }
};

inline const char* to_string(Answer::Kind k) {
    switch (k) {
    case Answer::Kind::Yes: return "yes";
    case Answer::Kind::No: return "no";
    case Answer::Kind::Unknown: return "unknown";
    }
    return "?";
}

/// The facts a verdict is computed from.
struct DerivedFacts {
    Genus genus;
    Count punctures;
    bool mixed_end = false;
    std::string ends;   ///< normal form of Ends(S)
    TdMax td;
    std::vector<std::string> notes;
};

struct Verdict {
    Answer qI, qII, qIII;
    DerivedFacts derived;

    const Answer& operator[](int question) const {
        switch (question) {
        case 1: return qI;
        case 2: return qII;
        case 3: return qIII;
        }
        throw std::out_of_range("question must be 1, 2 or 3");
    }
};

class DecisionError : public std::runtime_error {
public:
    enum class Kind { InvalidDescriptor, HasBoundary, NotInfiniteType };
    DecisionError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

inline const char* to_string(DecisionError::Kind k) {
    switch (k) {
    case DecisionError::Kind::InvalidDescriptor: return "InvalidDescriptor";
    case DecisionError::Kind::HasBoundary: return "HasBoundary";
    case DecisionError::Kind::NotInfiniteType: return "NotInfiniteType";
    }
    return "?";
}

namespace detail {

inline WitnessRef square_witness(std::uint64_t n, const char* source) {
    return {WitnessRef::Kind::SphericalSquare, 1u, n,
            "element 2 of Z/2k in H1(Map(S)), from n = " + std::to_string(n) + " distinguished ends (" + source + ")",
            {}, false};
}

inline Verdict all_three(const Answer& a, DerivedFacts facts) { return {a, a, a, std::move(facts)}; }

} // namespace detail

/// Facts that determine the verdict; exposed so that callers can compare descriptors.
inline DerivedFacts derive_facts(const SurfaceDescriptor& d) {
    const auto ends = d.ends.unmarked();
    const auto nf = normalize(ends);
    DerivedFacts f;
    f.genus = d.genus;
    f.punctures = punctures_of(d);
    f.mixed_end = has_mixed_end(d);
    f.ends = nf.to_string();
    f.td = nf.is_canonical() ? td_max(nf.canonical()) : TdMax{rank_profile(nf.irreducible()).top, false};
    if (!f.punctures.is_infinite())
        f.notes.push_back("Map_C(S) -> Map_c(S) is central with kernel Z^" + f.punctures.to_string());
    if (f.punctures.is_zero())
        f.notes.push_back("p = 0: Questions I, II and III coincide");
    else if (f.punctures == Count(1))
        f.notes.push_back("p = 1: Questions II and III coincide");
    return f;
}

/// Applies the decision table. Throws DecisionError when the preconditions fail.
inline Verdict decide(const SurfaceDescriptor& d) {
    if (auto err = validate(d))
        throw DecisionError(DecisionError::Kind::InvalidDescriptor, std::string(to_string(err->kind)) + ": " + err->message);
    if (d.boundary != 0) throw DecisionError(DecisionError::Kind::HasBoundary, "surface has nonempty boundary");
    if (!is_infinite_type(d)) throw DecisionError(DecisionError::Kind::NotInfiniteType, "surface is of finite type");

    DerivedFacts f = derive_facts(d);
    const Count p = f.punctures;

    if (d.genus.is_infinite()) {
        const auto no_I = Answer::no(Coefficients::AnyField, "Theorem B(1)");
        if (p.is_zero()) {
            // a single end: the Loch Ness monster
            if (normalize(d.ends.unmarked()) == NormalForm{CanonicalEndSpace::discrete(1)})
                return detail::all_three(Answer::no(Coefficients::AnyField, "Theorem A"), std::move(f));
            return {no_I, Answer::no(Coefficients::AnyField, "Theorem B(2)"),
                    Answer::no(Coefficients::AnyField, "Theorem B(2)"), std::move(f)};
        }
        if (!p.is_infinite()) {
            const WitnessRef w{WitnessRef::Kind::WreathSeries, EveryEvenDegree{}, p.value(),
                               "Z summand in every even degree via B(S^1 wr S_p)", {}, false};
            return {no_I, Answer::yes("Theorem B(3)", w), Answer::yes("Theorem B(3)", w), std::move(f)};
        }
        if (f.mixed_end)
            return {no_I, Answer::no(Coefficients::AnyField, "Theorem B(4)"),
                    Answer::no(Coefficients::AnyField, "Theorem B(4)"), std::move(f)};
        return {no_I, Answer::unknown("Table 1", "g = p = inf without a mixed end is open"),
                Answer::unknown("Table 1", "g = p = inf without a mixed end is open"), std::move(f)};
    }

    if (d.genus.value() > 0) {
        const auto g = d.genus.value();
        const WitnessRef w = g == 1 ? WitnessRef{WitnessRef::Kind::TorusAbelianization, 1u, 1,
                                                 "H1(Map(S_1)) = Z/12 via the capping map", {}, false}
                                    : WitnessRef{WitnessRef::Kind::ClosedH2, 2u, g,
                                                 "H2(Map(S_g)) != 0 via the capping map", {}, false};
        return detail::all_three(Answer::yes("Theorem C", w), std::move(f));
    }

    // genus zero
    if (!p.is_infinite()) {
        const auto n = p.value();
        if (n <= 1) return detail::all_three(Answer::no(Coefficients::AnyCoefficients, "Theorem D(1)"), std::move(f));
        if (n <= 3) {
            const WitnessRef w{WitnessRef::Kind::BraidSign, 1u, n,
                               "lift of the sign of S_p through H1(B_p) on a punctured disc", {}, false};
            return {Answer::unknown("Table 1"), Answer::unknown("Table 1"), Answer::yes("Theorem D(2)", w),
                    std::move(f)};
        }
        f.notes.push_back("distinguished set: the " + std::to_string(n) + " punctures");
        return detail::all_three(Answer::yes("Theorem D(3)", detail::square_witness(n, "punctures")), std::move(f));
    }

    if (f.td.value >= 4) {
        f.notes.push_back(std::string("distinguished set: union of finite germ classes, size ") +
                          (f.td.exact ? "" : "at least ") + std::to_string(f.td.value));
        return detail::all_three(Answer::yes("Theorem E", detail::square_witness(f.td.value, "TD set")), std::move(f));
    }
    const auto nf = normalize(d.ends.unmarked());
    if (nf.is_canonical() && !nf.canonical().cantor && nf.canonical().scattered.kind == ScatteredPart::Kind::Orbit &&
        nf.canonical().scattered.count == 1) {
        const bool flute = nf.canonical().scattered.alpha == Ordinal::finite(1);
        return detail::all_three(Answer::no(Coefficients::AnyField, flute ? "Corollary G" : "Theorem F"), std::move(f));
    }
    const std::string note = f.td.exact ? "" : "indeterminate invariant: td_max is only known to be " + f.td.to_string();
    return detail::all_three(Answer::unknown("Table 1", note), std::move(f));
}

class NoWitness : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Runs the homology computation behind a witness; throws std::logic_error if it does not reproduce.
inline WitnessRef verify_witness(WitnessRef w) {
    const auto fail = [&w](const std::string& why) { throw std::logic_error("witness check failed: " + why); };
    switch (w.kind) {
    case WitnessRef::Kind::TorusAbelianization: {
        const auto g = abelianize(preset("sl2z"));
        if (!(g == h_lookup(LookupKind::H1MapTorus, 1).group)) fail("abelianization of SL2(Z) is " + g.to_string());
        w.computation = "abelianize(sl2z) = " + g.to_string();
        break;
    }
    case WitnessRef::Kind::ClosedH2: {
        const auto v = h_lookup(LookupKind::H2MapClosed, w.parameter);
        if (v.group.is_trivial()) fail("tabulated H2 is zero");
        w.computation = v.citation;
        break;
    }
    case WitnessRef::Kind::BraidSign: {
        const auto p = static_cast<int>(w.parameter);
        const auto braid = abelianize(preset("braid", p));
        const Abelianization sym(preset("symmetric", p));
        if (!(braid == AbelianGroup::cyclic(0))) fail("H1(B_p) is " + braid.to_string());
        if (!(sym.group() == AbelianGroup::cyclic(2))) fail("H1(S_p) is " + sym.group().to_string());
        if (sym.is_identity({1})) fail("a transposition is trivial in H1(S_p)");
        w.computation = "H1(B_" + std::to_string(p) + ") = Z -> H1(S_" + std::to_string(p) +
                        ") = Z/2 sends s_1 to the nonzero element";
        break;
    }
    case WitnessRef::Kind::SphericalSquare: {
        const auto n = static_cast<int>(w.parameter);
        // above this size the Smith form is replaced by the closed-form exponent-sum arithmetic
        const auto rep = n <= 24 ? spherical_square(n) : spherical_square_closed_form(n);
        if (!rep.quotient_well_defined || !rep.full_twist_vanishes || !rep.commutes || !rep.top_surjective)
            fail("square does not commute for n = " + std::to_string(n));
        if (!rep.two_nonzero) fail("2 = 0 in Z/2k");
        w.computation = "k = " + std::to_string(rep.k) + ", element 2 != 0 in Z/" + std::to_string(rep.modulus);
        break;
    }
    case WitnessRef::Kind::WreathSeries: {
        constexpr int max_degree = 40;
        // parts larger than max_degree / 2 never occur below max_degree
        const auto p = static_cast<int>(std::min<std::uint64_t>(w.parameter, max_degree / 2));
        const auto c = poincare_series(SeriesKind::WreathQuotient, p, max_degree);
        for (int d = 0; d <= max_degree; d += 2)
            if (c[static_cast<std::size_t>(d)] < 1) fail("zero coefficient in degree " + std::to_string(d));
        w.computation = "Poincare series of B(S^1 wr S_" + std::to_string(w.parameter) +
                        ") has positive coefficients in every even degree <= 40";
        break;
    }
    }
    w.verified = true;
    return w;
}

/// Witness of a positive answer (question 1, 2 or 3), with its computation executed.
inline WitnessRef witness_for(const Verdict& v, int question) {
    const Answer& a = v[question];
    if (!a.is_yes() || !a.witness) throw NoWitness("answer to question " + std::to_string(question) + " is not Yes");
    return verify_witness(*a.witness);
}

} // namespace surfdecide
