#pragma once

/**
 * @file json_io.hpp
 * @brief JSON rendering of verdicts and invariants (schema in docs/verdict-schema.md).
 */

#include <surfdecide/decide.hpp>
#include <surfdecide/endspace.hpp>
#include <surfdecide/surface.hpp>

#include <json.hpp>

#include <string>
#include <variant>

namespace surfdecide {

using nlohmann::json;

inline json to_json(const WitnessRef& w) {
    json j;
    j["kind"] = to_string(w.kind);
    j["parameter"] = w.parameter;
    if (const auto* d = std::get_if<unsigned>(&w.degree))
        j["degree"] = *d;
    else
        j["degree"] = "every-even";
    j["description"] = w.description;
    j["computation"] = w.computation;
    j["verified"] = w.verified;
    return j;
}

inline json to_json(const Answer& a) {
    json j;
    j["answer"] = to_string(a.kind);
    j["coefficients"] = a.coefficients ? json(to_string(*a.coefficients)) : json(nullptr);
    j["citation"] = a.citation;
    j["witness"] = a.witness ? to_json(*a.witness) : json(nullptr);
    j["note"] = a.note.empty() ? json(nullptr) : json(a.note);
    return j;
}

inline json to_json(const DerivedFacts& f) {
    json j;
    j["genus"] = f.genus.to_string();
    j["punctures"] = f.punctures.to_string();
    j["mixed_end"] = f.mixed_end;
    j["ends"] = f.ends;
    j["td_max"] = {{"value", f.td.value}, {"exact", f.td.exact}};
    j["notes"] = f.notes;
    return j;
}

inline json to_json(const Verdict& v) {
    return {{"qI", to_json(v.qI)}, {"qII", to_json(v.qII)}, {"qIII", to_json(v.qIII)}, {"derived", to_json(v.derived)}};
}

inline json to_json(const SpaceInvariants& s) {
    json j;
    j["countable"] = s.countable;
    j["isolated_count"] = s.isolated.to_string();
    j["scattered_rank"] = s.scattered_rank ? json(s.scattered_rank->to_string()) : json(nullptr);
    j["has_kernel"] = s.has_kernel;
    j["td_max"] = {{"value", s.td.value}, {"exact", s.td.exact}};
    return j;
}

inline json to_json(const SurfaceInvariants& s) {
    json j;
    j["genus"] = s.genus.to_string();
    j["boundary"] = s.boundary;
    j["punctures"] = s.punctures.to_string();
    j["mixed_end"] = s.mixed_end;
    j["ends"] = to_json(s.ends);
    return j;
}

/// Short human form: answer, coefficients and citation on one line.
inline std::string summary(const Answer& a) {
    std::string s = to_string(a.kind);
    if (a.coefficients) s += std::string("[") + to_string(*a.coefficients) + "]";
    if (!a.citation.empty()) s += " (" + a.citation + ")";
    return s;
}

} // namespace surfdecide
