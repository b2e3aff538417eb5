// JSON formats for spaces, functions, molecules, certificates and check
// reports.
//
//   space:    {"points": ["e","a"], "base": "e"|null, "dist": [[0,1],[1,0]]}
//   function: {"space": "<id-or-path>", "values": {"e": 0, "a": 3.0}}
//   molecule: {"space": "<id-or-path>", "coeffs": {"a": 1.0, "b": -1.0}}
//
// The full distance matrix is required; symmetry is re-verified on load, not
// assumed. Functions must cover every point; molecule coefficients default
// to zero for absent points. Unknown point names are rejected.
#pragma once

#include <string>

#include <json.hpp>

#include "lipfree/free_space.hpp"
#include "lipfree/lip_function.hpp"
#include "lipfree/metric_space.hpp"
#include "lipfree/molecule.hpp"

namespace lipfree {

using nlohmann::json;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
json parse_json(const std::string& text, const std::string& origin);

template <class R>
json space_to_json(const BasicMetricSpace<R>& s) {
    json j;
    j["points"] = s.labels();
    j["base"] = s.pointed() ? json(s.base_label()) : json(nullptr);
    auto rows = json::array();
    for (int i = 0; i < s.size(); ++i) {
        auto row = json::array();
        for (int j2 = 0; j2 < s.size(); ++j2) row.push_back(num_traits<R>::to_double(s.dist(i, j2)));
        rows.push_back(std::move(row));
    }
    j["dist"] = std::move(rows);
    return j;
}

template <class R>
struct SpaceParts {
    std::vector<std::string> labels;
    typename BasicMetricSpace<R>::Matrix dist;
    std::optional<int> base;
};

/// Shape and type checks only; axiom validation is the caller's business
/// (the validate command wants the diagnostic, loaders want an exception).
template <class R>
SpaceParts<R> space_parts_from_json(const json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("dist"))
        throw InputError("space JSON needs \"points\" and \"dist\"");
    SpaceParts<R> parts;
    for (const auto& p : j.at("points")) {
        if (!p.is_string()) throw InputError("space JSON: point names must be strings");
        parts.labels.push_back(p.template get<std::string>());
    }
    for (size_t a = 0; a < parts.labels.size(); ++a)
        for (size_t b = a + 1; b < parts.labels.size(); ++b)
            if (parts.labels[a] == parts.labels[b])
                throw InputError("space JSON: duplicate point name \"" + parts.labels[a] + "\"");

    const auto& dist = j.at("dist");
    if (!dist.is_array() || dist.size() != parts.labels.size())
        throw InputError("space JSON: \"dist\" must be a full square matrix, one row per point");
    for (const auto& row : dist) {
        if (!row.is_array() || row.size() != parts.labels.size())
            throw InputError("space JSON: \"dist\" must be a full square matrix, one row per point");
        std::vector<R> r;
        for (const auto& v : row) {
            if (!v.is_number()) throw InputError("space JSON: distances must be numbers");
            r.push_back(num_traits<R>::from_double(v.template get<double>()));
        }
        parts.dist.push_back(std::move(r));
    }

    if (j.contains("base") && !j.at("base").is_null()) {
        const auto lbl = j.at("base").template get<std::string>();
        for (size_t i = 0; i < parts.labels.size(); ++i)
            if (parts.labels[i] == lbl) parts.base = static_cast<int>(i);
        if (!parts.base) throw InputError("space JSON: base point \"" + lbl + "\" is not in the point list");
    }
    return parts;
}

template <class R>
BasicMetricSpace<R> space_from_json(const json& j) {
    auto parts = space_parts_from_json<R>(j);
    auto v = BasicMetricSpace<R>::validated(std::move(parts.labels), std::move(parts.dist), parts.base);
    if (auto* diag = std::get_if<MetricDiagnostic>(&v))
        throw InputError("space JSON violates the metric axioms: " + diag->message());
    return std::get<BasicMetricSpace<R>>(std::move(v));
}

template <class R>
json function_to_json(const BasicLipFunction<R>& f, const std::string& space_ref) {
    json values = json::object();
    for (int i = 0; i < f.size(); ++i) values[f.space()->label(i)] = num_traits<R>::to_double(f(i));
    return json{{"space", space_ref}, {"values", std::move(values)}};
}

template <class R>
BasicLipFunction<R> function_from_json(const json& j, const SpacePtr<R>& space) {
    if (!j.is_object() || !j.contains("values") || !j.at("values").is_object())
        throw InputError("function JSON needs a \"values\" object");
    const auto& vals = j.at("values");
    std::vector<R> v(space->size());
    std::vector<bool> seen(space->size(), false);
    for (const auto& [name, value] : vals.items()) {
        const auto idx = space->index_of(name);
        if (!idx) throw InputError("function JSON names unknown point \"" + name + "\"");
        if (!value.is_number()) throw InputError("function JSON: values must be numbers");
        v[*idx] = num_traits<R>::from_double(value.template get<double>());
        seen[*idx] = true;
    }
    for (int i = 0; i < space->size(); ++i)
        if (!seen[i]) throw InputError("function JSON is missing point \"" + space->label(i) + "\"");
    return BasicLipFunction<R>(space, std::move(v));
}

template <class R>
json molecule_to_json(const BasicMolecule<R>& m, const std::string& space_ref) {
    json coeffs = json::object();
    for (int i = 0; i < m.size(); ++i)
        if (!(m(i) == 0)) coeffs[m.space()->label(i)] = num_traits<R>::to_double(m(i));
    return json{{"space", space_ref}, {"coeffs", std::move(coeffs)}};
}

template <class R>
BasicMolecule<R> molecule_from_json(const json& j, const SpacePtr<R>& space) {
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_object())
        throw InputError("molecule JSON needs a \"coeffs\" object");
    std::vector<R> c(space->size(), R(0));
    for (const auto& [name, value] : j.at("coeffs").items()) {
        const auto idx = space->index_of(name);
        if (!idx) throw InputError("molecule JSON names unknown point \"" + name + "\"");
        if (!value.is_number()) throw InputError("molecule JSON: coefficients must be numbers");
        c[*idx] = num_traits<R>::from_double(value.template get<double>());
    }
    return BasicMolecule<R>(space, std::move(c));
}

/// Norm certificate: witness values, plan triples, both objectives, the gap,
/// and the outcome of every certificate check.
template <class R>
json certificate_to_json(const BasicMolecule<R>& m, const PrimalNorm<R>& primal, const DualNorm<R>& dual,
                         const CertificateChecks& checks) {
    const auto& space = *m.space();
    json witness = json::object();
    for (int i = 0; i < space.size(); ++i)
        witness[space.label(i)] = num_traits<R>::to_double(dual.certificate.witness(i));
    json plan = json::array();
    for (const auto& entry : primal.plan.entries)
        plan.push_back(json::array({space.label(entry.source), space.label(entry.sink),
                                    num_traits<R>::to_double(entry.flow)}));
    const double pv = num_traits<R>::to_double(primal.value);
    const double dv = num_traits<R>::to_double(dual.value);
    return json{{"primal", {{"value", pv}, {"plan", std::move(plan)}}},
                {"dual", {{"value", dv}, {"witness", std::move(witness)}}},
                {"gap", std::fabs(pv - dv)},
                {"checks",
                 {{"plan_feasible", checks.plan_feasible},
                  {"plan_cost_consistent", checks.plan_cost_consistent},
                  {"witness_feasible", checks.witness_feasible},
                  {"witness_pairing_consistent", checks.witness_pairing_consistent},
                  {"duality_gap_ok", checks.duality_gap_ok},
                  {"weak_duality_ok", checks.weak_duality_ok}}}};
}

}  // namespace lipfree
