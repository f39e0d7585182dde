#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "bohemian/family.hpp"

namespace bohemian {

namespace detail {

inline nlohmann::json scalar_to_json(const CyclotomicScalar& x) {
    auto enc = [](const BigInt& v) -> nlohmann::json {
        if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
        return v.get_str();
    };
    return nlohmann::json::array({enc(x.a), enc(x.b)});
}

inline BigInt bigint_from_json(const nlohmann::json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    return BigInt(static_cast<long>(j.get<std::int64_t>()));
}

inline CyclotomicScalar scalar_from_json(const nlohmann::json& j, Ring rg) {
    return {bigint_from_json(j.at(0)), bigint_from_json(j.at(1)), rg};
}

inline nlohmann::json population_to_json(const Population& p) {
    auto arr = nlohmann::json::array();
    for (const auto& x : p.elements) arr.push_back(scalar_to_json(x));
    return arr;
}

inline Population population_from_json(const nlohmann::json& j, Ring rg) {
    std::vector<CyclotomicScalar> elems;
    for (const auto& e : j) elems.push_back(scalar_from_json(e, rg));
    return Population(std::move(elems));
}

}  // namespace detail

/// Key/value family document; the exact scalar values round-trip bit-exactly
/// (int64-sized components as JSON integers, larger ones as decimal strings).
inline nlohmann::json family_to_json(const FamilySpec& spec) {
    nlohmann::json doc;
    doc["kind"] = kind_name(spec.kind);
    doc["m"] = spec.m;
    doc["ring"] = ring_name(spec.ring());
    doc["population"] = detail::population_to_json(spec.population);
    doc["subdiagonal_value"] = detail::scalar_to_json(spec.subdiagonal_value);
    if (spec.subdiagonal_free) doc["subdiagonal_free"] = true;
    if (spec.diagonal_population)
        doc["diagonal_population"] = detail::population_to_json(*spec.diagonal_population);
    return doc;
}

inline FamilySpec family_from_json(const nlohmann::json& doc) {
    Ring rg = ring_from_name(doc.at("ring").get<std::string>());
    FamilySpec spec(kind_from_name(doc.at("kind").get<std::string>()), doc.at("m").get<int>(),
                    detail::population_from_json(doc.at("population"), rg));
    if (doc.contains("subdiagonal_value"))
        spec.subdiagonal_value = detail::scalar_from_json(doc.at("subdiagonal_value"), rg);
    spec.subdiagonal_free = doc.value("subdiagonal_free", false);
    if (doc.contains("diagonal_population"))
        spec.diagonal_population = detail::population_from_json(doc.at("diagonal_population"), rg);
    spec.validate();
    return spec;
}

inline void save_family(const FamilySpec& spec, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << family_to_json(spec).dump(1) << "\n";
}

inline FamilySpec load_family(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    nlohmann::json doc;
    f >> doc;
    return family_from_json(doc);
}

}  // namespace bohemian
