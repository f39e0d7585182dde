#pragma once

#include <fstream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "bohemian/census.hpp"

namespace bohemian {

/// JSON container for a census: one record per distinct polynomial with
/// exact coefficients as {a,b} decimal strings, its matrix count, and the
/// stability verdict when computed. Entry order is the canonical coefficient
/// order, so the document is byte-reproducible.
inline nlohmann::json census_to_json(const CensusResult& res) {
    nlohmann::json doc;
    doc["format"] = "bohemian-census-v1";
    doc["ring"] = ring_name(res.ring);
    doc["degree"] = res.degree;
    doc["total_matrices"] = res.total_matrices.get_str();
    doc["distinct_polynomials"] = res.entries.size();
    if (res.stability_computed) {
        doc["stable_polynomials"] = res.stable_polys;
        doc["stable_matrices"] = res.stable_matrices.get_str();
        if (!std::isnan(res.max_stable_real_part))
            doc["max_stable_real_part"] = res.max_stable_real_part;
    }
    auto& list = doc["polynomials"] = nlohmann::json::array();
    for (const auto& e : res.entries) {
        nlohmann::json rec;
        auto& cs = rec["coeffs"] = nlohmann::json::array();
        for (const auto& c : e.poly.coeffs)
            cs.push_back(nlohmann::json::array({c.a.get_str(), c.b.get_str()}));
        rec["count"] = e.count;
        if (e.stable) rec["stable"] = (*e.stable == Stability::Stable);
        list.push_back(std::move(rec));
    }
    return doc;
}

inline CensusResult census_from_json(const nlohmann::json& doc) {
    if (doc.value("format", "") != "bohemian-census-v1")
        throw std::invalid_argument("not a census document");
    CensusResult res;
    res.ring = ring_from_name(doc.at("ring").get<std::string>());
    res.degree = doc.at("degree").get<int>();
    res.total_matrices = BigInt(doc.at("total_matrices").get<std::string>());
    if (doc.contains("stable_polynomials")) {
        res.stability_computed = true;
        res.stable_polys = doc.at("stable_polynomials").get<std::uint64_t>();
        res.stable_matrices = BigInt(doc.at("stable_matrices").get<std::string>());
        res.max_stable_real_part = doc.value("max_stable_real_part", std::nan(""));
    }
    for (const auto& rec : doc.at("polynomials")) {
        CensusEntry e;
        e.poly.ring = res.ring;
        for (const auto& c : rec.at("coeffs"))
            e.poly.coeffs.push_back({BigInt(c.at(0).get<std::string>()),
                                     BigInt(c.at(1).get<std::string>()), res.ring});
        e.count = rec.at("count").get<std::uint64_t>();
        if (rec.contains("stable"))
            e.stable = rec.at("stable").get<bool>() ? Stability::Stable : Stability::NotStrictlyStable;
        res.entries.push_back(std::move(e));
    }
    return res;
}

inline void export_census_json(const CensusResult& res, std::ostream& os) {
    os << census_to_json(res).dump(1) << "\n";
}

inline void export_census_json(const CensusResult& res, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    export_census_json(res, f);
}

inline CensusResult import_census_json(std::istream& is) {
    nlohmann::json doc;
    is >> doc;
    return census_from_json(doc);
}

inline CensusResult import_census_json(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    return import_census_json(f);
}

/// CSV: degree, interleaved coefficients a0,b0,...,am,bm, count, stable flag
/// (blank when stability was not computed).
inline void export_census_csv(const CensusResult& res, std::ostream& os) {
    os << "degree,coeffs_interleaved_ab...,count,stable\n";
    for (const auto& e : res.entries) {
        os << e.poly.degree();
        for (const auto& c : e.poly.coeffs) os << "," << c.a.get_str() << "," << c.b.get_str();
        os << "," << e.count << ",";
        if (e.stable) os << (*e.stable == Stability::Stable ? 1 : 0);
        os << "\n";
    }
}

}  // namespace bohemian
