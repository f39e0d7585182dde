#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bohemian/bounds.hpp"  // budget_error
#include "bohemian/charpoly.hpp"
#include "bohemian/family.hpp"
#include "bohemian/hurwitz.hpp"
#include "bohemian/parallel.hpp"
#include "bohemian/polyroots.hpp"

namespace bohemian {

struct CensusEntry {
    CharPoly poly;
    std::uint64_t count = 0;
    std::optional<Stability> stable;
};

/// Result of a distinct-characteristic-polynomial census. Entries are sorted
/// by the canonical coefficient tuple, which fixes every export ordering.
struct CensusResult {
    Ring ring = Ring::Int;
    int degree = 0;
    std::vector<CensusEntry> entries;
    BigInt total_matrices = 0;
    bool stability_computed = false;
    std::uint64_t stable_polys = 0;
    BigInt stable_matrices = 0;
    double max_stable_real_part = std::nan("");
};

namespace detail {

struct I64VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (auto x : v) {
            h ^= static_cast<std::uint64_t>(x);
            h *= 0x100000001b3ull;
            h ^= h >> 29;
        }
        return static_cast<std::size_t>(h);
    }
};

using PackedCensusMap = std::unordered_map<std::vector<std::int64_t>, std::uint64_t, I64VecHash>;

/// Upper bound on every intermediate value of a Berkowitz run over this
/// family, via the magnitude-bound scalar; decides whether trapped int64
/// arithmetic is provably safe for the whole sweep.
inline double berkowitz_magnitude_bound(const FamilySpec& spec) {
    using MB = RingScalar<MagBound>;
    auto slots = free_slots(spec);
    std::vector<MB> values;
    values.reserve(slots.size());
    for (const auto& s : slots) {
        const auto& pop = slot_population(spec, s);
        double ma = 0, mb = 0;
        for (const auto& x : pop.elements) {
            ma = std::max(ma, std::abs(to_double(x.a)));
            mb = std::max(mb, std::abs(to_double(x.b)));
        }
        values.push_back({MagBound(ma), MagBound(mb), spec.ring()});
    }
    MB zero{MagBound(0.0), MagBound(0.0), spec.ring()};
    MB subdiag{MagBound(std::abs(to_double(spec.subdiagonal_value.a))),
               MagBound(std::abs(to_double(spec.subdiagonal_value.b))), spec.ring()};
    SquareMatrix<MB> mat(spec.m, zero);
    fill_matrix(spec, slots, values, zero, subdiag, mat);
    MagBound::reset_high_water();
    berkowitz_charpoly(mat, zero, MB{MagBound(1.0), MagBound(0.0), spec.ring()});
    return MagBound::high_water();
}

inline CharPoly charpoly_from_key(Ring rg, const std::vector<std::int64_t>& key) {
    CharPoly p;
    p.ring = rg;
    const std::size_t m = key.size() / 2;
    p.coeffs.reserve(m + 1);
    for (std::size_t i = 0; i < m; ++i)
        p.coeffs.push_back({BigInt(static_cast<long>(key[2 * i])),
                            BigInt(static_cast<long>(key[2 * i + 1])), rg});
    p.coeffs.push_back(CyclotomicScalar::one(rg));
    return p;
}

}  // namespace detail

/// Census over the index range [begin, end) of the family; the building
/// block for shards. Counts distinct exact characteristic polynomials.
inline CensusResult census_range(const FamilySpec& spec, std::uint64_t begin, std::uint64_t end,
                                 unsigned workers = 1) {
    CensusResult res;
    res.ring = spec.ring();
    res.degree = spec.m;
    res.total_matrices = BigInt(static_cast<unsigned long>(end - begin));

    const double bound = detail::berkowitz_magnitude_bound(spec);
    if (!(bound < 2.3e18)) {
        // coefficients may not fit int64: big-integer sweep
        std::map<CharPoly, std::uint64_t, decltype(&charpoly_less)> map(&charpoly_less);
        auto slot_vals =
            embedded_slot_values<CyclotomicScalar>(spec, [](const CyclotomicScalar& x) { return x; });
        const auto zero = CyclotomicScalar::zero(spec.ring());
        const auto one = CyclotomicScalar::one(spec.ring());
        BerkowitzWorkspace<CyclotomicScalar> ws;
        CharPoly p;
        p.ring = spec.ring();
        enumerate_embedded<CyclotomicScalar>(
            spec, begin, end, slot_vals, zero, spec.subdiagonal_value,
            [&](std::uint64_t, const SquareMatrix<CyclotomicScalar>& mat) {
                berkowitz_charpoly(mat, zero, one, ws, p.coeffs);
                ++map[p];
            });
        res.entries.reserve(map.size());
        for (auto& kv : map) res.entries.push_back({kv.first, kv.second, {}});
        return res;
    }

    const unsigned nshards = workers <= 1 ? 1 : workers;
    std::vector<detail::PackedCensusMap> maps(nshards);

    auto slot_vals = embedded_slot_values<PackedScalar>(spec, [](const CyclotomicScalar& x) { return pack(x); });
    const PackedScalar zero = PackedScalar::zero(spec.ring());
    const PackedScalar one = PackedScalar::one(spec.ring());
    const PackedScalar subdiag = pack(spec.subdiagonal_value);

    parallel_shards(end - begin, nshards, [&](unsigned shard, std::uint64_t lo, std::uint64_t hi) {
        auto& map = maps[shard];
        BerkowitzWorkspace<PackedScalar> ws;
        std::vector<PackedScalar> coeffs;
        std::vector<std::int64_t> key;
        enumerate_embedded<PackedScalar>(
            spec, begin + lo, begin + hi, slot_vals, zero, subdiag,
            [&](std::uint64_t, const SquareMatrix<PackedScalar>& mat) {
                berkowitz_charpoly(mat, zero, one, ws, coeffs);
                key.clear();
                for (std::size_t i = 0; i + 1 < coeffs.size(); ++i) {  // drop monic lead
                    key.push_back(coeffs[i].a.v);
                    key.push_back(coeffs[i].b.v);
                }
                auto it = map.find(key);
                if (it == map.end())
                    map.emplace(key, 1);
                else
                    ++it->second;
            });
    });

    // merge shards
    detail::PackedCensusMap merged = std::move(maps[0]);
    for (unsigned s = 1; s < nshards; ++s)
        for (auto& kv : maps[s]) merged[kv.first] += kv.second;

    res.entries.reserve(merged.size());
    for (auto& kv : merged)
        res.entries.push_back({detail::charpoly_from_key(spec.ring(), kv.first), kv.second, {}});
    std::sort(res.entries.begin(), res.entries.end(),
              [](const CensusEntry& l, const CensusEntry& r) { return charpoly_less(l.poly, r.poly); });
    return res;
}

inline CensusResult census(const FamilySpec& spec, std::uint64_t budget = (1ull << 24),
                           unsigned workers = 1) {
    BigInt n = family_size(spec);
    if (n > budget) throw budget_error("census: family size exceeds budget");
    return census_range(spec, 0, n.get_ui(), workers);
}

/// Max real part over the roots of a monic exact polynomial (numeric).
inline double max_real_part(const CharPoly& p) {
    std::vector<cplx> c;
    c.reserve(p.coeffs.size());
    for (const auto& x : p.coeffs) c.push_back(to_complex(x));
    double mx = -HUGE_VAL;
    for (auto r : polyroots(ComplexPoly(std::move(c)))) mx = std::max(mx, r.real());
    return mx;
}

/// Classifies every distinct polynomial with the exact Routh-Hurwitz test
/// and fills the stability aggregates.
inline void classify_stability(CensusResult& res, unsigned workers = 1) {
    const std::size_t n = res.entries.size();
    std::vector<double> shard_max(workers <= 1 ? 1 : workers, -HUGE_VAL);
    parallel_shards(n, workers <= 1 ? 1 : workers,
                    [&](unsigned shard, std::uint64_t lo, std::uint64_t hi) {
                        for (std::uint64_t i = lo; i < hi; ++i) {
                            auto& e = res.entries[i];
                            e.stable = routh_hurwitz_stable(e.poly);
                            if (*e.stable == Stability::Stable)
                                shard_max[shard] = std::max(shard_max[shard], max_real_part(e.poly));
                        }
                    });
    res.stability_computed = true;
    res.stable_polys = 0;
    res.stable_matrices = 0;
    double mx = -HUGE_VAL;
    for (double v : shard_max) mx = std::max(mx, v);
    for (const auto& e : res.entries)
        if (e.stable && *e.stable == Stability::Stable) {
            ++res.stable_polys;
            res.stable_matrices += static_cast<unsigned long>(e.count);
        }
    res.max_stable_real_part = res.stable_polys > 0 ? mx : std::nan("");
}

inline CensusResult stable_census(const FamilySpec& spec, std::uint64_t budget = (1ull << 24),
                                  unsigned workers = 1) {
    CensusResult res = census(spec, budget, workers);
    classify_stability(res, workers);
    return res;
}

/// Additive merge of shard censuses: counts of identical polynomials add,
/// stability verdicts (deterministic per polynomial) carry over.
inline CensusResult merge_census(std::vector<CensusResult> parts) {
    if (parts.empty()) throw std::invalid_argument("merge_census: no inputs");
    CensusResult out;
    out.ring = parts.front().ring;
    out.degree = parts.front().degree;
    bool all_stab = true;
    std::map<std::vector<std::pair<std::string, std::string>>, CensusEntry> merged;
    for (auto& part : parts) {
        if (part.ring != out.ring || part.degree != out.degree)
            throw std::invalid_argument("merge_census: mismatched censuses");
        all_stab = all_stab && part.stability_computed;
        out.total_matrices += part.total_matrices;
        for (auto& e : part.entries) {
            std::vector<std::pair<std::string, std::string>> key;
            key.reserve(e.poly.coeffs.size());
            for (const auto& c : e.poly.coeffs) key.emplace_back(c.a.get_str(), c.b.get_str());
            auto it = merged.find(key);
            if (it == merged.end())
                merged.emplace(std::move(key), e);
            else {
                it->second.count += e.count;
                if (e.stable && !it->second.stable) it->second.stable = e.stable;
            }
        }
    }
    out.entries.reserve(merged.size());
    for (auto& kv : merged) out.entries.push_back(std::move(kv.second));
    std::sort(out.entries.begin(), out.entries.end(),
              [](const CensusEntry& l, const CensusEntry& r) { return charpoly_less(l.poly, r.poly); });
    if (all_stab) {
        out.stability_computed = true;
        double mx = -HUGE_VAL;
        for (const auto& e : out.entries)
            if (e.stable && *e.stable == Stability::Stable) {
                ++out.stable_polys;
                out.stable_matrices += static_cast<unsigned long>(e.count);
            }
        for (const auto& p : parts)
            if (!std::isnan(p.max_stable_real_part)) mx = std::max(mx, p.max_stable_real_part);
        out.max_stable_real_part = out.stable_polys > 0 ? mx : std::nan("");
    }
    return out;
}

}  // namespace bohemian
