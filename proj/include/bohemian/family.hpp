#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bohemian/rng.hpp"
#include "bohemian/scalar.hpp"

namespace bohemian {

struct family_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Finite entry population. Elements are distinct exact scalars in one ring;
/// B is the largest modulus (the bound that drives the Hessenberg radius
/// theorem).
struct Population {
    std::vector<CyclotomicScalar> elements;
    double magnitude_bound = 0;

    Population() = default;
    explicit Population(std::vector<CyclotomicScalar> elems) : elements(std::move(elems)) {
        if (elements.empty()) throw family_error("population must be nonempty");
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if (elements[i].ring != elements[0].ring)
                throw family_error("population elements must share one ring");
            for (std::size_t j = 0; j < i; ++j)
                if (elements[i] == elements[j]) throw family_error("population has duplicate elements");
            magnitude_bound = std::max(magnitude_bound, modulus(elements[i]));
        }
    }

    Ring ring() const { return elements.front().ring; }
    std::size_t size() const { return elements.size(); }

    std::optional<std::size_t> index_of(const CyclotomicScalar& x) const {
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == x) return i;
        return std::nullopt;
    }
};

enum class FamilyKind : std::uint8_t {
    Dense,
    Symmetric,
    SkewSymmetricTridiagonal,
    UpperHessenberg,
    UnitUHZeroDiag,
    UHToeplitzZeroDiag,
};

inline const char* kind_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::Dense: return "DENSE";
        case FamilyKind::Symmetric: return "SYMMETRIC";
        case FamilyKind::SkewSymmetricTridiagonal: return "SKEW_SYMMETRIC_TRIDIAGONAL";
        case FamilyKind::UpperHessenberg: return "UPPER_HESSENBERG";
        case FamilyKind::UnitUHZeroDiag: return "UNIT_UH_ZERO_DIAG";
        case FamilyKind::UHToeplitzZeroDiag: return "UH_TOEPLITZ_ZERO_DIAG";
    }
    return "?";
}

inline FamilyKind kind_from_name(const std::string& s) {
    if (s == "DENSE") return FamilyKind::Dense;
    if (s == "SYMMETRIC") return FamilyKind::Symmetric;
    if (s == "SKEW_SYMMETRIC_TRIDIAGONAL") return FamilyKind::SkewSymmetricTridiagonal;
    if (s == "UPPER_HESSENBERG") return FamilyKind::UpperHessenberg;
    if (s == "UNIT_UH_ZERO_DIAG") return FamilyKind::UnitUHZeroDiag;
    if (s == "UH_TOEPLITZ_ZERO_DIAG") return FamilyKind::UHToeplitzZeroDiag;
    throw family_error("unknown family kind: " + s);
}

template <class T>
struct SquareMatrix {
    int n = 0;
    std::vector<T> e;

    SquareMatrix() = default;
    explicit SquareMatrix(int n_, T fill = T{}) : n(n_), e(static_cast<std::size_t>(n_) * n_, fill) {}

    T& at(int i, int j) { return e[static_cast<std::size_t>(i) * n + j]; }
    const T& at(int i, int j) const { return e[static_cast<std::size_t>(i) * n + j]; }
};

using ComplexMatrix = SquareMatrix<std::complex<double>>;

struct MatrixInstance {
    SquareMatrix<CyclotomicScalar> entries;
    std::optional<BigInt> source_index;

    int dim() const { return entries.n; }
    const CyclotomicScalar& at(int i, int j) const { return entries.at(i, j); }
};

/// A Bohemian family: structure kind, dimension, entry population(s), and
/// the fixed subdiagonal used by the Hessenberg kinds. Defines a bijection
/// between [0, family_size) and the matrices of the family.
struct FamilySpec {
    FamilyKind kind = FamilyKind::Dense;
    int m = 1;
    Population population;
    CyclotomicScalar subdiagonal_value;                // Hessenberg kinds
    bool subdiagonal_free = false;                     // UPPER_HESSENBERG only
    std::optional<Population> diagonal_population;     // UPPER_HESSENBERG only

    FamilySpec() = default;
    FamilySpec(FamilyKind k, int m_, Population pop)
        : kind(k), m(m_), population(std::move(pop)),
          subdiagonal_value(CyclotomicScalar::integer(BigInt(-1), population.ring())) {
        validate();
    }

    Ring ring() const { return population.ring(); }

    void validate() const {
        if (m < 1) throw family_error("dimension must be positive");
        if (population.elements.empty()) throw family_error("population required");
        if (subdiagonal_value.ring != ring()) throw family_error("subdiagonal ring mismatch");
        if (diagonal_population && diagonal_population->ring() != ring())
            throw family_error("diagonal population ring mismatch");
        if (kind == FamilyKind::UnitUHZeroDiag && !subdiagonal_value.is_unit())
            throw family_error("unit Hessenberg family needs a unit subdiagonal value");
        if (kind != FamilyKind::UpperHessenberg && subdiagonal_free)
            throw family_error("subdiagonal_free applies to UPPER_HESSENBERG only");
    }
};

/// One free entry: its position and which population it draws from.
struct FreeSlot {
    int row = 0;
    int col = 0;
    bool diagonal_pop = false;
};

inline const Population& slot_population(const FamilySpec& spec, const FreeSlot& s) {
    if (s.diagonal_pop && spec.diagonal_population) return *spec.diagonal_population;
    return spec.population;
}

/// Free positions in deterministic row-major order over stored entries
/// (0-based). This order is the enumeration contract: digit j of a family
/// index selects the element for slot j.
inline std::vector<FreeSlot> free_slots(const FamilySpec& spec) {
    std::vector<FreeSlot> out;
    const int m = spec.m;
    switch (spec.kind) {
        case FamilyKind::Dense:
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) out.push_back({i, j, false});
            break;
        case FamilyKind::Symmetric:
            for (int i = 0; i < m; ++i)
                for (int j = i; j < m; ++j) out.push_back({i, j, false});
            break;
        case FamilyKind::SkewSymmetricTridiagonal:
            for (int i = 0; i + 1 < m; ++i) out.push_back({i, i + 1, false});
            break;
        case FamilyKind::UpperHessenberg:
            for (int i = 0; i < m; ++i) {
                if (spec.subdiagonal_free && i > 0) out.push_back({i, i - 1, false});
                out.push_back({i, i, spec.diagonal_population.has_value()});
                for (int j = i + 1; j < m; ++j) out.push_back({i, j, false});
            }
            break;
        case FamilyKind::UnitUHZeroDiag:
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j) out.push_back({i, j, false});
            break;
        case FamilyKind::UHToeplitzZeroDiag:
            for (int j = 1; j < m; ++j) out.push_back({0, j, false});
            break;
    }
    return out;
}

inline std::vector<std::pair<int, int>> free_entry_positions(const FamilySpec& spec) {
    std::vector<std::pair<int, int>> out;
    for (const auto& s : free_slots(spec)) out.emplace_back(s.row, s.col);
    return out;
}

inline std::size_t free_entry_count(const FamilySpec& spec) { return free_slots(spec).size(); }

inline BigInt family_size(const FamilySpec& spec) {
    BigInt n = 1;
    for (const auto& s : free_slots(spec)) n *= BigInt(static_cast<unsigned long>(slot_population(spec, s).size()));
    return n;
}

/// Fills a full matrix from per-slot values; the mirroring rules (symmetry,
/// skew negation, Toeplitz constancy, fixed subdiagonal) live here.
template <class T>
void fill_matrix(const FamilySpec& spec, const std::vector<FreeSlot>& slots,
                 const std::vector<T>& values, const T& zero, const T& subdiag,
                 SquareMatrix<T>& out) {
    const int m = spec.m;
    out.n = m;
    out.e.assign(static_cast<std::size_t>(m) * m, zero);
    switch (spec.kind) {
        case FamilyKind::Dense:
        case FamilyKind::UpperHessenberg:
            for (std::size_t k = 0; k < slots.size(); ++k) out.at(slots[k].row, slots[k].col) = values[k];
            if (spec.kind == FamilyKind::UpperHessenberg && !spec.subdiagonal_free)
                for (int i = 1; i < m; ++i) out.at(i, i - 1) = subdiag;
            break;
        case FamilyKind::Symmetric:
            for (std::size_t k = 0; k < slots.size(); ++k) {
                out.at(slots[k].row, slots[k].col) = values[k];
                out.at(slots[k].col, slots[k].row) = values[k];
            }
            break;
        case FamilyKind::SkewSymmetricTridiagonal:
            for (std::size_t k = 0; k < slots.size(); ++k) {
                out.at(slots[k].row, slots[k].col) = values[k];
                out.at(slots[k].col, slots[k].row) = -values[k];
            }
            break;
        case FamilyKind::UnitUHZeroDiag:
            for (std::size_t k = 0; k < slots.size(); ++k) out.at(slots[k].row, slots[k].col) = values[k];
            for (int i = 1; i < m; ++i) out.at(i, i - 1) = subdiag;
            break;
        case FamilyKind::UHToeplitzZeroDiag:
            for (std::size_t k = 0; k < slots.size(); ++k) {
                // slot k holds t_{k+1}, the (k+1)-th superdiagonal, read from row 0
                for (int i = 0; i + static_cast<int>(k) + 1 < m; ++i)
                    out.at(i, i + static_cast<int>(k) + 1) = values[k];
            }
            for (int i = 1; i < m; ++i) out.at(i, i - 1) = subdiag;
            break;
    }
}

/// Decodes idx into mixed-radix digits over the slot bases; slot 0 is the
/// least significant digit.
inline std::vector<std::uint32_t> index_digits(const FamilySpec& spec, const BigInt& idx) {
    auto slots = free_slots(spec);
    if (idx < 0 || idx >= family_size(spec)) throw family_error("family index out of range");
    std::vector<std::uint32_t> digits(slots.size(), 0);
    BigInt rest = idx;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        auto base = static_cast<unsigned long>(slot_population(spec, slots[k]).size());
        BigInt q = rest / base;
        digits[k] = static_cast<std::uint32_t>(BigInt(rest - q * base).get_ui());
        rest = q;
    }
    return digits;
}

inline MatrixInstance matrix_from_digits(const FamilySpec& spec, const std::vector<FreeSlot>& slots,
                                         const std::vector<std::uint32_t>& digits) {
    std::vector<CyclotomicScalar> values(slots.size());
    for (std::size_t k = 0; k < slots.size(); ++k)
        values[k] = slot_population(spec, slots[k]).elements[digits[k]];
    MatrixInstance inst;
    fill_matrix(spec, slots, values, CyclotomicScalar::zero(spec.ring()), spec.subdiagonal_value,
                inst.entries);
    return inst;
}

inline MatrixInstance matrix_from_index(const FamilySpec& spec, const BigInt& idx) {
    auto slots = free_slots(spec);
    auto inst = matrix_from_digits(spec, slots, index_digits(spec, idx));
    inst.source_index = idx;
    return inst;
}

/// Re-encodes a matrix to its family index; the inverse of matrix_from_index.
inline BigInt index_of_matrix(const FamilySpec& spec, const MatrixInstance& inst) {
    if (inst.dim() != spec.m) throw family_error("dimension mismatch");
    auto slots = free_slots(spec);
    BigInt idx = 0;
    BigInt scale = 1;
    for (const auto& s : slots) {
        const auto& pop = slot_population(spec, s);
        auto d = pop.index_of(inst.at(s.row, s.col));
        if (!d) throw family_error("entry not in population");
        idx += scale * BigInt(static_cast<unsigned long>(*d));
        scale *= static_cast<unsigned long>(pop.size());
    }
    return idx;
}

/// Structural validator: checks the mirroring/zero constraints of the kind.
inline bool matrix_matches_kind(const FamilySpec& spec, const MatrixInstance& inst) {
    const int m = inst.dim();
    if (m != spec.m) return false;
    auto zero = CyclotomicScalar::zero(spec.ring());
    switch (spec.kind) {
        case FamilyKind::Dense: return true;
        case FamilyKind::Symmetric:
            for (int i = 0; i < m; ++i)
                for (int j = i + 1; j < m; ++j)
                    if (!(inst.at(i, j) == inst.at(j, i))) return false;
            return true;
        case FamilyKind::SkewSymmetricTridiagonal:
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    if (std::abs(i - j) > 1) {
                        if (!inst.at(i, j).is_zero()) return false;
                    } else if (i == j) {
                        if (!inst.at(i, i).is_zero()) return false;
                    }
                }
            for (int i = 0; i + 1 < m; ++i)
                if (!(inst.at(i + 1, i) == -inst.at(i, i + 1))) return false;
            return true;
        case FamilyKind::UpperHessenberg:
        case FamilyKind::UnitUHZeroDiag:
        case FamilyKind::UHToeplitzZeroDiag: {
            for (int i = 0; i < m; ++i)
                for (int j = 0; j + 1 < i; ++j)
                    if (!inst.at(i, j).is_zero()) return false;
            const bool fixed_subdiag =
                spec.kind != FamilyKind::UpperHessenberg || !spec.subdiagonal_free;
            if (fixed_subdiag)
                for (int i = 1; i < m; ++i)
                    if (!(inst.at(i, i - 1) == spec.subdiagonal_value)) return false;
            if (spec.kind != FamilyKind::UpperHessenberg)
                for (int i = 0; i < m; ++i)
                    if (!inst.at(i, i).is_zero()) return false;
            if (spec.kind == FamilyKind::UHToeplitzZeroDiag)
                for (int i = 1; i < m; ++i)
                    for (int j = i + 1; j < m; ++j)
                        if (!(inst.at(i, j) == inst.at(0, j - i))) return false;
            return true;
        }
    }
    return false;
}

/// Streams `count` matrices with every free entry i.i.d. uniform over its
/// population. Identical (seed, count, spec) gives an identical stream on
/// every platform; shard k of the stream needs no state from other shards.
template <class F>
void sample_uniform(const FamilySpec& spec, std::uint64_t seed, std::uint64_t count, F&& f) {
    auto slots = free_slots(spec);
    std::vector<std::uint32_t> digits(slots.size());
    for (std::uint64_t k = 0; k < count; ++k) {
        auto rng = stream_rng(seed, k);
        for (std::size_t s = 0; s < slots.size(); ++s)
            digits[s] = static_cast<std::uint32_t>(
                rng.bounded(static_cast<std::uint64_t>(slot_population(spec, slots[s]).size())));
        f(matrix_from_digits(spec, slots, digits));
    }
}

inline std::vector<MatrixInstance> sample_uniform(const FamilySpec& spec, std::uint64_t seed,
                                                  std::uint64_t count) {
    std::vector<MatrixInstance> out;
    out.reserve(count);
    sample_uniform(spec, seed, count, [&](MatrixInstance m) { out.push_back(std::move(m)); });
    return out;
}

/// Height of the matrix: max modulus over entries.
inline double matrix_height(const MatrixInstance& inst) {
    double h = 0;
    for (const auto& x : inst.entries.e) h = std::max(h, modulus(x));
    return h;
}

/// Diagonal similarity D H D^{-1} making every subdiagonal entry 1, for an
/// irreducible upper Hessenberg matrix whose subdiagonal entries are units
/// of the ring. s_{k+1} = s_k * conj(h_{k+1,k}), s_1 = 1; since |s_k| = 1 the
/// inverse is the conjugate and everything stays exact.
inline MatrixInstance normalize_subdiagonal(const MatrixInstance& H) {
    const int m = H.dim();
    const Ring rg = m > 0 ? H.entries.e.front().ring : Ring::Int;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j + 1 < i; ++j)
            if (!H.at(i, j).is_zero()) throw family_error("matrix is not upper Hessenberg");
    std::vector<CyclotomicScalar> s(static_cast<std::size_t>(m), CyclotomicScalar::one(rg));
    for (int i = 1; i < m; ++i) {
        const auto& h = H.at(i, i - 1);
        if (h.is_zero()) throw family_error("reducible Hessenberg matrix (zero subdiagonal entry)");
        if (!h.is_unit()) throw family_error("subdiagonal entry is not a unit of the ring");
        s[i] = s[i - 1] * h.conj();
    }
    MatrixInstance out;
    out.entries = SquareMatrix<CyclotomicScalar>(m, CyclotomicScalar::zero(rg));
    for (int i = 0; i < m; ++i)
        for (int j = std::max(0, i - 1); j < m; ++j)
            out.entries.at(i, j) = s[i] * H.at(i, j) * s[j].conj();
    return out;
}

inline ComplexMatrix to_complex(const SquareMatrix<CyclotomicScalar>& a) {
    ComplexMatrix out(a.n);
    for (std::size_t k = 0; k < a.e.size(); ++k) out.e[k] = to_complex(a.e[k]);
    return out;
}

/// Exhaustive sweep driver: walks indices [begin, end) with an odometer
/// (no divisions) and hands each matrix to `f` as values in any embedded
/// scalar type prepared by the caller.
template <class T, class F>
void enumerate_embedded(const FamilySpec& spec, std::uint64_t begin, std::uint64_t end,
                        const std::vector<std::vector<T>>& slot_values, const T& zero,
                        const T& subdiag, F&& f) {
    auto slots = free_slots(spec);
    std::vector<std::uint32_t> digits(slots.size(), 0);
    {
        std::uint64_t rest = begin;
        for (std::size_t k = 0; k < slots.size() && rest > 0; ++k) {
            auto base = static_cast<std::uint64_t>(slot_values[k].size());
            digits[k] = static_cast<std::uint32_t>(rest % base);
            rest /= base;
        }
    }
    std::vector<T> values(slots.size(), zero);
    SquareMatrix<T> mat(spec.m, zero);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
        for (std::size_t k = 0; k < slots.size(); ++k) values[k] = slot_values[k][digits[k]];
        fill_matrix(spec, slots, values, zero, subdiag, mat);
        f(idx, mat);
        for (std::size_t k = 0; k < slots.size(); ++k) {
            if (++digits[k] < slot_values[k].size()) break;
            digits[k] = 0;
        }
    }
}

/// Per-slot population values embedded into T via `embed`.
template <class T, class Embed>
std::vector<std::vector<T>> embedded_slot_values(const FamilySpec& spec, Embed&& embed) {
    std::vector<std::vector<T>> out;
    for (const auto& s : free_slots(spec)) {
        const auto& pop = slot_population(spec, s);
        std::vector<T> vals;
        vals.reserve(pop.size());
        for (const auto& x : pop.elements) vals.push_back(embed(x));
        out.push_back(std::move(vals));
    }
    return out;
}

}  // namespace bohemian
