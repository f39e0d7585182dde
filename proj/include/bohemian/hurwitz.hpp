#pragma once

#include <vector>

#include "bohemian/charpoly.hpp"
#include "bohemian/scalar.hpp"

namespace bohemian {

enum class Stability { Stable, NotStrictlyStable };

/// Doubled real polynomial P = p * conj(p), conj applied coefficient-wise.
/// Its coefficients are rational integers whenever p has Gaussian or
/// Eisenstein integer coefficients; P is Hurwitz-stable iff p is.
inline std::vector<BigInt> doubled_real_poly(const CharPoly& p) {
    std::vector<CyclotomicScalar> pbar;
    pbar.reserve(p.coeffs.size());
    for (const auto& c : p.coeffs) pbar.push_back(c.conj());
    auto prod = poly_mul(p.coeffs, pbar, p.ring);
    std::vector<BigInt> out;
    out.reserve(prod.size());
    for (auto& c : prod) {
        if (!(c.b == 0)) throw ring_error("p * conj(p) must have real coefficients");
        out.push_back(std::move(c.a));
    }
    return out;
}

/// Exact strict-Hurwitz decision: all leading principal minors of the
/// Hurwitz matrix of P (descending coefficients a0 > 0) must be positive.
/// Bareiss fraction-free elimination produces exactly those minors as its
/// pivots, so the first non-positive pivot decides.
inline Stability hurwitz_minors_all_positive(const std::vector<BigInt>& desc) {
    const int n = static_cast<int>(desc.size()) - 1;  // degree
    if (n <= 0) return Stability::Stable;             // constant: no roots
    // Necessary condition first: every coefficient strictly positive.
    for (const auto& a : desc)
        if (a <= 0) return Stability::NotStrictlyStable;
    auto coef = [&](int k) -> BigInt {
        return (k >= 0 && k <= n) ? desc[static_cast<std::size_t>(k)] : BigInt(0);
    };
    std::vector<BigInt> h(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h[static_cast<std::size_t>(i) * n + j] = coef(2 * (j + 1) - (i + 1));
    auto at = [&](int i, int j) -> BigInt& { return h[static_cast<std::size_t>(i) * n + j]; };
    BigInt prev = 1;
    for (int k = 0; k < n; ++k) {
        if (at(k, k) <= 0) return Stability::NotStrictlyStable;  // minor <= 0
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                BigInt num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = at(k, k);
    }
    return Stability::Stable;
}

/// True iff every root of the monic polynomial p lies strictly in the open
/// left half-plane. Decided exactly in integer arithmetic.
inline Stability routh_hurwitz_stable(const CharPoly& p) {
    if (!p.is_monic()) throw std::invalid_argument("routh_hurwitz_stable needs a monic polynomial");
    auto prod = doubled_real_poly(p);                       // ascending
    std::vector<BigInt> desc(prod.rbegin(), prod.rend());   // a0 = 1 first
    return hurwitz_minors_all_positive(desc);
}

}  // namespace bohemian
