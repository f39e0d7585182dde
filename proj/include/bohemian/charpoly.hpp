#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bohemian/family.hpp"
#include "bohemian/scalar.hpp"

namespace bohemian {

/// Monic exact characteristic polynomial det(zI - A), coefficients ascending
/// (coeffs[0] is the constant term, coeffs[m] == 1).
struct CharPoly {
    Ring ring = Ring::Int;
    std::vector<CyclotomicScalar> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    bool is_monic() const {
        return !coeffs.empty() && coeffs.back() == CyclotomicScalar::one(ring);
    }

    friend bool operator==(const CharPoly& l, const CharPoly& r) {
        return l.ring == r.ring && l.coeffs == r.coeffs;
    }
};

/// Lexicographic order on the canonical coefficient tuple (c0.a, c0.b, c1.a, ...),
/// ring tag first; the census export ordering.
inline bool charpoly_less(const CharPoly& l, const CharPoly& r) {
    if (l.ring != r.ring) return l.ring < r.ring;
    if (l.coeffs.size() != r.coeffs.size()) return l.coeffs.size() < r.coeffs.size();
    for (std::size_t i = 0; i < l.coeffs.size(); ++i) {
        int c = cmp(l.coeffs[i].a, r.coeffs[i].a);
        if (c != 0) return c < 0;
        c = cmp(l.coeffs[i].b, r.coeffs[i].b);
        if (c != 0) return c < 0;
    }
    return false;
}

template <class S>
struct BerkowitzWorkspace {
    std::vector<S> poly, toep, next, v, w;
};

/// Berkowitz' division-free characteristic polynomial. Writes coefficients
/// of det(zI - A) to `out` in ascending order. Works over any commutative
/// ring scalar (exact big-int, trapped int64, magnitude bounds) because it
/// never divides.
template <class S>
void berkowitz_charpoly(const SquareMatrix<S>& A, const S& zero, const S& one,
                        BerkowitzWorkspace<S>& ws, std::vector<S>& out) {
    const int n = A.n;
    // poly holds descending coefficients of the charpoly of the leading
    // principal r x r submatrix; starts with the empty matrix, charpoly 1.
    auto& poly = ws.poly;
    auto& toep = ws.toep;
    auto& next = ws.next;
    auto& v = ws.v;
    auto& w = ws.w;
    poly.assign(1, one);
    for (int r = 1; r <= n; ++r) {
        const int c = r - 1;  // corner index
        // First column of the (r+1) x r Toeplitz multiplier:
        // [1, -A(c,c), -(R.S), -(R.M.S), ..., -(R.M^{r-2}.S)]
        toep.assign(static_cast<std::size_t>(r) + 1, zero);
        toep[0] = one;
        toep[1] = -A.at(c, c);
        if (r >= 2) {
            v.assign(static_cast<std::size_t>(c), zero);
            for (int i = 0; i < c; ++i) v[i] = A.at(i, c);
            for (int k = 2; k <= r; ++k) {
                S dot = zero;
                for (int i = 0; i < c; ++i) dot = dot + A.at(c, i) * v[i];
                toep[k] = -dot;
                if (k == r) break;
                w.assign(static_cast<std::size_t>(c), zero);
                for (int i = 0; i < c; ++i) {
                    S acc = zero;
                    for (int j = 0; j < c; ++j) acc = acc + A.at(i, j) * v[j];
                    w[i] = acc;
                }
                v.swap(w);
            }
        }
        next.assign(static_cast<std::size_t>(r) + 1, zero);
        for (int i = 0; i <= r; ++i) {
            S acc = zero;
            const int kmin = std::max(0, i - (r - 1));
            const int kmax = std::min(i, r);
            for (int k = kmin; k <= kmax; ++k) acc = acc + toep[k] * poly[i - k];
            next[i] = acc;
        }
        poly.swap(next);
    }
    out.assign(poly.rbegin(), poly.rend());  // descending -> ascending
}

template <class S>
std::vector<S> berkowitz_charpoly(const SquareMatrix<S>& A, const S& zero, const S& one) {
    BerkowitzWorkspace<S> ws;
    std::vector<S> out;
    berkowitz_charpoly(A, zero, one, ws, out);
    return out;
}

inline CharPoly charpoly_general(const MatrixInstance& A) {
    const Ring rg = A.dim() > 0 ? A.entries.e.front().ring : Ring::Int;
    CharPoly p;
    p.ring = rg;
    p.coeffs = berkowitz_charpoly(A.entries, CyclotomicScalar::zero(rg), CyclotomicScalar::one(rg));
    return p;
}

/// Characteristic polynomial family Q_0, Q_1, ..., Q_m of the unit upper
/// Hessenberg zero-diagonal Toeplitz matrices (subdiagonal -1, superdiagonal
/// k equal to t_k):
///   Q_0 = 1,  Q_{n+1}(z) = z Q_n(z) - sum_{k=1}^{n} (-1)^k t_k Q_{n-k}(z).
/// Ascending coefficients, one vector per Q_n.
template <class S>
std::vector<std::vector<S>> toeplitz_charpoly_tower(const std::vector<S>& t, const S& zero,
                                                    const S& one) {
    const std::size_t m = t.size() + 1;
    std::vector<std::vector<S>> q;
    q.reserve(m + 1);
    q.push_back({one});
    for (std::size_t n = 0; n < m; ++n) {
        std::vector<S> next(n + 2, zero);
        for (std::size_t i = 0; i <= n; ++i) next[i + 1] = q[n][i];  // z * Q_n
        for (std::size_t k = 1; k <= n; ++k) {
            // -(-1)^k t_k Q_{n-k}
            const auto& qk = q[n - k];
            for (std::size_t i = 0; i < qk.size(); ++i) {
                S term = t[k - 1] * qk[i];
                next[i] = (k % 2 == 1) ? next[i] + term : next[i] - term;
            }
        }
        q.push_back(std::move(next));
    }
    return q;
}

inline CharPoly charpoly_toeplitz_recurrence(const std::vector<CyclotomicScalar>& t, Ring rg) {
    for (const auto& x : t)
        if (x.ring != rg) throw ring_error("mixed-ring Toeplitz entries");
    auto tower =
        toeplitz_charpoly_tower(t, CyclotomicScalar::zero(rg), CyclotomicScalar::one(rg));
    CharPoly p;
    p.ring = rg;
    p.coeffs = std::move(tower.back());
    return p;
}

inline CharPoly charpoly_toeplitz_recurrence(const std::vector<CyclotomicScalar>& t) {
    return charpoly_toeplitz_recurrence(t, t.empty() ? Ring::Int : t.front().ring);
}

/// Height of the coefficient vector: max modulus over coefficients.
inline double characteristic_height(const CharPoly& p) {
    double h = 0;
    for (const auto& x : p.coeffs) h = std::max(h, modulus(x));
    return h;
}

/// Exact polynomial product over the ring (ascending coefficients).
inline std::vector<CyclotomicScalar> poly_mul(const std::vector<CyclotomicScalar>& f,
                                              const std::vector<CyclotomicScalar>& g, Ring rg) {
    std::vector<CyclotomicScalar> out(f.size() + g.size() - 1, CyclotomicScalar::zero(rg));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) out[i + j] = out[i + j] + f[i] * g[j];
    return out;
}

}  // namespace bohemian
