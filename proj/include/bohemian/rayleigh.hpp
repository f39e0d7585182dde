#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "bohemian/charpoly.hpp"
#include "bohemian/family.hpp"

namespace bohemian {

/// (A^{-1})_{11}: first component of the solution of A x = e1, by LU with
/// partial pivoting. Empty when A is singular at the pivot threshold; the
/// plotting path simply skips such points.
inline std::optional<cplx> inverse_corner(const ComplexMatrix& A, double rel_threshold = 1e-12) {
    const int n = A.n;
    std::vector<cplx> lu = A.e;
    auto at = [&](int i, int j) -> cplx& { return lu[static_cast<std::size_t>(i) * n + j]; };
    double scale = 0.0;
    for (const auto& x : lu) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return std::nullopt;

    std::vector<cplx> x(static_cast<std::size_t>(n), 0.0);
    x[0] = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(at(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(at(i, k)) > best) {
                best = std::abs(at(i, k));
                piv = i;
            }
        if (best <= rel_threshold * scale) return std::nullopt;
        if (piv != k) {
            for (int j = k; j < n; ++j) std::swap(at(piv, j), at(k, j));
            std::swap(x[piv], x[k]);
        }
        for (int i = k + 1; i < n; ++i) {
            cplx f = at(i, k) / at(k, k);
            for (int j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
            x[i] -= f * x[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= at(i, j) * x[j];
        x[i] /= at(i, i);
    }
    return x[0];
}

inline std::optional<cplx> inverse_corner(const MatrixInstance& A, double rel_threshold = 1e-12) {
    return inverse_corner(to_complex(A.entries), rel_threshold);
}

/// Corner of the inverse of the unit upper Hessenberg zero-diagonal Toeplitz
/// matrix with superdiagonals t, as a ratio of two exact characteristic
/// polynomial values at zero:
///     (A^{-1})_{11} = -Q_{m-1}(0) / Q_m(0).
/// The cofactor of the (1,1) entry is the trailing (m-1)-dimensional matrix
/// of the same family, and det A = (-1)^m Q_m(0); the signs cancel to the
/// single minus above (verified against the direct solve; the m=2 case,
/// where the corner is exactly 0 while Q_1(0) = 0, pins the orientation).
/// The only floating division happens at the end.
inline std::optional<cplx> inverse_corner_toeplitz(const std::vector<CyclotomicScalar>& t) {
    const Ring rg = t.empty() ? Ring::Int : t.front().ring;
    auto tower = toeplitz_charpoly_tower(t, CyclotomicScalar::zero(rg), CyclotomicScalar::one(rg));
    const auto& qm = tower[tower.size() - 1].front();      // Q_m(0)
    const auto& qm1 = tower[tower.size() - 2].front();     // Q_{m-1}(0)
    if (qm.is_zero()) return std::nullopt;
    return -to_complex(qm1) / to_complex(qm);
}

}  // namespace bohemian
