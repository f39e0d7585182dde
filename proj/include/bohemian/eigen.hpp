#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "bohemian/family.hpp"
#include "bohemian/polyroots.hpp"

namespace bohemian {

struct Spectrum {
    std::vector<cplx> values;  // length m, with multiplicity
    double residual_bound = 0;
};

namespace detail {

struct Givens {
    double c = 1.0;  // real cosine
    cplx s = 0.0;
};

inline Givens make_givens(cplx f, cplx g, cplx& r) {
    Givens gv;
    double af = std::abs(f), ag = std::abs(g);
    if (ag == 0.0) {
        gv.c = 1.0;
        gv.s = 0.0;
        r = f;
    } else if (af == 0.0) {
        gv.c = 0.0;
        gv.s = std::conj(g) / ag;
        r = ag;
    } else {
        double d = std::hypot(af, ag);
        cplx fu = f / af;
        gv.c = af / d;
        gv.s = fu * std::conj(g) / d;
        r = fu * d;
    }
    return gv;
}

/// Householder reduction of a dense complex matrix to upper Hessenberg form
/// (eigenvalue-only; the similarity is not accumulated).
inline void hessenberg_reduce(std::vector<cplx>& h, int n) {
    auto at = [&](int i, int j) -> cplx& { return h[static_cast<std::size_t>(i) * n + j]; };
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (int k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(at(i, k));
        if (scale == 0.0) continue;
        double norm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = at(i, k) / scale;
            norm2 += std::norm(v[i]);
        }
        double alpha = std::sqrt(norm2);
        if (alpha == 0.0) continue;
        cplx x0 = v[k + 1];
        cplx phase = (std::abs(x0) > 0) ? x0 / std::abs(x0) : cplx(1.0);
        cplx w0 = x0 + phase * alpha;
        v[k + 1] = w0;
        double vnorm2 = norm2 - std::norm(x0) + std::norm(w0);
        if (vnorm2 == 0.0) continue;
        // A <- (I - 2 v v^H / v^H v) A (same from the right)
        for (int j = k; j < n; ++j) {
            cplx dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += std::conj(v[i]) * at(i, j);
            dot *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) at(i, j) -= dot * v[i];
        }
        for (int i = 0; i < n; ++i) {
            cplx dot = 0.0;
            for (int j = k + 1; j < n; ++j) dot += at(i, j) * v[j];
            dot *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j) at(i, j) -= dot * std::conj(v[j]);
        }
        for (int i = k + 2; i < n; ++i) at(i, k) = 0.0;
    }
}

}  // namespace detail

/// Eigenvalues of a dense complex matrix: Hessenberg reduction followed by
/// single-shift (Wilkinson) complex QR with deflation. Throws
/// convergence_error after 40*m sweeps without full deflation.
/// `h` is destroyed; values are appended in deflation order.
inline void eigenvalues_inplace(std::vector<cplx>& h, int n, std::vector<cplx>& values) {
    values.clear();
    if (n == 0) return;
    auto at = [&](int i, int j) -> cplx& { return h[static_cast<std::size_t>(i) * n + j]; };
    if (n == 1) {
        values.push_back(at(0, 0));
        return;
    }

    bool is_hess = true;
    for (int i = 2; i < n && is_hess; ++i)
        for (int j = 0; j + 1 < i; ++j)
            if (at(i, j) != cplx(0.0)) {
                is_hess = false;
                break;
            }
    if (!is_hess) detail::hessenberg_reduce(h, n);

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 1); j < n; ++j) anorm += std::abs(at(i, j));
    if (anorm == 0.0) anorm = 1.0;

    const double eps = 2.220446049250313e-16;
    const int sweep_cap = 40 * n;
    int sweeps = 0;
    int hi = n - 1;
    int since_deflation = 0;

    std::vector<detail::Givens> rots(static_cast<std::size_t>(n));
    while (hi >= 0) {
        // find the active block [lo, hi]
        int lo = hi;
        while (lo > 0) {
            double s = std::abs(at(lo - 1, lo - 1)) + std::abs(at(lo, lo));
            if (s == 0.0) s = anorm;
            if (std::abs(at(lo, lo - 1)) <= eps * s) {
                at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            values.push_back(at(hi, hi));
            --hi;
            since_deflation = 0;
            continue;
        }
        if (++sweeps > sweep_cap)
            throw convergence_error("eigenvalues: QR iteration cap exceeded");

        // shift
        cplx shift;
        if (++since_deflation % 20 == 0) {
            // exceptional shift: complex offset, so it also breaks the
            // modulus ties of symmetric spectra (zero-diagonal families have
            // eigenvalues closed under negation, which a real shift keeps tied)
            double s = std::abs(at(hi, hi - 1)) +
                       (hi - 1 > lo ? std::abs(at(hi - 1, hi - 2)) : 0.0);
            shift = at(hi, hi) + s * cplx(0.75, -0.4375);
        } else {
            cplx a = at(hi - 1, hi - 1), b = at(hi - 1, hi), c = at(hi, hi - 1), d = at(hi, hi);
            cplx tr2 = (a + d) * 0.5;
            cplx disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
            cplx m1 = tr2 + disc, m2 = tr2 - disc;
            shift = (std::abs(m1 - d) < std::abs(m2 - d)) ? m1 : m2;
        }

        for (int i = lo; i <= hi; ++i) at(i, i) -= shift;
        // QR by Givens on the subdiagonal, then RQ
        for (int i = lo + 1; i <= hi; ++i) {
            cplx r;
            rots[i] = detail::make_givens(at(i - 1, i - 1), at(i, i - 1), r);
            at(i - 1, i - 1) = r;
            at(i, i - 1) = 0.0;
            const auto& g = rots[i];
            for (int j = i; j <= hi; ++j) {
                cplx u = at(i - 1, j), v = at(i, j);
                at(i - 1, j) = g.c * u + g.s * v;
                at(i, j) = -std::conj(g.s) * u + g.c * v;
            }
        }
        for (int i = lo + 1; i <= hi; ++i) {
            const auto& g = rots[i];
            int rmax = std::min(i + 1, hi);
            for (int r = lo; r <= rmax; ++r) {
                cplx u = at(r, i - 1), v = at(r, i);
                at(r, i - 1) = g.c * u + std::conj(g.s) * v;
                at(r, i) = -g.s * u + g.c * v;
            }
        }
        for (int i = lo; i <= hi; ++i) at(i, i) += shift;
    }
    std::reverse(values.begin(), values.end());  // deflation emits bottom-up
}

inline Spectrum eigenvalues(const ComplexMatrix& A) {
    for (const auto& x : A.e)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw std::invalid_argument("eigenvalues: non-finite entry");
    std::vector<cplx> h = A.e;
    Spectrum sp;
    eigenvalues_inplace(h, A.n, sp.values);
    double fro = 0.0;
    for (const auto& x : A.e) fro += std::norm(x);
    sp.residual_bound = std::sqrt(fro) * A.n * 2.220446049250313e-16;
    return sp;
}

inline Spectrum eigenvalues(const MatrixInstance& A) { return eigenvalues(to_complex(A.entries)); }

}  // namespace bohemian
