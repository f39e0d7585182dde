#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "bohemian/charpoly.hpp"
#include "bohemian/eigen.hpp"
#include "bohemian/family.hpp"
#include "bohemian/polyroots.hpp"

namespace bohemian {

/// Scaled Laurent symbol of a unit upper Hessenberg zero-diagonal Toeplitz
/// family: a(z) = -rho/z + sum_{k>=1} t_k (z/rho)^k. Pole order q is 1.
struct LaurentSymbol {
    std::vector<cplx> t;
    double rho = 1.0;

    LaurentSymbol() = default;
    LaurentSymbol(std::vector<cplx> t_, double rho_) : t(std::move(t_)), rho(rho_) {
        if (!(rho > 0)) throw std::invalid_argument("symbol scale rho must be positive");
    }

    int top_degree() const { return static_cast<int>(t.size()); }

    cplx eval(cplx z) const {
        if (z == cplx(0.0)) throw std::invalid_argument("symbol has a pole at z = 0");
        cplx w = z / rho;
        cplx acc = 0.0;
        for (std::size_t k = t.size(); k-- > 0;) acc = (acc + t[k]) * w;
        return -rho / z + acc;
    }
};

inline cplx symbol_eval(const LaurentSymbol& sym, cplx z) { return sym.eval(z); }

inline LaurentSymbol make_symbol(const std::vector<CyclotomicScalar>& t, double rho) {
    std::vector<cplx> tc;
    tc.reserve(t.size());
    for (const auto& x : t) tc.push_back(to_complex(x));
    return LaurentSymbol(std::move(tc), rho);
}

struct SSCandidate {
    int phi_index = 0;
    double phi = 0;
    cplx lambda;
    bool accepted = false;
};

/// Schmidt-Spitzer point set of a symbol, with the diagnostics the CSV and
/// reports need.
struct SSCurve {
    std::vector<cplx> points;        // accepted lambda, in (phi index, root index) order
    std::vector<double> phi_grid;    // phi values actually used (0 excluded)
    double rho = 1.0;
    std::uint64_t rejected = 0;      // candidates failing the smallest-pair test
    std::uint64_t failed_phi = 0;    // phi values skipped due to root-finder failure
    std::vector<SSCandidate> candidates;
};

namespace detail {

/// z a(z) - z a(w z) as an ascending polynomial in z:
///   rho (1/w - 1) + sum_k t_k (1 - w^k) z^{k+1} / rho^k.
inline std::vector<cplx> pair_equation(const LaurentSymbol& sym, cplx w) {
    std::vector<cplx> c(sym.t.size() + 2, cplx(0.0));
    c[0] = sym.rho * (1.0 / w - 1.0);
    double rk = 1.0;
    cplx wk = 1.0;
    for (std::size_t k = 1; k <= sym.t.size(); ++k) {
        rk *= sym.rho;
        wk *= w;
        c[k + 1] = sym.t[k - 1] * (1.0 - wk) / rk;
    }
    return c;
}

/// z a(z) - z lambda, ascending: -rho - lambda z + sum_k t_k z^{k+1}/rho^k.
inline std::vector<cplx> level_equation(const LaurentSymbol& sym, cplx lambda) {
    std::vector<cplx> c(sym.t.size() + 2, cplx(0.0));
    c[0] = -sym.rho;
    c[1] = -lambda;
    double rk = 1.0;
    for (std::size_t k = 1; k <= sym.t.size(); ++k) {
        rk *= sym.rho;
        c[k + 1] = sym.t[k - 1] / rk;
    }
    return c;
}

}  // namespace detail

/// Schmidt-Spitzer curve points. For each phi on an equally spaced grid over
/// [-pi, pi] (phi = 0 excluded: it would only add isolated points), solve
/// z a(z) - z a(e^{i phi} z) = 0; each root u gives a candidate
/// lambda = a(u), accepted iff u and e^{i phi} u are the smallest-modulus
/// roots of z a(z) - z lambda within relative tolerance tau.
inline SSCurve schmidt_spitzer_points(const LaurentSymbol& sym, int phi_count,
                                      double tau = 1e-8) {
    if (phi_count < 2) throw std::invalid_argument("phi_count must be at least 2");
    SSCurve curve;
    curve.rho = sym.rho;

    for (int j = 0; j < phi_count; ++j) {
        double phi = -M_PI + 2.0 * M_PI * j / (phi_count - 1);
        if (std::abs(phi) < 1e-12) continue;
        const cplx w = std::polar(1.0, phi);

        auto pair_coeffs = detail::pair_equation(sym, w);
        while (pair_coeffs.size() > 1 && std::abs(pair_coeffs.back()) == 0.0)
            pair_coeffs.pop_back();
        if (pair_coeffs.size() < 2) {  // degenerate symbol: no roots for this phi
            curve.phi_grid.push_back(phi);
            continue;
        }

        std::vector<cplx> roots_u;
        try {
            roots_u = polyroots(ComplexPoly(pair_coeffs));
        } catch (const convergence_error&) {
            ++curve.failed_phi;
            continue;
        }
        curve.phi_grid.push_back(phi);

        for (cplx u : roots_u) {
            if (std::abs(u) == 0.0) continue;  // not in the symbol's domain
            cplx lambda = sym.eval(u);
            SSCandidate cand{j, phi, lambda, false};
            try {
                auto roots_v = polyroots(ComplexPoly(detail::level_equation(sym, lambda)));
                const double ru = std::abs(u);
                // locate u and w u among the level roots
                std::size_t iu = 0, iwu = 0;
                double du = HUGE_VAL, dwu = HUGE_VAL;
                const cplx wu = w * u;
                for (std::size_t i = 0; i < roots_v.size(); ++i) {
                    double a = std::abs(roots_v[i] - u), b = std::abs(roots_v[i] - wu);
                    if (a < du) {
                        du = a;
                        iu = i;
                    }
                    if (b < dwu) {
                        dwu = b;
                        iwu = i;
                    }
                }
                bool ok = iu != iwu && du <= 1e-6 * (1.0 + ru) && dwu <= 1e-6 * (1.0 + ru);
                if (ok) {
                    ok = std::abs(std::abs(roots_v[iu]) - ru) <= tau * ru &&
                         std::abs(std::abs(roots_v[iwu]) - ru) <= tau * ru;
                }
                if (ok) {
                    // smallest-pair test: no other root strictly below |u|
                    for (std::size_t i = 0; i < roots_v.size() && ok; ++i)
                        if (i != iu && i != iwu && std::abs(roots_v[i]) < ru * (1.0 - tau))
                            ok = false;
                }
                cand.accepted = ok;
            } catch (const convergence_error&) {
                cand.accepted = false;
            }
            if (cand.accepted)
                curve.points.push_back(lambda);
            else
                ++curve.rejected;
            curve.candidates.push_back(cand);
        }
    }
    return curve;
}

inline SSCurve schmidt_spitzer_points(const std::vector<cplx>& t, double rho, int phi_count,
                                      double tau = 1e-8) {
    return schmidt_spitzer_points(LaurentSymbol(t, rho), phi_count, tau);
}

/// Default scale from the radius theorem's optimizer: rho = 1 + sqrt(B).
inline double default_rho(double B) { return 1.0 + std::sqrt(std::max(B, 0.0)); }

/// The closed curve a(e^{i psi} / rho) on an equally spaced psi grid over
/// [-pi, pi]; the envelope that encloses the Schmidt-Spitzer points.
inline std::vector<cplx> symbol_image(const LaurentSymbol& sym, int psi_count) {
    if (psi_count < 3) throw std::invalid_argument("psi_count must be at least 3");
    std::vector<cplx> out;
    out.reserve(psi_count);
    for (int j = 0; j < psi_count; ++j) {
        double psi = -M_PI + 2.0 * M_PI * j / (psi_count - 1);
        out.push_back(sym.eval(std::polar(1.0 / sym.rho, psi)));
    }
    return out;
}

/// Winding number of a closed polygon around p (vertices in order; the
/// polygon closes implicitly).
inline int winding_number(const std::vector<cplx>& polygon, cplx p) {
    double total = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        cplx a = polygon[i] - p;
        cplx b = polygon[(i + 1) % polygon.size()] - p;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

inline double distance_to_points(cplx p, const std::vector<cplx>& pts) {
    double d = HUGE_VAL;
    for (auto q : pts) d = std::min(d, std::abs(p - q));
    return d;
}

inline double distance_to_segment(cplx p, cplx a, cplx b) {
    cplx ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

inline double distance_to_polygon(cplx p, const std::vector<cplx>& polygon) {
    double d = HUGE_VAL;
    for (std::size_t i = 0; i < polygon.size(); ++i)
        d = std::min(d, distance_to_segment(p, polygon[i], polygon[(i + 1) % polygon.size()]));
    return d;
}

/// True if p is inside the closed polygon, or within tol of its boundary.
inline bool inside_envelope(const std::vector<cplx>& polygon, cplx p, double tol = 1e-9) {
    if (winding_number(polygon, p) != 0) return true;
    return distance_to_polygon(p, polygon) <= tol;
}

/// sup over a in A of the distance from a to B.
inline double one_sided_distance(const std::vector<cplx>& A, const std::vector<cplx>& B) {
    if (A.empty() || B.empty()) throw std::invalid_argument("distance of empty point set");
    double worst = 0.0;
    for (auto a : A) worst = std::max(worst, distance_to_points(a, B));
    return worst;
}

/// Hausdorff distance of two finite point sets (brute force).
inline double hausdorff_distance(const std::vector<cplx>& A, const std::vector<cplx>& B) {
    return std::max(one_sided_distance(A, B), one_sided_distance(B, A));
}

struct ConvergenceStep {
    int m = 0;                       // truncation: symbol uses t_1..t_{m-1}
    double dist_prev = std::nan(""); // Hausdorff distance to the previous curve
    double eig_dist = std::nan(""); // one-sided distance of the dimension-m matrix eigenvalues
};

/// Hausdorff convergence of the Schmidt-Spitzer curves of successive
/// truncations of one t-sequence, plus how close the dimension-m Toeplitz
/// matrix eigenvalues sit to each curve.
inline std::vector<ConvergenceStep> convergence_study(const std::vector<cplx>& t_seq,
                                                      const std::vector<int>& m_range, double rho,
                                                      int phi_count) {
    std::vector<ConvergenceStep> out;
    std::vector<cplx> prev_points;
    for (int m : m_range) {
        if (m < 2 || static_cast<std::size_t>(m - 1) > t_seq.size())
            throw std::invalid_argument("convergence_study: m out of range of the t sequence");
        std::vector<cplx> t(t_seq.begin(), t_seq.begin() + (m - 1));
        auto curve = schmidt_spitzer_points(LaurentSymbol(t, rho), phi_count);
        ConvergenceStep step;
        step.m = m;
        if (!prev_points.empty() && !curve.points.empty())
            step.dist_prev = hausdorff_distance(curve.points, prev_points);
        // eigenvalues of the dimension-m family matrix (unscaled; similarity-invariant)
        ComplexMatrix mat(m);
        for (int i = 1; i < m; ++i) mat.at(i, i - 1) = -1.0;
        for (int k = 1; k < m; ++k)
            for (int i = 0; i + k < m; ++i) mat.at(i, i + k) = t[k - 1];
        auto sp = eigenvalues(mat);
        if (!curve.points.empty()) step.eig_dist = one_sided_distance(sp.values, curve.points);
        prev_points = std::move(curve.points);
        out.push_back(step);
    }
    return out;
}

struct EdgeStudyResult {
    std::vector<cplx> base_poly;  // F_n, ascending coefficients
    std::vector<std::pair<CyclotomicScalar, std::vector<cplx>>> roots_per_element;
};

/// Splitting of polynomial roots under the final Toeplitz entry: with
/// t_1..t_{n-1} fixed, F_n = z Q_n - sum_{k=1}^{n-1} (-1)^k t_k Q_{n-k} is a
/// fixed polynomial and Q_{n+1} = F_n - (-1)^n t_n; each population element
/// as t_n shifts the constant term, so each root of F_n spawns #P nearby
/// roots. This is the mechanism behind the fractal edges.
inline EdgeStudyResult edge_perturbation_study(const std::vector<CyclotomicScalar>& t_prefix,
                                               const Population& population) {
    if (t_prefix.empty()) throw std::invalid_argument("edge study needs at least one fixed entry");
    const Ring rg = t_prefix.front().ring;
    if (population.ring() != rg) throw ring_error("edge study: population ring mismatch");
    const std::size_t n = t_prefix.size() + 1;
    // tower[k] = Q_k for k = 0..n, built from t_1..t_{n-1}
    auto tower =
        toeplitz_charpoly_tower(t_prefix, CyclotomicScalar::zero(rg), CyclotomicScalar::one(rg));
    // F_n = z Q_n - sum_{k=1}^{n-1} (-1)^k t_k Q_{n-k}, degree n+1
    std::vector<CyclotomicScalar> F(n + 2, CyclotomicScalar::zero(rg));
    for (std::size_t i = 0; i < tower[n].size(); ++i) F[i + 1] = tower[n][i];
    for (std::size_t k = 1; k <= n - 1; ++k) {
        const auto& q = tower[n - k];
        for (std::size_t i = 0; i < q.size(); ++i) {
            auto term = t_prefix[k - 1] * q[i];
            F[i] = (k % 2 == 1) ? F[i] + term : F[i] - term;
        }
    }

    EdgeStudyResult res;
    res.base_poly.reserve(F.size());
    for (const auto& c : F) res.base_poly.push_back(to_complex(c));
    for (const auto& p : population.elements) {
        // Q_{n+1} = F_n - (-1)^n t_n with t_n = p
        std::vector<CyclotomicScalar> q = F;
        q[0] = (n % 2 == 0) ? q[0] - p : q[0] + p;
        std::vector<cplx> coeffs;
        coeffs.reserve(q.size());
        for (const auto& c : q) coeffs.push_back(to_complex(c));
        res.roots_per_element.emplace_back(p, polyroots(ComplexPoly(std::move(coeffs))));
    }
    return res;
}

}  // namespace bohemian
