#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "bohemian/scalar.hpp"

namespace bohemian {

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex polynomial, ascending coefficients, nonzero leading term.
struct ComplexPoly {
    std::vector<cplx> coeffs;

    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<cplx> c) : coeffs(std::move(c)) {
        while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
        if (coeffs.empty()) throw std::invalid_argument("empty polynomial");
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    cplx eval(cplx z) const {
        cplx acc = coeffs.back();
        for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
        return acc;
    }

    /// Value and derivative in one Horner pass.
    std::pair<cplx, cplx> eval_with_derivative(cplx z) const {
        cplx p = coeffs.back(), dp = 0.0;
        for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
            dp = dp * z + p;
            p = p * z + coeffs[i];
        }
        return {p, dp};
    }

    /// Forward evaluation-error scale at z: eps * sum |c_k| |z|^k. A residual
    /// at or below this is indistinguishable from zero in doubles.
    double eval_noise(cplx z) const {
        double az = std::abs(z), s = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) s = s * az + std::abs(coeffs[i]);
        return s * 2.220446049250313e-16;
    }
};

/// All complex roots by Aberth-Ehrlich simultaneous iteration. Roots at the
/// origin are deflated exactly first. Throws convergence_error if the
/// corrections do not settle within the iteration cap.
inline std::vector<cplx> polyroots(const ComplexPoly& poly) {
    int n = poly.degree();
    if (n < 1) throw std::invalid_argument("polyroots needs degree >= 1");

    std::vector<cplx> c = poly.coeffs;
    std::vector<cplx> roots;
    while (c.size() > 1 && std::abs(c.front()) == 0.0) {  // exact zero constant term
        roots.push_back(0.0);
        c.erase(c.begin());
    }
    n = static_cast<int>(c.size()) - 1;
    if (n == 0) return roots;
    if (n == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }

    const cplx lead = c.back();
    double cauchy = 0.0;
    for (int k = 0; k < n; ++k) cauchy = std::max(cauchy, std::abs(c[k] / lead));
    const double outer = 1.0 + cauchy;
    double inner = std::pow(std::abs(c.front() / lead), 1.0 / n);
    if (!(inner > 1e-9)) inner = outer * 0.5;
    const double r0 = std::min(outer, inner);

    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * k / n + 0.4;
        z[k] = r0 * cplx(std::cos(th), std::sin(th));
    }

    ComplexPoly q{std::vector<cplx>(c)};
    const int max_iter = 400;
    std::vector<char> done(n, 0);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool all_done = true;
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            auto [p, dp] = q.eval_with_derivative(z[i]);
            if (std::abs(p) <= 4.0 * q.eval_noise(z[i])) {  // residual at the noise floor
                done[i] = 1;
                continue;
            }
            cplx w = (dp != cplx(0.0)) ? p / dp : cplx(0.0);
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            cplx denom = 1.0 - w * sum;
            cplx corr;
            if (dp == cplx(0.0) || std::abs(denom) < 1e-300) {
                // perturb off a critical point
                corr = std::pow(cplx(0.7, 0.2), iter % 7 + 1) * (std::abs(z[i]) + 1.0) * 0.05;
            } else {
                corr = w / denom;
            }
            z[i] -= corr;
            if (std::abs(corr) <= 1e-14 * (1.0 + std::abs(z[i])))
                done[i] = 1;
            else
                all_done = false;
        }
        if (all_done) {
            roots.insert(roots.end(), z.begin(), z.end());
            return roots;
        }
    }
    throw convergence_error("polyroots: Aberth iteration did not converge");
}

/// Backward-style accuracy proxy for a computed simple root.
inline double root_error_bound(const ComplexPoly& p, cplx root) {
    auto [v, dv] = p.eval_with_derivative(root);
    double d = std::abs(dv);
    if (d == 0.0) return std::abs(v) > 0 ? HUGE_VAL : 0.0;
    return p.degree() * std::abs(v) / d;
}

/// Groups roots whose pairwise distance is below rel_tol * scale; returns
/// cluster representatives (centroids) with multiplicities.
inline std::vector<std::pair<cplx, int>> cluster_roots(const std::vector<cplx>& roots,
                                                       double rel_tol = 1e-7) {
    double scale = 1.0;
    for (auto r : roots) scale = std::max(scale, std::abs(r));
    std::vector<std::pair<cplx, int>> clusters;
    std::vector<char> used(roots.size(), 0);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        cplx sum = roots[i];
        int cnt = 1;
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (!used[j] && std::abs(roots[j] - roots[i]) <= rel_tol * scale) {
                used[j] = 1;
                sum += roots[j];
                ++cnt;
            }
        }
        clusters.emplace_back(sum / static_cast<double>(cnt), cnt);
    }
    return clusters;
}

}  // namespace bohemian
