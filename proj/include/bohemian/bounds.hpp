#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bohemian/eigen.hpp"
#include "bohemian/family.hpp"

namespace bohemian {

/// Eigenvalue-localization region. Membership is a signed-distance test:
/// negative inside, with a caller-supplied tolerance absorbing eigensolver
/// error (the theorems themselves are exact).
struct RegionBound {
    enum class Kind { Rectangle, DiskUnion, Square, Diamond, Radius };

    Kind kind = Kind::Rectangle;
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;  // Rectangle
    std::vector<cplx> centers;                              // DiskUnion
    std::vector<double> radii;
    double half_width = 0;  // Square
    double l1_radius = 0;   // Diamond
    double radius = 0;      // Radius

    double signed_distance(cplx z) const {
        switch (kind) {
            case Kind::Rectangle:
                return std::max(std::max(re_min - z.real(), z.real() - re_max),
                                std::max(im_min - z.imag(), z.imag() - im_max));
            case Kind::DiskUnion: {
                double d = HUGE_VAL;
                for (std::size_t i = 0; i < centers.size(); ++i)
                    d = std::min(d, std::abs(z - centers[i]) - radii[i]);
                return d;
            }
            case Kind::Square:
                return std::max(std::abs(z.real()) - half_width, std::abs(z.imag()) - half_width);
            case Kind::Diamond:
                return std::abs(z.real()) + std::abs(z.imag()) - l1_radius;
            case Kind::Radius:
                return std::abs(z) - radius;
        }
        return HUGE_VAL;
    }

    bool contains(cplx z, double tol = 1e-9) const { return signed_distance(z) <= tol; }
};

namespace detail {

/// Real eigenvalues of a Hermitian matrix via the general complex solver;
/// imaginary parts are provably zero and must come out below 1e-9.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& H) {
    auto sp = eigenvalues(H);
    double scale = 1.0;
    for (const auto& x : H.e) scale = std::max(scale, std::abs(x));
    std::vector<double> out;
    out.reserve(sp.values.size());
    for (auto v : sp.values) {
        if (std::abs(v.imag()) > 1e-9 * scale * H.n)
            throw std::runtime_error("hermitian part produced complex eigenvalue");
        out.push_back(v.real());
    }
    return out;
}

}  // namespace detail

/// Bendixson-Bromwich-Hirsch rectangle: extreme eigenvalues of the Hermitian
/// part bound Re(lambda), of the skew-Hermitian part bound Im(lambda).
inline RegionBound bbh_rectangle(const ComplexMatrix& A) {
    const int n = A.n;
    ComplexMatrix herm(n), skew(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx a = A.at(i, j), bstar = std::conj(A.at(j, i));
            herm.at(i, j) = 0.5 * (a + bstar);
            skew.at(i, j) = (a - bstar) / cplx(0.0, 2.0);
        }
    auto mu = detail::hermitian_eigenvalues(herm);
    auto nu = detail::hermitian_eigenvalues(skew);
    RegionBound r;
    r.kind = RegionBound::Kind::Rectangle;
    r.re_min = *std::min_element(mu.begin(), mu.end());
    r.re_max = *std::max_element(mu.begin(), mu.end());
    r.im_min = *std::min_element(nu.begin(), nu.end());
    r.im_max = *std::max_element(nu.begin(), nu.end());
    return r;
}

inline RegionBound bbh_rectangle(const MatrixInstance& A) { return bbh_rectangle(to_complex(A.entries)); }

/// Gerschgorin disks: centered on the diagonal with off-diagonal row sums as
/// radii.
inline RegionBound gerschgorin_disks(const ComplexMatrix& A) {
    RegionBound r;
    r.kind = RegionBound::Kind::DiskUnion;
    for (int i = 0; i < A.n; ++i) {
        double rad = 0;
        for (int j = 0; j < A.n; ++j)
            if (j != i) rad += std::abs(A.at(i, j));
        r.centers.push_back(A.at(i, i));
        r.radii.push_back(rad);
    }
    return r;
}

inline RegionBound gerschgorin_disks(const MatrixInstance& A) {
    return gerschgorin_disks(to_complex(A.entries));
}

/// The square |Re|, |Im| <= 2 confining skew-symmetric tridiagonal families
/// with entries -1 +- i (and any entries a+bi with |a|,|b| <= 1). The bound
/// is dimension-independent.
inline RegionBound square_bound() {
    RegionBound r;
    r.kind = RegionBound::Kind::Square;
    r.half_width = 2.0;
    return r;
}

/// The diamond |Re| + |Im| <= sqrt(2) confining skew-symmetric tridiagonal
/// families over fourth roots of unity: multiplying by -1+i lands in the
/// square family, so the square rotates and shrinks back to this diamond.
inline RegionBound diamond_bound() {
    RegionBound r;
    r.kind = RegionBound::Kind::Diamond;
    r.l1_radius = std::sqrt(2.0);
    return r;
}

/// Dimension-independent eigenvalue radius 1 + 2 sqrt(B) for unit upper
/// Hessenberg zero-diagonal matrices with entries bounded by B.
inline RegionBound hessenberg_radius(double B) {
    if (!(B > 0)) throw std::invalid_argument("hessenberg_radius needs B > 0");
    RegionBound r;
    r.kind = RegionBound::Kind::Radius;
    r.radius = 1.0 + 2.0 * std::sqrt(B);
    return r;
}

/// Strip confining symmetric families with population a +- i, a = -1:
/// -m <= Re <= 0, -m <= Im <= m.
inline RegionBound symmetric_strip(int m) {
    RegionBound r;
    r.kind = RegionBound::Kind::Rectangle;
    r.re_min = -static_cast<double>(m);
    r.re_max = 0.0;
    r.im_min = -static_cast<double>(m);
    r.im_max = static_cast<double>(m);
    return r;
}

struct VerifyMode {
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::uint64_t count = 0;

    static VerifyMode Exhaustive() { return {true, 0, 0}; }
    static VerifyMode Sampled(std::uint64_t seed, std::uint64_t count) {
        return {false, seed, count};
    }
};

struct VerifyReport {
    BigInt checked = 0;         // matrices checked
    std::uint64_t violations = 0;
    double worst_margin = -HUGE_VAL;  // max signed distance; <= tol means all inside
    bool exhaustive = true;

    std::string to_text() const {
        std::ostringstream os;
        os << "checked=" << checked.get_str() << " mode=" << (exhaustive ? "exhaustive" : "sampled")
           << " violations=" << violations << " worst_margin=" << worst_margin;
        return os.str();
    }
};

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Checks every eigenvalue of every family member against a region.
inline VerifyReport verify_region(const FamilySpec& spec, const RegionBound& region,
                                  const VerifyMode& mode, double tol = 1e-9,
                                  std::uint64_t budget = (1ull << 24)) {
    VerifyReport rep;
    rep.exhaustive = mode.exhaustive;
    std::vector<cplx> vals;
    std::vector<cplx> buf;
    auto check_matrix = [&](const SquareMatrix<cplx>& mat) {
        buf = mat.e;
        eigenvalues_inplace(buf, mat.n, vals);
        for (auto v : vals) {
            double d = region.signed_distance(v);
            rep.worst_margin = std::max(rep.worst_margin, d);
            if (d > tol) ++rep.violations;
        }
        ++rep.checked;
    };

    auto embed_vals = embedded_slot_values<cplx>(spec, [](const CyclotomicScalar& x) { return to_complex(x); });
    const cplx zero = 0.0, subdiag = to_complex(spec.subdiagonal_value);
    if (mode.exhaustive) {
        BigInt n = family_size(spec);
        if (n > budget) throw budget_error("exhaustive verify exceeds budget");
        enumerate_embedded<cplx>(spec, 0, n.get_ui(), embed_vals, zero, subdiag,
                                 [&](std::uint64_t, const SquareMatrix<cplx>& m) { check_matrix(m); });
    } else {
        auto slots = free_slots(spec);
        std::vector<cplx> values(slots.size());
        SquareMatrix<cplx> mat(spec.m);
        for (std::uint64_t k = 0; k < mode.count; ++k) {
            auto rng = stream_rng(mode.seed, k);
            for (std::size_t s = 0; s < slots.size(); ++s)
                values[s] = embed_vals[s][rng.bounded(embed_vals[s].size())];
            fill_matrix(spec, slots, values, zero, subdiag, mat);
            check_matrix(mat);
        }
    }
    return rep;
}

}  // namespace bohemian
