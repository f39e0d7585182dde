#include <catch2/catch_amalgamated.hpp>

#include "bohemian/charpoly.hpp"
#include "bohemian/eigen.hpp"
#include "bohemian/polyroots.hpp"
#include "bohemian/rayleigh.hpp"
#include "bohemian/rng.hpp"
#include "bohemian/toeplitz.hpp"

using namespace bohemian;

namespace {

ComplexMatrix random_complex_matrix(SplitMix64& rng, int n, double span = 2.0) {
    ComplexMatrix a(n);
    for (auto& x : a.e) x = {span * (2 * rng.uniform01() - 1), span * (2 * rng.uniform01() - 1)};
    return a;
}

double multiset_match(std::vector<cplx> a, std::vector<cplx> b) {
    // greedy nearest matching; adequate for well-separated spectra
    REQUIRE(a.size() == b.size());
    double worst = 0;
    for (auto x : a) {
        std::size_t best = 0;
        double d = HUGE_VAL;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (std::abs(b[j] - x) < d) {
                d = std::abs(b[j] - x);
                best = j;
            }
        worst = std::max(worst, d);
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return worst;
}

}  // namespace

TEST_CASE("eigenvalues of fixed matrices") {
    SECTION("diagonal") {
        ComplexMatrix d(3);
        d.at(0, 0) = 1.0;
        d.at(1, 1) = {0.0, 1.0};
        d.at(2, 2) = -2.0;
        auto sp = eigenvalues(d);
        REQUIRE(multiset_match(sp.values, {cplx(1), cplx(0, 1), cplx(-2)}) < 1e-12);
    }
    SECTION("rotation matrix has eigenvalues +-i") {
        ComplexMatrix r(2);
        r.at(0, 1) = 1.0;
        r.at(1, 0) = -1.0;
        auto sp = eigenvalues(r);
        REQUIRE(multiset_match(sp.values, {cplx(0, 1), cplx(0, -1)}) < 1e-12);
    }
    SECTION("non-finite entries are rejected") {
        ComplexMatrix bad(2);
        bad.at(0, 0) = HUGE_VAL;
        REQUIRE_THROWS_AS(eigenvalues(bad), std::invalid_argument);
    }
}

TEST_CASE("dual path: eigenvalues vs roots of the exact charpoly") {
    FamilySpec spec(FamilyKind::Dense, 6,
                    Population({gauss(-1, 0), gauss(0, 0), gauss(1, 0), gauss(0, 1), gauss(0, -1)}));
    auto dual_gap = [&](std::uint64_t seed) {
        auto inst = sample_uniform(spec, seed, 1).front();
        auto sp = eigenvalues(inst);
        auto p = charpoly_general(inst);
        std::vector<cplx> c;
        for (const auto& x : p.coeffs) c.push_back(to_complex(x));
        auto roots = polyroots(ComplexPoly(std::move(c)));
        return hausdorff_distance(sp.values, roots);
    };
    // a typical member agrees to 1e-8; near-multiple spectra in the sweep
    // can cost a digit on both routes
    REQUIRE(dual_gap(4242) < 1e-8);
    for (std::uint64_t s = 1; s < 40; ++s) REQUIRE(dual_gap(4242 + s) < 1e-7);
}

TEST_CASE("trace and determinant consistency") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + static_cast<int>(rng.bounded(7));
        auto a = random_complex_matrix(rng, n);
        auto sp = eigenvalues(a);
        cplx trace = 0, sum = 0;
        for (int i = 0; i < n; ++i) trace += a.at(i, i);
        for (auto v : sp.values) sum += v;
        double maxent = 0;
        for (auto& x : a.e) maxent = std::max(maxent, std::abs(x));
        REQUIRE(std::abs(sum - trace) <= 1e-8 * n * std::max(1.0, maxent));
    }
}

TEST_CASE("product of eigenvalues equals the exact determinant") {
    FamilySpec spec(FamilyKind::Dense, 5, Population({gauss(-1, 1), gauss(-1, -1), gauss(0, 0)}));
    for (std::uint64_t s = 0; s < 60; ++s) {
        auto inst = sample_uniform(spec, 99 + s, 1).front();
        auto p = charpoly_general(inst);
        // det(A) = (-1)^m c_0
        cplx det = to_complex(p.coeffs[0]);
        if (inst.dim() % 2 == 1) det = -det;
        auto sp = eigenvalues(inst);
        cplx prod = 1;
        for (auto v : sp.values) prod *= v;
        REQUIRE(std::abs(prod - det) <= 1e-7 * std::max(1.0, std::abs(det)));
    }
}

TEST_CASE("conjugate closure for real matrices") {
    FamilySpec spec(FamilyKind::Dense, 7, Population({cyc_int(-1), cyc_int(0), cyc_int(1)}));
    for (std::uint64_t s = 0; s < 40; ++s) {
        auto inst = sample_uniform(spec, 11 + s, 1).front();
        auto sp = eigenvalues(inst);
        std::vector<cplx> conjugated;
        for (auto v : sp.values) conjugated.push_back(std::conj(v));
        REQUIRE(hausdorff_distance(sp.values, conjugated) < 1e-8);
    }
}

TEST_CASE("polyroots basics") {
    SECTION("z^2 + 1") {
        auto roots = polyroots(ComplexPoly(std::vector<cplx>{{1, 0}, {0, 0}, {1, 0}}));
        REQUIRE(multiset_match(roots, {cplx(0, 1), cplx(0, -1)}) < 1e-12);
    }
    SECTION("z^2 + i") {
        auto roots = polyroots(ComplexPoly(std::vector<cplx>{{0, 1}, {0, 0}, {1, 0}}));
        for (auto r : roots) REQUIRE(std::abs(r * r + cplx(0, 1)) < 1e-12);
    }
    SECTION("roots at the origin deflate exactly") {
        auto roots = polyroots(ComplexPoly(std::vector<cplx>{{0, 0}, {0, 0}, {1, 0}, {1, 0}}));  // z^2(z+1)
        int zeros = 0;
        for (auto r : roots) zeros += (r == cplx(0.0));
        REQUIRE(zeros == 2);
    }
    SECTION("degree below one is rejected") {
        REQUIRE_THROWS_AS(polyroots(ComplexPoly(std::vector<cplx>{{1, 0}})), std::invalid_argument);
    }
    SECTION("multiple roots converge to the cluster") {
        // (z+1)^4, then cluster at relative 1e-7 scale recovers multiplicity
        auto roots = polyroots(ComplexPoly(std::vector<cplx>{{1, 0}, {4, 0}, {6, 0}, {4, 0}, {1, 0}}));
        auto clusters = cluster_roots(roots, 1e-3);
        REQUIRE(clusters.size() == 1);
        REQUIRE(clusters[0].second == 4);
        // a 4-fold root is recoverable only to ~eps^(1/4); the centroid
        // averages most of that away
        REQUIRE(std::abs(clusters[0].first + 1.0) < 1e-3);
    }
}

TEST_CASE("quadratic of the all-ones infinite symbol at theta = pi") {
    // a(z) - a(wz) = 0 for a(z) = -1/z + z/(1-z) reduces to
    // 2wz^2 - (1+w)z + 1 = 0 with roots ((1+w) +- sqrt(w^2-6w+1))/(4w);
    // at theta = pi the roots are -+ sqrt(2)/2.
    const cplx w = -1.0;
    auto roots = polyroots(ComplexPoly(std::vector<cplx>{{1, 0}, -(1.0 + w), 2.0 * w}));
    REQUIRE(multiset_match(roots, {cplx(std::sqrt(0.5)), cplx(-std::sqrt(0.5))}) < 1e-12);
    // cross-check against the closed form
    cplx disc = std::sqrt(w * w - 6.0 * w + 1.0);
    std::vector<cplx> closed{(1.0 + w + disc) / (4.0 * w), (1.0 + w - disc) / (4.0 * w)};
    REQUIRE(multiset_match(roots, closed) < 1e-12);
}

TEST_CASE("inverse corner by direct solve") {
    SECTION("identity") {
        ComplexMatrix eye(3);
        for (int i = 0; i < 3; ++i) eye.at(i, i) = 1.0;
        auto c = inverse_corner(eye);
        REQUIRE(c);
        REQUIRE(std::abs(*c - 1.0) < 1e-14);
    }
    SECTION("2x2 companion-like matrix has zero corner") {
        ComplexMatrix a(2);
        a.at(0, 1) = {3.0, 1.0};
        a.at(1, 0) = -1.0;
        auto c = inverse_corner(a);
        REQUIRE(c);
        REQUIRE(std::abs(*c) < 1e-14);
    }
    SECTION("singular matrix signals") {
        ComplexMatrix ones(2);
        for (auto& x : ones.e) x = 1.0;
        REQUIRE_FALSE(inverse_corner(ones));
    }
}

TEST_CASE("inverse corner via the Toeplitz ratio") {
    SECTION("m=2 orientation case: corner is exactly zero") {
        auto r = inverse_corner_toeplitz({gauss(2, 1)});
        REQUIRE(r);
        REQUIRE(std::abs(*r) < 1e-15);
    }
    SECTION("random m=3 over fourth roots agrees with the direct solve") {
        FamilySpec spec(FamilyKind::UHToeplitzZeroDiag, 3,
                        Population({gauss(1, 0), gauss(0, 1), gauss(-1, 0), gauss(0, -1)}));
        BigInt n = family_size(spec);
        for (BigInt idx = 0; idx < n; ++idx) {
            auto inst = matrix_from_index(spec, idx);
            std::vector<CyclotomicScalar> t{inst.at(0, 1), inst.at(0, 2)};
            auto ratio = inverse_corner_toeplitz(t);
            auto direct = inverse_corner(inst);
            REQUIRE(ratio.has_value() == direct.has_value());
            if (ratio) REQUIRE(std::abs(*ratio - *direct) < 1e-12);
        }
    }
    SECTION("all-zero t is singular") {
        REQUIRE_FALSE(inverse_corner_toeplitz({gauss(0, 0), gauss(0, 0)}));
    }
}
