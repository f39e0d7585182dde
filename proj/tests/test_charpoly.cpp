#include <catch2/catch_amalgamated.hpp>

#include "bohemian/charpoly.hpp"
#include "bohemian/family.hpp"
#include "oracles.hpp"

using namespace bohemian;

TEST_CASE("toeplitz recurrence small cases") {
    SECTION("m=1: Q1 = z") {
        auto p = charpoly_toeplitz_recurrence({});
        REQUIRE(p.degree() == 1);
        REQUIRE(p.coeffs[0].is_zero());
        REQUIRE(p.coeffs[1] == cyc_int(1));
    }
    SECTION("m=2: Q2 = z^2 + t1") {
        auto p = charpoly_toeplitz_recurrence({gauss(0, 1)});
        REQUIRE(p.degree() == 2);
        REQUIRE(p.coeffs[0] == gauss(0, 1));
        REQUIRE(p.coeffs[1].is_zero());
        REQUIRE(p.coeffs[2] == gauss(1, 0));
    }
}

TEST_CASE("recurrence equals division-free charpoly, exhaustive m<=6 over +-1") {
    for (int m = 1; m <= 6; ++m) {
        FamilySpec spec(FamilyKind::UHToeplitzZeroDiag, m, Population({cyc_int(1), cyc_int(-1)}));
        BigInt n = family_size(spec);
        for (BigInt idx = 0; idx < n; ++idx) {
            auto inst = matrix_from_index(spec, idx);
            std::vector<CyclotomicScalar> t;
            for (int j = 1; j < m; ++j) t.push_back(inst.at(0, j));
            auto rec = charpoly_toeplitz_recurrence(t);
            auto gen = charpoly_general(inst);
            REQUIRE(rec == gen);
        }
    }
}

TEST_CASE("berkowitz matches cofactor expansion on random 5x5 Gaussian matrices") {
    FamilySpec spec(FamilyKind::Dense, 5,
                    Population({gauss(-1, 0), gauss(0, 0), gauss(1, 0), gauss(0, 1), gauss(2, -1)}));
    for (std::uint64_t s = 0; s < 25; ++s) {
        auto inst = sample_uniform(spec, 555 + s, 1).front();
        auto fast = charpoly_general(inst);
        auto slow = oracles::charpoly_cofactor(inst);
        REQUIRE(fast.coeffs == slow);
    }
}

TEST_CASE("charpoly trivial cases") {
    SECTION("zero matrix gives z^3") {
        MatrixInstance z;
        z.entries = SquareMatrix<CyclotomicScalar>(3, CyclotomicScalar::zero(Ring::Int));
        auto p = charpoly_general(z);
        REQUIRE(p.degree() == 3);
        for (int k = 0; k < 3; ++k) REQUIRE(p.coeffs[static_cast<std::size_t>(k)].is_zero());
        REQUIRE(p.is_monic());
    }
    SECTION("companion matrix of z^2 + 1") {
        MatrixInstance c;
        c.entries = SquareMatrix<CyclotomicScalar>(2, CyclotomicScalar::zero(Ring::Int));
        c.entries.at(0, 1) = cyc_int(-1);
        c.entries.at(1, 0) = cyc_int(1);
        auto p = charpoly_general(c);
        REQUIRE(p.coeffs[0] == cyc_int(1));
        REQUIRE(p.coeffs[1].is_zero());
        REQUIRE(p.coeffs[2] == cyc_int(1));
    }
}

TEST_CASE("real-entry matrices have real characteristic coefficients") {
    FamilySpec spec(FamilyKind::Dense, 4, Population({cyc_int(-1), cyc_int(0), cyc_int(1)}));
    for (std::uint64_t s = 0; s < 50; ++s) {
        auto inst = sample_uniform(spec, 31 + s, 1).front();
        auto p = charpoly_general(inst);
        for (const auto& c : p.coeffs) REQUIRE(c.b == 0);
    }
}

TEST_CASE("characteristic height") {
    CharPoly p;
    p.ring = Ring::Gauss;
    p.coeffs = {gauss(1, 0), gauss(0, 0), gauss(1, 0)};  // z^2 + 1
    REQUIRE(characteristic_height(p) == 1.0);
    p.coeffs[0] = gauss(-1, 1);  // z^2 + (-1+i)
    REQUIRE(characteristic_height(p) == Catch::Approx(std::sqrt(2.0)));
}

TEST_CASE("max characteristic height of the m=8 +-1 Toeplitz family") {
    // Exhaustive 2^7 sweep, checked against the cofactor oracle and frozen.
    FamilySpec spec(FamilyKind::UHToeplitzZeroDiag, 8, Population({cyc_int(1), cyc_int(-1)}));
    BigInt n = family_size(spec);
    double best = 0, best_oracle = 0;
    for (BigInt idx = 0; idx < n; ++idx) {
        auto inst = matrix_from_index(spec, idx);
        std::vector<CyclotomicScalar> t;
        for (int j = 1; j < 8; ++j) t.push_back(inst.at(0, j));
        best = std::max(best, characteristic_height(charpoly_toeplitz_recurrence(t)));
        CharPoly oracle;
        oracle.ring = spec.ring();
        oracle.coeffs = oracles::charpoly_cofactor(inst);
        best_oracle = std::max(best_oracle, characteristic_height(oracle));
    }
    REQUIRE(best == best_oracle);
    REQUIRE(best == 31.0);  // frozen regression value from the sweep above
}

TEST_CASE("canonical ordering is a strict weak order on coefficients") {
    CharPoly a, b;
    a.ring = b.ring = Ring::Gauss;
    a.coeffs = {gauss(0, 0), gauss(1, 0)};
    b.coeffs = {gauss(0, 1), gauss(1, 0)};
    REQUIRE(charpoly_less(a, b));
    REQUIRE_FALSE(charpoly_less(b, a));
    REQUIRE_FALSE(charpoly_less(a, a));
}
