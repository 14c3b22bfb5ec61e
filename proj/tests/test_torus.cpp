#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "locsym/autos.hpp"
#include "locsym/torus.hpp"

using namespace locsym;

TEST(Torus, LatticeOfB) {
    FamilySpec f{FamilyTag::B, {}, &gf3()};
    ExponentLattice lat = exponent_lattice(f);
    // XY + YX pairs words of equal exponent; X^3, Y^3 are single-word: no
    // nontrivial rows
    EXPECT_EQ(integer_rank(lat.rows), 0);
    EXPECT_EQ(diagonal_torus_rank(f), 2);
}

TEST(Torus, LatticeOfF3) {
    const Gf& F = gf9();
    // at (0,0) the squares relations degenerate to single words; only
    // z^2 = xyxy constrains, so the rank is 1 and the torus is 2-dimensional
    FamilySpec f00{FamilyTag::F3, {F.zero(), F.zero()}, &F};
    ExponentLattice lat = exponent_lattice(f00);
    int nonzero_rows = 0;
    for (const auto& r : lat.rows)
        if (std::any_of(r.begin(), r.end(), [](long long v) { return v != 0; })) ++nonzero_rows;
    EXPECT_EQ(nonzero_rows, 1);
    EXPECT_EQ(integer_rank(lat.rows), 1);
    EXPECT_EQ(diagonal_torus_rank(f00), 2);

    // at (0, beta != 0) the rows include exponent(x^2) - exponent(yxy) = (1,-2,0)
    FamilySpec f0b{FamilyTag::F3, {F.zero(), F.gen()}, &F};
    ExponentLattice lat2 = exponent_lattice(f0b);
    bool has_row = false;
    for (const auto& r : lat2.rows)
        if (r == std::vector<long long>{1, -2, 0}) has_row = true;
    EXPECT_TRUE(has_row);
    EXPECT_LE(diagonal_torus_rank(f0b), 1);
}

TEST(Torus, F3RankTwoExactlyAtOrigin) {
    const Gf& F = gf9();
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            FamilySpec f{FamilyTag::F3, {F.el(i), F.el(j)}, &F};
            int r = diagonal_torus_rank(f);
            if (i == 0 && j == 0)
                EXPECT_EQ(r, 2);
            else
                EXPECT_LE(r, 1) << "F3(" << i << "," << j << ")";
        }
}

TEST(Torus, F2RankTwoOnlyAtZero) {
    const Gf& F = gf9();
    std::mt19937 rng(55);
    FamilySpec zero{FamilyTag::F2, {F.zero(), F.zero(), F.zero(), F.zero()}, &F};
    EXPECT_EQ(diagonal_torus_rank(zero), 2);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Fel> p = {F.el(static_cast<int>(rng() % 2)), F.el(static_cast<int>(rng() % 9)),
                              F.el(static_cast<int>(rng() % 2)), F.el(static_cast<int>(rng() % 9))};
        bool allzero = true;
        for (const Fel& v : p)
            if (!v.is_zero()) allzero = false;
        FamilySpec f{FamilyTag::F2, p, &F};
        int r = diagonal_torus_rank(f);
        if (allzero)
            EXPECT_EQ(r, 2);
        else
            EXPECT_LE(r, 1);
    }
}

TEST(Torus, RankInvariantUnderRowScalingAndPermutation) {
    std::mt19937 rng(56);
    const Gf& F = gf9();
    FamilySpec f{FamilyTag::F3, {F.gen(), F.el(4)}, &F};
    ExponentLattice lat = exponent_lattice(f);
    int r0 = integer_rank(lat.rows);
    for (int trial = 0; trial < 20; ++trial) {
        auto rows = lat.rows;
        std::shuffle(rows.begin(), rows.end(), rng);
        for (auto& row : rows) {
            long long c = 1 + static_cast<long long>(rng() % 5);
            for (auto& v : row) v *= c;
        }
        EXPECT_EQ(integer_rank(rows), r0);
    }
}

TEST(Torus, ModThreeReductionWouldBeWrong) {
    // a row like (0,3) must count toward the rank
    EXPECT_EQ(integer_rank({{0, 3}}), 1);
    EXPECT_EQ(integer_rank({{3, 0}, {0, 3}}), 2);
}

TEST(Torus, CocharacterInstantiationsAreAutomorphisms) {
    const Gf& F = gf9();
    std::mt19937 rng(57);
    std::vector<FamilySpec> fams = {
        {FamilyTag::B, {}, &F},
        {FamilyTag::F3, {F.zero(), F.zero()}, &F},
        {FamilyTag::F3, {F.gen(), F.el(2)}, &F},
        {FamilyTag::F2, {F.one(), F.gen(), F.zero(), F.el(5)}, &F},
    };
    for (const FamilySpec& f : fams) {
        AlgebraTable table = build_family(f);
        ExponentLattice lat = exponent_lattice(f);
        auto basis = cocharacter_basis(lat);
        EXPECT_EQ(static_cast<int>(basis.size()), diagonal_torus_rank(f));
        for (const auto& v : basis)
            for (int trial = 0; trial < 5; ++trial) {
                Fel u = F.el(1 + static_cast<int>(rng() % (F.order() - 1)));
                Matrix d = diagonal_scaling_matrix(f, table, instantiate_cocharacter(F, v, u));
                TruncEndo phi{&table, d};
                EXPECT_TRUE(is_automorphism(table, phi));
            }
    }
}
