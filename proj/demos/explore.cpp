// explore.cpp -- a short tour of the library API: build the quantum complete
// intersection B, inspect its invariants, scramble it by a random basis
// change, and watch the classifier recover the canonical table.

#include <cstdio>
#include <random>

#include "locsym/autos.hpp"
#include "locsym/normalize.hpp"
#include "locsym/torus.hpp"

using namespace locsym;

int main() {
    const Gf& F = gf9();

    AlgebraTable b = build_B(F);
    StructuralReport rep = analyze(b);
    std::printf("B = k<X,Y>/(X^3, Y^3, XY+YX) over GF(9)\n");
    std::printf("  loewy:");
    for (int d : rep.loewy) std::printf(" %d", d);
    std::printf("\n  dim Z = %d, dim Soc = %d, dim [B,B] = %d\n", rep.center.dim(),
                rep.socle.dim(), rep.commutators.dim());

    // scramble by a random unit-fixing basis change
    std::mt19937 rng(42);
    Matrix g(9, 9, F);
    do {
        for (int i = 0; i < 9; ++i) g.seti(i, 0, i == 0 ? 1 : 0);
        for (int j = 1; j < 9; ++j)
            for (int i = 0; i < 9; ++i) g.seti(i, j, static_cast<std::uint8_t>(rng() % 9));
    } while (rank(g) < 9);
    AlgebraTable scrambled = transport(b, g, b.labels());

    ClassificationResult r = classify(scrambled);
    std::printf("scrambled copy classifies to branch %s with parameters",
                branch_name(r.branch).c_str());
    for (const Fel& p : r.params) std::printf(" %s", F.render(p).c_str());
    std::printf("\n  audit steps: %zu, transported table equals the canonical one: %s\n",
                r.audit.size(), (r.canonical && r.transported == *r.canonical) ? "yes" : "no");

    // the two invariants that tell B and F3(0,0) apart
    FamilySpec fb{FamilyTag::B, {}, &F};
    FamilySpec f3{FamilyTag::F3, {F.zero(), F.zero()}, &F};
    UnipotentFamily h2(UnipTag::H2_U, gf3());
    UnipotentFamily h3(UnipTag::H3_U, gf3());
    std::printf("invariant pair (torus rank, unipotent-center dim):\n");
    std::printf("  B       -> (%d, %d)\n", diagonal_torus_rank(fb),
                center_mod_inn_dimension(h2).dimension);
    std::printf("  F3(0,0) -> (%d, %d)\n", diagonal_torus_rank(f3),
                center_mod_inn_dimension(h3).dimension);
    return 0;
}
