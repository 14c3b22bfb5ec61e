// torus.hpp -- the diagonal scaling torus of a family presentation.
//
// Rescaling each presentation generator by a unit extends to an algebra
// automorphism exactly when every relation is preserved; within one relation
// each pair of words carrying nonzero coefficients must have equal scaling
// character.  The exponent-vector differences of such pairs generate an
// integer lattice; the torus dimension is #generators - rank_Q(lattice).
// Rank is taken over the rationals by fraction-free elimination: connected
// dimension of a diagonalizable group is a characteristic-zero computation,
// so reducing the lattice mod 3 would be wrong (a row like (0,3) counts).

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "locsym/families.hpp"

namespace locsym {

struct ExponentLattice {
    int generators = 0;
    std::vector<std::vector<long long>> rows;
};

inline std::vector<long long> word_exponent(const Word& w, int generators) {
    std::vector<long long> e(generators, 0);
    for (int g : w) e[g] += 1;
    return e;
}

inline ExponentLattice exponent_lattice(const FamilySpec& f) {
    std::vector<Relation> rels = family_relations(f);
    int g = f.tag == FamilyTag::F3 ? 3 : 2;
    ExponentLattice lat;
    lat.generators = g;
    for (const Relation& rel : rels) {
        // terms already carry only nonzero coefficients at the current
        // parameter values; emit differences against the first word
        for (std::size_t i = 1; i < rel.terms.size(); ++i) {
            std::vector<long long> d = word_exponent(rel.terms[0].first, g);
            std::vector<long long> e = word_exponent(rel.terms[i].first, g);
            for (int k = 0; k < g; ++k) d[k] -= e[k];
            lat.rows.push_back(std::move(d));
        }
    }
    return lat;
}

// rank over Q by fraction-free (Bareiss-flavoured) elimination on long longs
inline int integer_rank(std::vector<std::vector<long long>> m) {
    int rank = 0;
    if (m.empty()) return 0;
    int cols = static_cast<int>(m[0].size());
    int rows = static_cast<int>(m.size());
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = rank + 1; r < rows; ++r) {
            if (m[r][c] == 0) continue;
            long long a = m[rank][c], b = m[r][c];
            long long g = std::gcd(a, b);
            long long fa = b / g, fb = a / g;
            for (int j = 0; j < cols; ++j) m[r][j] = m[r][j] * fb - m[rank][j] * fa;
        }
        ++rank;
    }
    return rank;
}

inline int diagonal_torus_rank(const FamilySpec& f) {
    ExponentLattice lat = exponent_lattice(f);
    return lat.generators - integer_rank(lat.rows);
}

// Diagonal stabilizer lattice read off a monomial table directly: every
// nonzero structure constant in m_i m_j = sum_k c_k m_k forces the character
// equality exp(i) + exp(j) = exp(k).  Useful for tables on a monomial basis
// that have no named family presentation (the partially normalized bad
// branch).
inline ExponentLattice exponent_lattice_of_table(const AlgebraTable& t,
                                                 const std::vector<std::vector<long long>>& exps,
                                                 int generators) {
    if (static_cast<int>(exps.size()) != t.dim())
        throw error("exponent_lattice_of_table: one exponent vector per basis element");
    ExponentLattice lat;
    lat.generators = generators;
    for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j) {
            const std::uint8_t* e = t.entry(i, j);
            for (int k = 0; k < t.dim(); ++k) {
                if (!e[k]) continue;
                std::vector<long long> row(generators, 0);
                bool nonzero = false;
                for (int g = 0; g < generators; ++g) {
                    row[g] = exps[i][g] + exps[j][g] - exps[k][g];
                    if (row[g]) nonzero = true;
                }
                if (nonzero) lat.rows.push_back(std::move(row));
            }
        }
    return lat;
}

// Integer basis of the cocharacter lattice: kernel vectors of the row
// lattice, scaled to integers.  Instantiating a kernel vector v at a unit u
// rescales generator g by u^{v_g}, which must be an automorphism.
inline std::vector<std::vector<long long>> cocharacter_basis(const ExponentLattice& lat) {
    int g = lat.generators;
    // solve over Q: bring rows to row echelon form, read free variables
    std::vector<std::vector<long long>> m = lat.rows;
    int rows = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < g && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            long long a = m[rank][c], b = m[r][c];
            long long gg = std::gcd(a, b);
            long long fa = b / gg, fb = a / gg;
            for (int j = 0; j < g; ++j) m[r][j] = m[r][j] * fb - m[rank][j] * fa;
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(g, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<long long>> basis;
    for (int c = 0; c < g; ++c) {
        if (is_pivot[c]) continue;
        // kernel vector with 1 at the free column c: solve pivot entries over
        // Q, then clear denominators
        std::vector<long long> num(g, 0), den(g, 1);
        num[c] = 1;
        for (int r = rank - 1; r >= 0; --r) {
            int pc = pivot_col[r];
            // m[r][pc] * x_pc + m[r][c] * 1 = 0  (after full reduction rows
            // only have pivot + free columns)
            long long s_num = 0, s_den = 1;
            for (int j = 0; j < g; ++j) {
                if (j == pc || m[r][j] == 0) continue;
                // accumulate m[r][j] * x_j
                long long add_num = m[r][j] * num[j];
                long long add_den = den[j];
                s_num = s_num * add_den + add_num * s_den;
                s_den *= add_den;
                long long gg = std::gcd(s_num < 0 ? -s_num : s_num, s_den);
                if (gg > 1) {
                    s_num /= gg;
                    s_den /= gg;
                }
            }
            num[pc] = -s_num;
            den[pc] = s_den * m[r][pc];
            if (den[pc] < 0) {
                den[pc] = -den[pc];
                num[pc] = -num[pc];
            }
            long long gg = std::gcd(num[pc] < 0 ? -num[pc] : num[pc], den[pc]);
            if (gg > 1) {
                num[pc] /= gg;
                den[pc] /= gg;
            }
        }
        long long lcm = 1;
        for (int j = 0; j < g; ++j) lcm = lcm / std::gcd(lcm, den[j]) * den[j];
        std::vector<long long> v(g, 0);
        for (int j = 0; j < g; ++j) v[j] = num[j] * (lcm / den[j]);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Diagonal rescaling of the presentation generators extended to the whole
// monomial basis of the built table, as a 9x9 matrix in table coordinates.
inline Matrix diagonal_scaling_matrix(const FamilySpec& f, const AlgebraTable& table,
                                      const std::vector<Fel>& unit_scalars) {
    const Gf& F = *f.field;
    int g = f.tag == FamilyTag::F3 ? 3 : 2;
    if (static_cast<int>(unit_scalars.size()) != g)
        throw error("diagonal_scaling_matrix: need one unit per generator");
    // basis words of the presentation in table order
    std::vector<Word> words;
    switch (f.tag) {
        case FamilyTag::B:
        case FamilyTag::F2:
            words = detail::two_gen_basis();
            break;
        case FamilyTag::F3:
            words = {Word{}, {0}, {1}, {2}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1}, {0, 1, 0, 1}};
            break;
        default:
            throw error("diagonal_scaling_matrix: family has no presentation");
    }
    Matrix m(table.dim(), table.dim(), F);
    for (int j = 0; j < table.dim(); ++j) {
        Fel c = F.one();
        for (int gi : words[j]) c = c * unit_scalars[gi];
        m.set(j, j, c);
    }
    return m;
}

// instantiation of a cocharacter at a unit: generator g scales by u^{v_g}
inline std::vector<Fel> instantiate_cocharacter(const Gf& F, const std::vector<long long>& v,
                                                Fel u) {
    if (u.is_zero()) throw error("instantiate_cocharacter: unit must be nonzero");
    std::vector<Fel> out;
    for (long long e : v) {
        Fel c = F.one();
        Fel base = e >= 0 ? u : F.inv(u);
        long long n = e >= 0 ? e : -e;
        for (long long i = 0; i < n; ++i) c = c * base;
        out.push_back(c);
    }
    return out;
}

}  // namespace locsym
