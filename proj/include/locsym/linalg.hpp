// linalg.hpp -- dense exact linear algebra over GF(3^k).
//
// Everything here is small (dimension <= 81), so the representation is a
// flat row-major byte array of element indices.  Subspaces are kept in
// reduced row echelon form, which makes equality of subspaces literal
// equality of their basis matrices.

#pragma once

#include <optional>
#include <vector>

#include "locsym/gf.hpp"

namespace locsym {

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, const Gf& F)
        : rows_(rows), cols_(cols), F_(&F), a_(static_cast<std::size_t>(rows) * cols, 0) {
        if (rows < 0 || cols < 0) throw error("Matrix: negative shape");
    }

    static Matrix identity(int n, const Gf& F) {
        Matrix m(n, n, F);
        for (int i = 0; i < n; ++i) m.seti(i, i, 1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Gf& field() const { return *F_; }

    std::uint8_t geti(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    void seti(int r, int c, std::uint8_t v) { a_[static_cast<std::size_t>(r) * cols_ + c] = v; }

    Fel get(int r, int c) const { return F_->el(geti(r, c)); }
    void set(int r, int c, Fel v) {
        if (v.F != F_) throw error("Matrix::set: field mismatch");
        seti(r, c, v.v);
    }

    bool is_zero() const {
        for (auto v : a_)
            if (v) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        if (F_ != o.F_) throw error("Matrix multiply: field mismatch");
        if (cols_ != o.rows_) throw error("Matrix multiply: shape mismatch");
        Matrix r(rows_, o.cols_, *F_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                std::uint8_t x = geti(i, k);
                if (!x) continue;
                for (int j = 0; j < o.cols_; ++j) {
                    std::uint8_t y = o.geti(k, j);
                    if (y) r.seti(i, j, F_->addi(r.geti(i, j), F_->muli(x, y)));
                }
            }
        return r;
    }

    Matrix operator+(const Matrix& o) const {
        if (F_ != o.F_ || rows_ != o.rows_ || cols_ != o.cols_)
            throw error("Matrix add: shape or field mismatch");
        Matrix r(rows_, cols_, *F_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->addi(a_[i], o.a_[i]);
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        if (F_ != o.F_ || rows_ != o.rows_ || cols_ != o.cols_)
            throw error("Matrix sub: shape or field mismatch");
        Matrix r(rows_, cols_, *F_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->subi(a_[i], o.a_[i]);
        return r;
    }

    Matrix scaled(Fel c) const {
        if (c.F != F_) throw error("Matrix::scaled: field mismatch");
        Matrix r(rows_, cols_, *F_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = F_->muli(a_[i], c.v);
        return r;
    }

    Matrix transposed() const {
        Matrix r(cols_, rows_, *F_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.seti(j, i, geti(i, j));
        return r;
    }

    std::vector<std::uint8_t> row(int r) const {
        return std::vector<std::uint8_t>(a_.begin() + static_cast<std::size_t>(r) * cols_,
                                         a_.begin() + static_cast<std::size_t>(r + 1) * cols_);
    }
    void set_row(int r, const std::vector<std::uint8_t>& v) {
        if (static_cast<int>(v.size()) != cols_) throw error("set_row: length mismatch");
        std::copy(v.begin(), v.end(), a_.begin() + static_cast<std::size_t>(r) * cols_);
    }

    static Matrix from_rows(const std::vector<std::vector<std::uint8_t>>& rows, int cols,
                            const Gf& F) {
        Matrix m(static_cast<int>(rows.size()), cols, F);
        for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.F_ == b.F_ && a.a_ == b.a_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    int rows_ = 0, cols_ = 0;
    const Gf* F_ = nullptr;
    std::vector<std::uint8_t> a_;
};

// In-place Gauss-Jordan. Returns rank; afterwards m is in RREF.
inline int rref_inplace(Matrix& m) {
    const Gf& F = m.field();
    int rank = 0;
    for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
        int piv = -1;
        for (int r = rank; r < m.rows(); ++r)
            if (m.geti(r, col)) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank) {
            auto a = m.row(piv), b = m.row(rank);
            m.set_row(piv, b);
            m.set_row(rank, a);
        }
        std::uint8_t d = F.invi(m.geti(rank, col));
        for (int j = 0; j < m.cols(); ++j) m.seti(rank, j, F.muli(m.geti(rank, j), d));
        for (int r = 0; r < m.rows(); ++r) {
            if (r == rank) continue;
            std::uint8_t f = m.geti(r, col);
            if (!f) continue;
            for (int j = 0; j < m.cols(); ++j)
                m.seti(r, j, F.subi(m.geti(r, j), F.muli(f, m.geti(rank, j))));
        }
        ++rank;
    }
    return rank;
}

inline std::pair<Matrix, int> rref(const Matrix& m) {
    Matrix r = m;
    int rank = rref_inplace(r);
    return {r, rank};
}

inline int rank(const Matrix& m) { return rref(m).second; }

// A subspace of F^n, basis rows in canonical RREF with zero rows dropped.
class Subspace {
public:
    Subspace() = default;
    Subspace(int ambient_dim, const Gf& F) : basis_(0, ambient_dim, F) {}

    // span of the rows of m
    static Subspace span(const Matrix& m) {
        auto [r, rk] = rref(m);
        Matrix b(rk, m.cols(), m.field());
        for (int i = 0; i < rk; ++i) b.set_row(i, r.row(i));
        Subspace s;
        s.basis_ = b;
        return s;
    }

    static Subspace full(int n, const Gf& F) { return span(Matrix::identity(n, F)); }

    int ambient_dim() const { return basis_.cols(); }
    int dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const Gf& field() const { return basis_.field(); }

    bool contains(const std::vector<std::uint8_t>& v) const {
        // reduce v against the RREF basis
        const Gf& F = field();
        std::vector<std::uint8_t> w = v;
        for (int r = 0; r < basis_.rows(); ++r) {
            int lead = -1;
            for (int j = 0; j < basis_.cols(); ++j)
                if (basis_.geti(r, j)) {
                    lead = j;
                    break;
                }
            if (lead < 0) continue;
            std::uint8_t f = w[lead];
            if (!f) continue;
            for (int j = 0; j < basis_.cols(); ++j)
                w[j] = F.subi(w[j], F.muli(f, basis_.geti(r, j)));
        }
        for (auto x : w)
            if (x) return false;
        return true;
    }

    bool contains(const Subspace& other) const {
        if (other.ambient_dim() != ambient_dim()) throw error("Subspace: ambient mismatch");
        for (int r = 0; r < other.basis_.rows(); ++r)
            if (!contains(other.basis_.row(r))) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    Matrix basis_;
};

inline Subspace subspace_sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw error("subspace_sum: ambient mismatch");
    Matrix m(u.dim() + v.dim(), u.ambient_dim(), u.field());
    for (int i = 0; i < u.dim(); ++i) m.set_row(i, u.basis().row(i));
    for (int i = 0; i < v.dim(); ++i) m.set_row(u.dim() + i, v.basis().row(i));
    return Subspace::span(m);
}

// Kernel of m (right nullspace), as a subspace of F^cols.
inline Subspace nullspace(const Matrix& m) {
    const Gf& F = m.field();
    auto [r, rk] = rref(m);
    std::vector<int> lead_of_row(rk, -1);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (r.geti(i, j)) {
                lead_of_row[i] = j;
                is_pivot[j] = true;
                break;
            }
    std::vector<std::vector<std::uint8_t>> rows;
    for (int j = 0; j < m.cols(); ++j) {
        if (is_pivot[j]) continue;
        std::vector<std::uint8_t> v(m.cols(), 0);
        v[j] = 1;
        for (int i = 0; i < rk; ++i) v[lead_of_row[i]] = F.negi(r.geti(i, j));
        rows.push_back(std::move(v));
    }
    return Subspace::span(Matrix::from_rows(rows, m.cols(), F));
}

// One solution x of a x = b (b may have several columns), or nullopt.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw error("solve: row count mismatch");
    const Gf& F = a.field();
    Matrix aug(a.rows(), a.cols() + b.cols(), F);
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) aug.seti(i, j, a.geti(i, j));
        for (int j = 0; j < b.cols(); ++j) aug.seti(i, a.cols() + j, b.geti(i, j));
    }
    rref_inplace(aug);
    Matrix x(a.cols(), b.cols(), F);
    for (int i = 0; i < aug.rows(); ++i) {
        int lead = -1;
        for (int j = 0; j < aug.cols(); ++j)
            if (aug.geti(i, j)) {
                lead = j;
                break;
            }
        if (lead < 0) continue;
        if (lead >= a.cols()) return std::nullopt;  // 0 = nonzero
        for (int j = 0; j < b.cols(); ++j) x.seti(lead, j, aug.geti(i, a.cols() + j));
    }
    return x;
}

inline Subspace subspace_intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw error("subspace_intersect: ambient mismatch");
    const Gf& F = u.field();
    int n = u.ambient_dim();
    // rows of [U; V] with kernel relation c_u U + c_v V = 0 give intersection
    Matrix stack(n, u.dim() + v.dim(), F);
    for (int j = 0; j < u.dim(); ++j)
        for (int i = 0; i < n; ++i) stack.seti(i, j, u.basis().geti(j, i));
    for (int j = 0; j < v.dim(); ++j)
        for (int i = 0; i < n; ++i) stack.seti(i, u.dim() + j, F.negi(v.basis().geti(j, i)));
    Subspace ker = nullspace(stack);
    std::vector<std::vector<std::uint8_t>> rows;
    for (int r = 0; r < ker.dim(); ++r) {
        std::vector<std::uint8_t> w(n, 0);
        for (int j = 0; j < u.dim(); ++j) {
            std::uint8_t c = ker.basis().geti(r, j);
            if (!c) continue;
            for (int i = 0; i < n; ++i) w[i] = F.addi(w[i], F.muli(c, u.basis().geti(j, i)));
        }
        rows.push_back(std::move(w));
    }
    return Subspace::span(Matrix::from_rows(rows, n, F));
}

// dim u - dim v, requiring v <= u.
inline int quotient_dim(const Subspace& u, const Subspace& v) {
    if (!u.contains(v)) throw error("quotient_dim: second subspace is not contained in first");
    return u.dim() - v.dim();
}

// Rows of u extending a basis of (v intersect u) to a basis of u.
inline Matrix extend_complement(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim() != v.ambient_dim()) throw error("extend_complement: ambient mismatch");
    const Gf& F = u.field();
    Subspace w = subspace_intersect(u, v);
    std::vector<std::vector<std::uint8_t>> chosen;
    Subspace cur = w;
    for (int r = 0; r < u.dim(); ++r) {
        auto cand = u.basis().row(r);
        if (cur.contains(cand)) continue;
        chosen.push_back(cand);
        Matrix m(cur.dim() + 1, u.ambient_dim(), F);
        for (int i = 0; i < cur.dim(); ++i) m.set_row(i, cur.basis().row(i));
        m.set_row(cur.dim(), cand);
        cur = Subspace::span(m);
    }
    return Matrix::from_rows(chosen, u.ambient_dim(), F);
}

}  // namespace locsym
