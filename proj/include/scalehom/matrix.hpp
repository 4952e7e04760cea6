// Dense exact-rational matrices and the elimination routines the homology,
// pairing and spectral modules are built on.  Pivoting prefers entries with
// small denominator (then small numerator, then lowest row) so every result
// is deterministic.
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "scalehom/errors.hpp"
#include "scalehom/rational.hpp"

namespace scalehom {

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Rational(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    std::vector<Rational> col(int j) const {
        std::vector<Rational> v(rows_);
        for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    void set_col(int j, const std::vector<Rational>& v) {
        for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (sgn(x) != 0) return false;
        return true;
    }

    Matrix operator*(const Matrix& o) const {
        Matrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rational& aik = at(i, k);
                if (sgn(aik) == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    std::vector<Rational> operator*(const std::vector<Rational>& v) const {
        std::vector<Rational> r(rows_, Rational(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (sgn(at(i, j)) != 0) r[i] += at(i, j) * v[j];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        Matrix r(rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

namespace detail {

// Smallest denominator, then smallest |numerator|, then lowest row.
inline bool better_pivot(const Rational& cand, const Rational& cur) {
    int c = cmp(cand.get_den(), cur.get_den());
    if (c != 0) return c < 0;
    return cmp(abs(cand.get_num()), abs(cur.get_num())) < 0;
}

} // namespace detail

// In-place reduced row echelon form.  Returns the pivot column of each pivot
// row.  When `tracked` is non-null the same row operations are applied to it.
inline std::vector<int> rref(Matrix& m, Matrix* tracked = nullptr) {
    std::vector<int> pivots;
    int row = 0;
    for (int colj = 0; colj < m.cols() && row < m.rows(); ++colj) {
        int pr = -1;
        for (int i = row; i < m.rows(); ++i) {
            if (sgn(m.at(i, colj)) == 0) continue;
            if (pr < 0 || detail::better_pivot(m.at(i, colj), m.at(pr, colj))) pr = i;
        }
        if (pr < 0) continue;
        if (pr != row) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(pr, j));
            if (tracked)
                for (int j = 0; j < tracked->cols(); ++j)
                    std::swap(tracked->at(row, j), tracked->at(pr, j));
        }
        Rational inv = 1 / m.at(row, colj);
        for (int j = colj; j < m.cols(); ++j) m.at(row, j) *= inv;
        if (tracked)
            for (int j = 0; j < tracked->cols(); ++j) tracked->at(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m.at(i, colj)) == 0) continue;
            Rational f = m.at(i, colj);
            for (int j = colj; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
            if (tracked)
                for (int j = 0; j < tracked->cols(); ++j)
                    tracked->at(i, j) -= f * tracked->at(row, j);
        }
        pivots.push_back(colj);
        ++row;
    }
    return pivots;
}

inline int rank(Matrix m) { return int(rref(m).size()); }

// Columns form a basis of ker(m).  Basis vectors are the standard
// free-variable completions read off the reduced row echelon form.
inline Matrix kernel_basis(const Matrix& m) {
    Matrix r = m;
    std::vector<int> pivots = rref(r);
    std::vector<int> pivot_of_col(m.cols(), -1);
    for (size_t i = 0; i < pivots.size(); ++i) pivot_of_col[pivots[i]] = int(i);
    int k = m.cols() - int(pivots.size());
    Matrix ker(m.cols(), k);
    int out = 0;
    for (int j = 0; j < m.cols(); ++j) {
        if (pivot_of_col[j] >= 0) continue;
        ker.at(j, out) = 1;
        for (size_t i = 0; i < pivots.size(); ++i) ker.at(pivots[i], out) = -r.at(int(i), j);
        ++out;
    }
    return ker;
}

// One exact solution of m*x = b, or nullopt when inconsistent.
inline std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& b) {
    Matrix aug(m.rows(), m.cols() + 1);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    std::vector<Rational> x(m.cols(), Rational(0));
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(int(i), m.cols());
    return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    Matrix r = m;
    Matrix inv = Matrix::identity(m.rows());
    std::vector<int> pivots = rref(r, &inv);
    if (int(pivots.size()) != m.rows()) return std::nullopt;
    return inv;
}

inline Rational determinant(Matrix m) {
    if (m.rows() != m.cols()) throw precondition_error("determinant of a non-square matrix");
    Rational det(1);
    int n = m.rows();
    for (int c = 0; c < n; ++c) {
        int pr = -1;
        for (int i = c; i < n; ++i)
            if (sgn(m.at(i, c)) != 0 && (pr < 0 || detail::better_pivot(m.at(i, c), m.at(pr, c))))
                pr = i;
        if (pr < 0) return Rational(0);
        if (pr != c) {
            for (int j = 0; j < n; ++j) std::swap(m.at(c, j), m.at(pr, j));
            det = -det;
        }
        det *= m.at(c, c);
        Rational inv = 1 / m.at(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (sgn(m.at(i, c)) == 0) continue;
            Rational f = m.at(i, c) * inv;
            for (int j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
        }
    }
    return det;
}

// Reduced column echelon form of `m` together with the column-operation
// companion: result.echelon = m * result.companion, restricted to the
// leading nonzero columns.  companion column i expresses echelon column i
// as a combination of the original columns.
struct ColumnEchelon {
    Matrix echelon;           // canonical basis of the column space
    Matrix companion;         // original-column combinations producing it
    std::vector<int> pivot_rows;
};

inline ColumnEchelon column_echelon(const Matrix& m) {
    Matrix t = m.transpose();
    Matrix track = Matrix::identity(m.cols());
    std::vector<int> pivots = rref(t, &track);
    int r = int(pivots.size());
    ColumnEchelon ce;
    ce.echelon = Matrix(m.rows(), r);
    ce.companion = Matrix(m.cols(), r);
    ce.pivot_rows = pivots;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < m.rows(); ++j) ce.echelon.at(j, i) = t.at(i, j);
        for (int j = 0; j < m.cols(); ++j) ce.companion.at(j, i) = track.at(i, j);
    }
    return ce;
}

// A quotient space span(cycles)/span(subspace), with canonical
// representatives reduced against the subspace basis.
struct Quotient {
    int ambient = 0;
    Matrix sub;   // reduced column echelon basis of the divided-out subspace
    Matrix reps;  // canonical representatives of the quotient basis

    int dim() const { return reps.cols(); }

    // Coordinates of v in the quotient basis; v must lie in
    // span(sub) + span(reps).
    std::vector<Rational> coordinates(const std::vector<Rational>& v) const {
        int ns = sub.cols(), nr = reps.cols();
        Matrix aug(ambient, ns + nr + 1);
        for (int i = 0; i < ambient; ++i) {
            for (int j = 0; j < ns; ++j) aug.at(i, j) = sub.at(i, j);
            for (int j = 0; j < nr; ++j) aug.at(i, ns + j) = reps.at(i, j);
            aug.at(i, ns + nr) = v[i];
        }
        std::vector<int> pivots = rref(aug);
        if (!pivots.empty() && pivots.back() == ns + nr)
            throw precondition_error("vector lies outside the cycle space at this scale");
        std::vector<Rational> coords(nr, Rational(0));
        for (size_t i = 0; i < pivots.size(); ++i)
            if (pivots[i] >= ns) coords[pivots[i] - ns] = aug.at(int(i), ns + nr);
        return coords;
    }
};

// Build the quotient span(cycle_cols)/span(subspace_cols).  Representatives
// are the cycle columns surviving elimination against the subspace, reduced
// against it and brought to reduced column echelon form, so the output is a
// canonical function of the two input column families.
inline Quotient make_quotient(const Matrix& subspace_cols, const Matrix& cycle_cols) {
    Quotient q;
    q.ambient = cycle_cols.rows();
    ColumnEchelon sub_ce = column_echelon(subspace_cols);
    q.sub = sub_ce.echelon;
    int ns = q.sub.cols();

    // Incremental elimination state: mutually pivot-reduced columns, seeded
    // with the subspace basis (RCEF columns already have unit pivots and
    // zeros at each other's pivot rows).
    std::vector<std::vector<Rational>> elim;
    std::vector<int> elim_pivot;
    for (int j = 0; j < ns; ++j) {
        elim.push_back(q.sub.col(j));
        elim_pivot.push_back(sub_ce.pivot_rows[j]);
    }

    std::vector<int> chosen;
    for (int j = 0; j < cycle_cols.cols(); ++j) {
        std::vector<Rational> v = cycle_cols.col(j);
        for (size_t k = 0; k < elim.size(); ++k) {
            Rational f = v[elim_pivot[k]];
            if (sgn(f) == 0) continue;
            for (int i = 0; i < q.ambient; ++i) v[i] -= f * elim[k][i];
        }
        int pivot = -1;
        for (int i = 0; i < q.ambient; ++i)
            if (sgn(v[i]) != 0) { pivot = i; break; }
        if (pivot < 0) continue;
        Rational inv = 1 / v[pivot];
        for (int i = 0; i < q.ambient; ++i) v[i] *= inv;
        for (auto& e : elim) {
            Rational f = e[pivot];
            if (sgn(f) == 0) continue;
            for (int i = 0; i < q.ambient; ++i) e[i] -= f * v[i];
        }
        elim.push_back(std::move(v));
        elim_pivot.push_back(pivot);
        chosen.push_back(j);
    }

    // Reduce each chosen representative against the subspace pivots, then
    // canonicalize the set itself.
    Matrix raw(q.ambient, int(chosen.size()));
    for (size_t c = 0; c < chosen.size(); ++c)
        for (int i = 0; i < q.ambient; ++i) raw.at(i, int(c)) = cycle_cols.at(i, chosen[c]);
    for (size_t c = 0; c < chosen.size(); ++c) {
        for (int s = 0; s < ns; ++s) {
            int pr = sub_ce.pivot_rows[s];
            Rational f = raw.at(pr, int(c));
            if (sgn(f) == 0) continue;
            for (int i = 0; i < q.ambient; ++i) raw.at(i, int(c)) -= f * q.sub.at(i, s);
        }
    }
    q.reps = column_echelon(raw).echelon;
    return q;
}

} // namespace scalehom
