#include "reglab/matrix.hpp"

#include <sstream>

namespace reglab {

MatQ::MatQ(int r, int c, std::initializer_list<long> vals) : MatQ(r, c) {
    size_t k = 0;
    for (long v : vals) {
        if (k >= a.size()) break;
        a[k++] = rat(v);
    }
}

MatQ MatQ::identity(int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool MatQ::is_zero() const {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

MatQ MatQ::transpose() const {
    MatQ t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

MatQ MatQ::column(int j) const {
    MatQ c(rows, 1);
    for (int i = 0; i < rows; ++i) c.at(i, 0) = at(i, j);
    return c;
}

MatQ MatQ::columns(const std::vector<int>& idx) const {
    MatQ c(rows, (int)idx.size());
    for (int i = 0; i < rows; ++i)
        for (size_t j = 0; j < idx.size(); ++j) c.at(i, (int)j) = at(i, idx[j]);
    return c;
}

MatQ operator*(const MatQ& x, const MatQ& y) {
    MatQ z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Rat& v = x.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
        }
    return z;
}

MatQ operator+(const MatQ& x, const MatQ& y) {
    MatQ z = x;
    for (size_t k = 0; k < z.a.size(); ++k) z.a[k] += y.a[k];
    return z;
}

MatQ operator-(const MatQ& x, const MatQ& y) {
    MatQ z = x;
    for (size_t k = 0; k < z.a.size(); ++k) z.a[k] -= y.a[k];
    return z;
}

MatQ operator-(const MatQ& x) {
    MatQ z = x;
    for (Rat& v : z.a) v = -v;
    return z;
}

MatQ operator*(const Rat& c, const MatQ& x) {
    MatQ z = x;
    for (Rat& v : z.a) v *= c;
    return z;
}

MatQ hstack(const MatQ& x, const MatQ& y) {
    int rows = x.rows ? x.rows : y.rows;
    MatQ z(rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) z.at(i, x.cols + j) = y.at(i, j);
    return z;
}

MatQ vstack(const MatQ& x, const MatQ& y) {
    if (x.rows == 0) return y;
    if (y.rows == 0) return x;
    MatQ z(x.rows + y.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) z.at(x.rows + i, j) = y.at(i, j);
    return z;
}

std::vector<int> rref(MatQ& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int p = -1;
        for (int i = row; i < m.rows; ++i)
            if (m.at(i, col) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
        Rat inv = 1 / m.at(row, col);
        for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row) continue;
            const Rat f = m.at(i, col);
            if (f == 0) continue;
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(const MatQ& m) {
    MatQ t = m;
    return (int)rref(t).size();
}

MatQ kernel_basis(const MatQ& m) {
    MatQ t = m;
    std::vector<int> piv = rref(t);
    std::vector<char> is_piv(m.cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    MatQ K(m.cols, (int)free_cols.size());
    for (size_t f = 0; f < free_cols.size(); ++f) {
        int fc = free_cols[f];
        K.at(fc, (int)f) = 1;
        for (size_t r = 0; r < piv.size(); ++r) K.at(piv[r], (int)f) = -t.at((int)r, fc);
    }
    return K;
}

MatQ column_basis(const MatQ& m) {
    MatQ t = m.transpose();
    std::vector<int> piv = rref(t);
    MatQ b(m.rows, (int)piv.size());
    for (size_t r = 0; r < piv.size(); ++r)
        for (int i = 0; i < m.rows; ++i) b.at(i, (int)r) = t.at((int)r, i);
    return b;
}

std::optional<MatQ> solve(const MatQ& A, const MatQ& B) {
    MatQ aug = hstack(A, B);
    std::vector<int> piv = rref(aug);
    // consistency: no pivot inside the B block
    for (int c : piv)
        if (c >= A.cols) return std::nullopt;
    MatQ X(A.cols, B.cols);
    for (size_t r = 0; r < piv.size(); ++r)
        for (int j = 0; j < B.cols; ++j) X.at(piv[r], j) = aug.at((int)r, A.cols + j);
    return X;
}

bool span_contains(const MatQ& A, const MatQ& B) {
    if (B.cols == 0) return true;
    return solve(A, B).has_value();
}

bool spans_equal(const MatQ& A, const MatQ& B) {
    return span_contains(A, B) && span_contains(B, A);
}

MatQ span_sum(const MatQ& A, const MatQ& B) { return column_basis(hstack(A, B)); }

MatQ span_intersect(const MatQ& A, const MatQ& B) {
    if (A.cols == 0 || B.cols == 0) return MatQ(A.rows, 0);
    // ker [A | -B] -> x-part gives coefficients of intersection vectors on A
    MatQ K = kernel_basis(hstack(A, -B));
    MatQ XA(A.cols, K.cols);
    for (int i = 0; i < A.cols; ++i)
        for (int j = 0; j < K.cols; ++j) XA.at(i, j) = K.at(i, j);
    return column_basis(A * XA);
}

MatQ preimage(const MatQ& M, const MatQ& W) {
    if (W.cols == 0) return kernel_basis(M);
    MatQ K = kernel_basis(hstack(M, -W));
    MatQ XV(M.cols, K.cols);
    for (int i = 0; i < M.cols; ++i)
        for (int j = 0; j < K.cols; ++j) XV.at(i, j) = K.at(i, j);
    return column_basis(XV);
}

MatQ complement_in(const MatQ& sub, const MatQ& sup) {
    // pivot columns of [sub | sup] are chosen greedily left to right, so
    // pivots landing in the sup block extend a basis of span(sub)
    MatQ work = hstack(sub, sup);
    std::vector<int> piv = rref(work);
    std::vector<int> extra;
    for (int c : piv)
        if (c >= sub.cols) extra.push_back(c - sub.cols);
    return sup.columns(extra);
}

std::optional<MatQ> express_modulo(const MatQ& V, const MatQ& reps, const MatQ& modulo) {
    MatQ A = hstack(reps, modulo);
    auto X = solve(A, V);
    if (!X) return std::nullopt;
    MatQ C(reps.cols, V.cols);
    for (int i = 0; i < reps.cols; ++i)
        for (int j = 0; j < V.cols; ++j) C.at(i, j) = X->at(i, j);
    return C;
}

std::string to_string(const MatQ& m) {
    std::ostringstream os;
    for (int i = 0; i < m.rows; ++i) {
        os << (i == 0 ? "[" : " ");
        for (int j = 0; j < m.cols; ++j) os << (j ? " " : "[") << m.at(i, j).get_str();
        os << "]" << (i + 1 == m.rows ? "]" : "\n");
    }
    if (m.rows == 0) os << "[]";
    return os.str();
}

}  // namespace reglab
