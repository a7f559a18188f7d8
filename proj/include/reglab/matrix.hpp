#ifndef REGLAB_MATRIX_HPP
#define REGLAB_MATRIX_HPP

#include <initializer_list>
#include <optional>
#include <vector>

#include "reglab/rational.hpp"

namespace reglab {

// Dense matrix over Q, row-major. Subspaces are carried around as
// spanning-column matrices; all rank/kernel computations are exact.
struct MatQ {
    int rows = 0;
    int cols = 0;
    std::vector<Rat> a;

    MatQ() = default;
    MatQ(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
    MatQ(int r, int c, std::initializer_list<long> vals);

    static MatQ identity(int n);
    static MatQ zero(int r, int c) { return MatQ(r, c); }

    Rat& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const Rat& at(int i, int j) const { return a[(size_t)i * cols + j]; }

    bool is_zero() const;
    bool operator==(const MatQ& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

    MatQ transpose() const;
    MatQ column(int j) const;
    MatQ columns(const std::vector<int>& idx) const;
};

MatQ operator*(const MatQ& x, const MatQ& y);
MatQ operator+(const MatQ& x, const MatQ& y);
MatQ operator-(const MatQ& x, const MatQ& y);
MatQ operator-(const MatQ& x);
MatQ operator*(const Rat& c, const MatQ& x);

MatQ hstack(const MatQ& x, const MatQ& y);
MatQ vstack(const MatQ& x, const MatQ& y);

// In-place Gauss-Jordan to reduced row echelon form; returns pivot columns.
std::vector<int> rref(MatQ& m);

int rank(const MatQ& m);

// Columns form a basis of ker(m); deterministic (pivot order of rref).
MatQ kernel_basis(const MatQ& m);

// Deterministic basis of the column span: reduced column echelon form.
MatQ column_basis(const MatQ& m);

// Particular solution X of A X = B, or nullopt if inconsistent.
std::optional<MatQ> solve(const MatQ& A, const MatQ& B);

// span(B) subset of span(A)?
bool span_contains(const MatQ& A, const MatQ& B);

bool spans_equal(const MatQ& A, const MatQ& B);

// basis of span(A) + span(B)
MatQ span_sum(const MatQ& A, const MatQ& B);

// basis of span(A) n span(B)
MatQ span_intersect(const MatQ& A, const MatQ& B);

// basis of { v : M v in span(W) }
MatQ preimage(const MatQ& M, const MatQ& W);

// Columns of `sup` extending a basis of span(sub) to span(sub)+span(sup).
// Requires nothing about containment; with sub a subspace of sup this
// returns representatives of sup/sub. Deterministic.
MatQ complement_in(const MatQ& sub, const MatQ& sup);

// Coordinates of the columns of V over the columns of `reps`, allowed to
// use span(modulo) freely: solves [reps | modulo] x = v and keeps the reps
// block. nullopt if some column is not in span(reps)+span(modulo).
std::optional<MatQ> express_modulo(const MatQ& V, const MatQ& reps, const MatQ& modulo);

std::string to_string(const MatQ& m);

}  // namespace reglab

#endif
