#ifndef REGLAB_DOUBLE_COMPLEX_HPP
#define REGLAB_DOUBLE_COMPLEX_HPP

#include <map>
#include <utility>

#include "reglab/filtered.hpp"

namespace reglab {

// Rectangular double complex with commuting squares. The totalization sign
// (-1)^b is applied only when forming the simple complex, so rows and
// columns are stored as plain complexes.
struct DoubleComplex {
    int alo = 0, blo = 0;
    int na = 0, nb = 0;
    std::vector<int> dims;   // dims[(a-alo)*nb + (b-blo)]
    std::vector<MatQ> horiz;  // (a,b) -> (a+1,b)
    std::vector<MatQ> vert;   // (a,b) -> (a,b+1)

    int ahi() const { return alo + na - 1; }
    int bhi() const { return blo + nb - 1; }
    bool in_range(int a, int b) const {
        return a >= alo && a <= ahi() && b >= blo && b <= bhi();
    }
    int dim(int a, int b) const;
    MatQ h_at(int a, int b) const;
    MatQ v_at(int a, int b) const;

    void resize_grid() {
        dims.assign((size_t)na * nb, 0);
        horiz.assign((size_t)na * nb, MatQ());
        vert.assign((size_t)na * nb, MatQ());
    }
    void set_dim(int a, int b, int n) { dims[(size_t)(a - alo) * nb + (b - blo)] = n; }
    void set_h(int a, int b, MatQ m) { horiz[(size_t)(a - alo) * nb + (b - blo)] = std::move(m); }
    void set_v(int a, int b, MatQ m) { vert[(size_t)(a - alo) * nb + (b - blo)] = std::move(m); }

    void validate() const;  // throws SquaresDoNotCommute / InvalidComplex
};

struct Totalization {
    CochainComplex total;
    int alo = 0, blo = 0;
    // offset of block (a,b) inside degree a+b
    std::map<std::pair<int, int>, int> offset;
    std::map<std::pair<int, int>, int> block_dim;

    // embed a block vector into the total degree-k space
    MatQ embed(int a, int b, const MatQ& v) const;
    // extract the (a,b) block of a total degree-(a+b) vector
    MatQ project(int a, int b, const MatQ& v) const;
};

// s^k = sum of entries with a+b=k, differential vert + (-1)^b horiz.
Totalization totalize(const DoubleComplex& dc);

// Decreasing filtration by columns a >= level on the totalization.
FilteredCochainComplex column_filtration(const DoubleComplex& dc, const Totalization& t);

}  // namespace reglab

#endif
