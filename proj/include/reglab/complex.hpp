#ifndef REGLAB_COMPLEX_HPP
#define REGLAB_COMPLEX_HPP

#include <vector>

#include "reglab/matrix.hpp"

namespace reglab {

// Bounded cochain complex of Q-vector spaces, differentials of degree +1.
// Everything outside [lo, hi] is zero.
struct CochainComplex {
    int lo = 0;
    std::vector<int> dims;  // dims[k - lo]
    std::vector<MatQ> d;    // d[k - lo] : K^k -> K^{k+1}; size dims.size()

    int hi() const { return lo + (int)dims.size() - 1; }
    int dim(int k) const { return (k < lo || k > hi()) ? 0 : dims[k - lo]; }
    MatQ d_at(int k) const;  // zero-shaped outside range

    // throws InvalidComplex unless shapes match and d.d = 0 exactly
    void validate() const;

    MatQ cocycles(int k) const;      // basis of ker d^k
    MatQ coboundaries(int k) const;  // basis of im d^{k-1}
    int cohomology_dim(int k) const;
    std::vector<int> cohomology_dims() const;  // indexed lo..hi
};

// Chain map between two complexes (degree 0, commutes with d).
struct ChainMap {
    CochainComplex src;
    CochainComplex dst;
    std::vector<MatQ> f;  // f[k - lo] for k in the union degree range
    int lo = 0;

    MatQ at(int k) const;
    void validate() const;  // throws NonChainMap
};

ChainMap identity_map(const CochainComplex& c);
ChainMap zero_map(const CochainComplex& src, const CochainComplex& dst);

// Cone of mu : M -> N, carried by M[1] + N with D(a,b) = (-d_M a, mu a + d_N b).
CochainComplex cone(const ChainMap& mu);

// Good truncation: unchanged below q, ker(d) at q, zero above.
CochainComplex truncate(const CochainComplex& c, int q);

// Shift: (c[s])^k = c^{k+s}, differential (-1)^s d.
CochainComplex shift(const CochainComplex& c, int s);

// Representatives of H^k: cycle columns extending the boundary space.
struct CohomologyBasis {
    MatQ reps;        // columns: chosen representatives
    MatQ cycles;      // ker d^k
    MatQ boundaries;  // im d^{k-1}
    int dim() const { return reps.cols; }
    // coordinates of a cycle v on reps modulo boundaries
    std::optional<MatQ> express(const MatQ& v) const;
};

CohomologyBasis cohomology_basis(const CochainComplex& c, int k);

// Matrix of the induced map H^k(src) -> H^k(dst) of a chain map.
MatQ induced_on_cohomology(const ChainMap& m, int k,
                           const CohomologyBasis& hsrc, const CohomologyBasis& hdst);

}  // namespace reglab

#endif
