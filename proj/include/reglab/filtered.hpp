#ifndef REGLAB_FILTERED_HPP
#define REGLAB_FILTERED_HPP

#include "reglab/complex.hpp"

namespace reglab {

// Cochain complex with a decreasing filtration F^l by subcomplexes, each
// filtrand given as spanning columns per degree. Levels outside the stored
// window are implicit: F^l = everything for l < min_level, F^l = 0 for
// l > max_level.
struct FilteredCochainComplex {
    CochainComplex base;
    int min_level = 0;
    int max_level = 0;
    // filt[l - min_level][k - base.lo]
    std::vector<std::vector<MatQ>> filt;

    MatQ F(int level, int k) const;

    // exhaustive + bounded + decreasing + d-stable; throws NotFiltered
    void validate() const;
};

// Trivial one-jump filtration: full at min level, zero above.
FilteredCochainComplex trivial_filtration(const CochainComplex& c);

// Deligne's filtration decalee:
//   (Dec F)^l K^m = { v in F^{l+m} K^m : d v in F^{l+m+1} K^{m+1} }.
FilteredCochainComplex decalee(const FilteredCochainComplex& f);

// Filtered chain map (commutes with d, respects filtrations).
struct FilteredMap {
    FilteredCochainComplex src;
    FilteredCochainComplex dst;
    ChainMap map;

    void validate() const;  // throws NotFiltered / NonChainMap
};

}  // namespace reglab

#endif
