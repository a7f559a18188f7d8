#ifndef REGLAB_SPECTRAL_HPP
#define REGLAB_SPECTRAL_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "reglab/filtered.hpp"

namespace reglab {

struct PageEntry {
    int dim = 0;
    MatQ reps;  // representative columns inside the ambient graded space
};

struct SpectralSequencePage {
    int r = 0;
    // bidegree (p,q), cohomological convention: d_r : (p,q) -> (p+r, q-r+1)
    std::map<std::pair<int, int>, PageEntry> entries;
    std::map<std::pair<int, int>, MatQ> d;  // matrices in rep coordinates

    int dim(int p, int q) const;
    MatQ d_at(int p, int q) const;  // zero-shaped if absent
};

// Standard subquotient computation inside the ambient filtered complex:
//   Z_r(p,k)   = { v in F^p K^k : d v in F^{p+r} K^{k+1} }
//   E_r^{p,q}  = Z_r(p,p+q) / ( Z_{r-1}(p+1,p+q) + d Z_{r-1}(p-r+1,p+q-1) )
// Representatives are column-echelon extensions of the denominator basis.
class PageComputer {
public:
    explicit PageComputer(FilteredCochainComplex f);

    const FilteredCochainComplex& filtered() const { return f_; }
    MatQ cycles(int r, int p, int k);       // Z_r(p,k)
    MatQ denominator(int r, int p, int k);  // the quotient denominator
    PageEntry entry(int r, int p, int k);

    SpectralSequencePage page(int r);
    // first r with guaranteed stabilization (filtration span + 1)
    int stable_r() const;
    SpectralSequencePage infinity_page() { return page(stable_r()); }

    // sum over p+q=k of E_inf dims equals dim H^k(base)? (convergence)
    bool convergence_holds();

    // dim of im{ H^k(F^level) -> H^k(base) } by explicit image computation
    int filtered_image_dim(int level, int k) const;

private:
    FilteredCochainComplex f_;
    std::map<std::tuple<int, int, int>, MatQ> zcache_;
};

std::vector<SpectralSequencePage> spectral_pages(const FilteredCochainComplex& f, int r_max);

// Exactness-checked d_r . d_r = 0 and dim E_{r+1} = ker - im, for tests.
void verify_page_laws(PageComputer& pc, int r_max);

struct LesTerm {
    std::string label;
    int dim = 0;
    MatQ map_to_next;  // in cohomology-rep coordinates
};

struct LongExactSequence {
    std::vector<LesTerm> terms;
    bool exact() const;       // rank conditions at every term
    void verify_exact() const;  // throws on failure
};

// Long exact cohomology sequence of 0 -> A -> B -> C -> 0.
LongExactSequence les_from_ses(const ChainMap& incl, const ChainMap& proj);

// Map induced on page r by a filtered chain map; blocks keyed by (p,q).
struct PageMap {
    int r = 0;
    std::map<std::pair<int, int>, MatQ> blocks;
};

PageMap induced_page_map(const FilteredMap& m, int r);

}  // namespace reglab

#endif
