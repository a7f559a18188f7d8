#ifndef REGLAB_GYSIN_HPP
#define REGLAB_GYSIN_HPP

#include <map>
#include <set>

#include <json.hpp>

#include "reglab/double_complex.hpp"
#include "reglab/spectral.hpp"

namespace reglab {

// Multi-index over components {1..N} as a bitmask (bit i-1 for component i).
using MultiIndex = unsigned;

int multi_size(MultiIndex I);
// 1-based position i would occupy in the sorted multi-index J u {i}
int position_in(int i, MultiIndex J);
std::string multi_to_string(MultiIndex I);
MultiIndex multi_from_string(const std::string& s);

// Combinatorial normal-crossing data with user-supplied finite stratum
// models. models[0] is the ambient model; Gy components are degree +2
// chain maps model[I] -> model[I minus i].
struct NcdDescriptor {
    int n_components = 0;
    std::set<MultiIndex> nonempty;  // excluding 0; downward closed
    std::map<MultiIndex, CochainComplex> models;
    // keyed by (I, i): per source degree m, matrix model[I]^m -> model[I\i]^{m+2}
    std::map<std::pair<MultiIndex, int>, std::map<int, MatQ>> gysin_components;
    // optional coniveau data: N^k spans inside the ambient model, per degree
    std::map<int, std::map<int, MatQ>> coniveau;

    bool stratum_nonempty(MultiIndex I) const { return I == 0 || nonempty.count(I) > 0; }
    const CochainComplex& model(MultiIndex I) const;
    MatQ gy_component(MultiIndex I, int i, int m) const;
    void validate() const;
};

// layout of the direct sum over |I| = level inside a grid block
struct BlockLayout {
    std::vector<MultiIndex> indices;
    std::map<MultiIndex, int> offset;  // within the block, per degree
};

struct GysinComplex {
    NcdDescriptor ncd;
    int p = 0;
    DoubleComplex grid;  // columns a in [-N, 0]
    Totalization tot;
};

// K(p)_0^{a,b} = C^{2p+2a+b}(level -a model); horizontal = signed Gy sum.
GysinComplex build_gysin(const NcdDescriptor& ncd, int p);

// Column filtration W~_j = columns a >= -j on the totalization.
FilteredCochainComplex weight_filtration(const GysinComplex& g);

struct WeightGradedClass {
    int a = 0, b = 0;
    MatQ coords;  // over the E_inf representatives at (a,b)
};

struct ResidueResult {
    int depth = 0;
    int b = 0;
    int target_dim = 0;
    MatQ coords;  // class in the depth-k grid's E_inf^{0,b}; zero matrix if killed
    GysinComplex quotient;  // the reindexed depth-k grid (twist p-k)
};

// Res^k: quotient to columns <= -k, reindexed to column 0.
ResidueResult higher_residue(const GysinComplex& g, const WeightGradedClass& cls, int k);

// Coniveau spectral sequence 'K(p): pages of the N^k filtration on the
// ambient model reindexed by 2p.
std::vector<SpectralSequencePage> coniveau_pages(const NcdDescriptor& ncd, int p, int r_max);

NcdDescriptor ncd_from_json(const nlohmann::json& j);

}  // namespace reglab

#endif
