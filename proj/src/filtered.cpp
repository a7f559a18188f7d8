#include "reglab/filtered.hpp"

#include <string>

#include "reglab/errors.hpp"

namespace reglab {

MatQ FilteredCochainComplex::F(int level, int k) const {
    int n = base.dim(k);
    if (k < base.lo || k > base.hi()) return MatQ(0, 0);
    if (level > max_level) return MatQ(n, 0);
    if (level < min_level) return MatQ::identity(n);
    const MatQ& m = filt[level - min_level][k - base.lo];
    if (m.rows == 0 && m.cols == 0 && n > 0) return MatQ(n, 0);
    return m;
}

void FilteredCochainComplex::validate() const {
    base.validate();
    if ((int)filt.size() != max_level - min_level + 1)
        throw NotFiltered("level count mismatch");
    for (int l = min_level; l <= max_level; ++l) {
        if ((int)filt[l - min_level].size() != (int)base.dims.size())
            throw NotFiltered("per-degree filtrand count mismatch at level " + std::to_string(l));
        for (int k = base.lo; k <= base.hi(); ++k) {
            MatQ cur = F(l, k);
            if (cur.rows != base.dim(k))
                throw NotFiltered("filtrand has wrong ambient dimension");
            if (!span_contains(F(l - 1, k), cur))
                throw NotFiltered("filtration not decreasing at level " + std::to_string(l) +
                                  ", degree " + std::to_string(k));
            if (!span_contains(F(l, k + 1), base.d_at(k) * cur))
                throw NotFiltered("d does not preserve level " + std::to_string(l) +
                                  " at degree " + std::to_string(k));
        }
    }
    // exhaustive: lowest stored level must already be everything
    for (int k = base.lo; k <= base.hi(); ++k)
        if (rank(F(min_level, k)) != base.dim(k))
            throw NotFiltered("filtration not exhaustive at degree " + std::to_string(k));
}

FilteredCochainComplex trivial_filtration(const CochainComplex& c) {
    FilteredCochainComplex f;
    f.base = c;
    f.min_level = 0;
    f.max_level = 0;
    f.filt.resize(1);
    for (int k = c.lo; k <= c.hi(); ++k) f.filt[0].push_back(MatQ::identity(c.dim(k)));
    return f;
}

FilteredCochainComplex decalee(const FilteredCochainComplex& f) {
    const CochainComplex& c = f.base;
    // Dec F at level l, degree m depends on F^{l+m}; the interesting window is
    // where some F^{l+m} is proper.
    int lo_l = f.min_level - c.hi() - 1;
    int hi_l = f.max_level - c.lo + 1;
    FilteredCochainComplex g;
    g.base = c;
    g.min_level = lo_l;
    g.max_level = hi_l;
    g.filt.assign(hi_l - lo_l + 1, {});
    for (int l = lo_l; l <= hi_l; ++l) {
        for (int m = c.lo; m <= c.hi(); ++m) {
            MatQ A = f.F(l + m, m);
            MatQ W = f.F(l + m + 1, m + 1);
            // { v in span(A) : d v in span(W) }
            MatQ K = kernel_basis(hstack(c.d_at(m) * A, -W));
            MatQ XA(A.cols, K.cols);
            for (int i = 0; i < A.cols; ++i)
                for (int j = 0; j < K.cols; ++j) XA.at(i, j) = K.at(i, j);
            g.filt[l - lo_l].push_back(column_basis(A * XA));
        }
    }
    // trim levels that are full at the bottom / zero at the top
    auto level_full = [&](int l) {
        for (int m = c.lo; m <= c.hi(); ++m)
            if (rank(g.F(l, m)) != c.dim(m)) return false;
        return true;
    };
    auto level_zero = [&](int l) {
        for (int m = c.lo; m <= c.hi(); ++m)
            if (g.F(l, m).cols != 0 && rank(g.F(l, m)) != 0) return false;
        return true;
    };
    int new_lo = g.min_level, new_hi = g.max_level;
    while (new_lo < new_hi && level_full(new_lo + 1)) ++new_lo;
    while (new_hi > new_lo && level_zero(new_hi)) --new_hi;
    FilteredCochainComplex out;
    out.base = c;
    out.min_level = new_lo;
    out.max_level = new_hi;
    for (int l = new_lo; l <= new_hi; ++l) out.filt.push_back(g.filt[l - lo_l]);
    return out;
}

void FilteredMap::validate() const {
    map.validate();
    int lo = std::min(src.min_level, dst.min_level);
    int hi = std::max(src.max_level, dst.max_level);
    for (int l = lo; l <= hi; ++l)
        for (int k = src.base.lo; k <= src.base.hi(); ++k)
            if (!span_contains(dst.F(l, k), map.at(k) * src.F(l, k)))
                throw NotFiltered("map does not respect filtration at level " +
                                  std::to_string(l) + ", degree " + std::to_string(k));
}

}  // namespace reglab
