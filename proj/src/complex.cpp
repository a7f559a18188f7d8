#include "reglab/complex.hpp"

#include <string>

#include "reglab/errors.hpp"

namespace reglab {

MatQ CochainComplex::d_at(int k) const {
    if (k < lo || k > hi()) return MatQ(dim(k + 1), dim(k));
    const MatQ& m = d[k - lo];
    if (m.rows == dim(k + 1) && m.cols == dim(k)) return m;
    // allow default-constructed placeholders for zero maps
    if (m.rows == 0 && m.cols == 0) return MatQ(dim(k + 1), dim(k));
    throw InvalidComplex("differential at degree " + std::to_string(k) + " has wrong shape");
}

void CochainComplex::validate() const {
    if ((int)dims.size() != (int)d.size())
        throw InvalidComplex("dims/differential count mismatch");
    for (int k = lo; k <= hi(); ++k) {
        MatQ dk = d_at(k);
        MatQ dk1 = d_at(k + 1);
        if (!(dk1 * dk).is_zero())
            throw InvalidComplex("d.d != 0 at degree " + std::to_string(k));
    }
}

MatQ CochainComplex::cocycles(int k) const { return kernel_basis(d_at(k)); }

MatQ CochainComplex::coboundaries(int k) const { return column_basis(d_at(k - 1)); }

int CochainComplex::cohomology_dim(int k) const {
    if (dim(k) == 0) return 0;
    return cocycles(k).cols - rank(d_at(k - 1));
}

std::vector<int> CochainComplex::cohomology_dims() const {
    std::vector<int> h;
    for (int k = lo; k <= hi(); ++k) h.push_back(cohomology_dim(k));
    return h;
}

MatQ ChainMap::at(int k) const {
    int i = k - lo;
    if (i < 0 || i >= (int)f.size()) return MatQ(dst.dim(k), src.dim(k));
    const MatQ& m = f[i];
    if (m.rows == 0 && m.cols == 0) return MatQ(dst.dim(k), src.dim(k));
    return m;
}

void ChainMap::validate() const {
    int a = std::min(src.lo, dst.lo), b = std::max(src.hi(), dst.hi());
    for (int k = a; k <= b; ++k) {
        MatQ fk = at(k);
        if (fk.rows != dst.dim(k) || fk.cols != src.dim(k))
            throw NonChainMap("component at degree " + std::to_string(k) + " has wrong shape");
        if (!(dst.d_at(k) * fk - at(k + 1) * src.d_at(k)).is_zero())
            throw NonChainMap("does not commute with d at degree " + std::to_string(k));
    }
}

ChainMap identity_map(const CochainComplex& c) {
    ChainMap m{c, c, {}, c.lo};
    for (int k = c.lo; k <= c.hi(); ++k) m.f.push_back(MatQ::identity(c.dim(k)));
    return m;
}

ChainMap zero_map(const CochainComplex& src, const CochainComplex& dst) {
    int lo = std::min(src.lo, dst.lo), hi = std::max(src.hi(), dst.hi());
    ChainMap m{src, dst, {}, lo};
    for (int k = lo; k <= hi; ++k) m.f.push_back(MatQ(dst.dim(k), src.dim(k)));
    return m;
}

CochainComplex cone(const ChainMap& mu) {
    mu.validate();
    const CochainComplex& M = mu.src;
    const CochainComplex& N = mu.dst;
    int lo = std::min(M.lo - 1, N.lo);
    int hi = std::max(M.hi() - 1, N.hi());
    CochainComplex c;
    c.lo = lo;
    for (int k = lo; k <= hi; ++k) c.dims.push_back(M.dim(k + 1) + N.dim(k));
    c.d.resize(c.dims.size());
    for (int k = lo; k <= hi; ++k) {
        int mr = M.dim(k + 2), nr = N.dim(k + 1);
        int mc = M.dim(k + 1), nc = N.dim(k);
        MatQ D(mr + nr, mc + nc);
        MatQ dM = M.d_at(k + 1), dN = N.d_at(k), F = mu.at(k + 1);
        for (int i = 0; i < mr; ++i)
            for (int j = 0; j < mc; ++j) D.at(i, j) = -dM.at(i, j);
        for (int i = 0; i < nr; ++i) {
            for (int j = 0; j < mc; ++j) D.at(mr + i, j) = F.at(i, j);
            for (int j = 0; j < nc; ++j) D.at(mr + i, mc + j) = dN.at(i, j);
        }
        c.d[k - lo] = D;
    }
    c.validate();
    return c;
}

CochainComplex truncate(const CochainComplex& c, int q) {
    CochainComplex t;
    t.lo = c.lo;
    if (q < c.lo) {  // zero complex
        t.lo = 0;
        t.dims = {0};
        t.d = {MatQ(0, 0)};
        return t;
    }
    if (q >= c.hi()) return c;  // d^hi is the zero map, nothing to cut
    MatQ K = c.cocycles(q);  // embedding of the new degree-q space
    for (int k = c.lo; k <= std::min(q, c.hi()); ++k)
        t.dims.push_back(k == q ? K.cols : c.dim(k));
    t.d.resize(t.dims.size());
    for (int k = c.lo; k < (int)t.dims.size() + c.lo; ++k) {
        if (k == q) {
            t.d[k - c.lo] = MatQ(0, t.dims[k - c.lo]);
        } else if (k == q - 1) {
            // d^{q-1} factors through ker(d^q)
            auto X = solve(K, c.d_at(k));
            if (!X) throw InvalidComplex("truncate: d image not in kernel (d.d != 0?)");
            t.d[k - c.lo] = *X;
        } else {
            t.d[k - c.lo] = c.d_at(k);
        }
    }
    return t;
}

CochainComplex shift(const CochainComplex& c, int s) {
    CochainComplex r;
    r.lo = c.lo - s;
    r.dims = c.dims;
    r.d.reserve(c.d.size());
    Rat sign = (s % 2 == 0) ? rat(1) : rat(-1);
    for (int k = c.lo; k <= c.hi(); ++k) r.d.push_back(sign * c.d_at(k));
    return r;
}

std::optional<MatQ> CohomologyBasis::express(const MatQ& v) const {
    return express_modulo(v, reps, boundaries);
}

CohomologyBasis cohomology_basis(const CochainComplex& c, int k) {
    CohomologyBasis b;
    b.cycles = c.cocycles(k);
    b.boundaries = c.coboundaries(k);
    b.reps = complement_in(b.boundaries, b.cycles);
    return b;
}

MatQ induced_on_cohomology(const ChainMap& m, int k,
                           const CohomologyBasis& hsrc, const CohomologyBasis& hdst) {
    MatQ img = m.at(k) * hsrc.reps;
    auto X = hdst.express(img);
    if (!X) throw NonChainMap("image of a cycle is not a cycle in target cohomology");
    return *X;
}

}  // namespace reglab
