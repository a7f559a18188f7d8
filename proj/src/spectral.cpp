#include "reglab/spectral.hpp"

#include <tuple>

#include "reglab/errors.hpp"

namespace reglab {

int SpectralSequencePage::dim(int p, int q) const {
    auto it = entries.find({p, q});
    return it == entries.end() ? 0 : it->second.dim;
}

MatQ SpectralSequencePage::d_at(int p, int q) const {
    auto it = d.find({p, q});
    if (it != d.end()) return it->second;
    return MatQ(dim(p + r, q - r + 1), dim(p, q));
}

PageComputer::PageComputer(FilteredCochainComplex f) : f_(std::move(f)) {}

MatQ PageComputer::cycles(int r, int p, int k) {
    auto key = std::make_tuple(r, p, k);
    auto it = zcache_.find(key);
    if (it != zcache_.end()) return it->second;
    const CochainComplex& c = f_.base;
    MatQ A = f_.F(p, k);
    MatQ W = f_.F(p + r, k + 1);
    MatQ K = kernel_basis(hstack(c.d_at(k) * A, -W));
    MatQ XA(A.cols, K.cols);
    for (int i = 0; i < A.cols; ++i)
        for (int j = 0; j < K.cols; ++j) XA.at(i, j) = K.at(i, j);
    MatQ Z = column_basis(A * XA);
    zcache_[key] = Z;
    return Z;
}

MatQ PageComputer::denominator(int r, int p, int k) {
    MatQ zin = cycles(r - 1, p + 1, k);
    MatQ zsrc = cycles(r - 1, p - r + 1, k - 1);
    return span_sum(zin, f_.base.d_at(k - 1) * zsrc);
}

PageEntry PageComputer::entry(int r, int p, int k) {
    PageEntry e;
    MatQ Z = cycles(r, p, k);
    MatQ D = denominator(r, p, k);
    e.reps = complement_in(D, Z);
    e.dim = e.reps.cols;
    return e;
}

SpectralSequencePage PageComputer::page(int r) {
    const CochainComplex& c = f_.base;
    SpectralSequencePage pg;
    pg.r = r;
    for (int p = f_.min_level; p <= f_.max_level; ++p)
        for (int k = c.lo; k <= c.hi(); ++k) pg.entries[{p, k - p}] = entry(r, p, k);
    for (auto& [pq, e] : pg.entries) {
        auto [p, q] = pq;
        int k = p + q;
        int tp = p + r, tq = q - r + 1;
        auto t = pg.entries.find({tp, tq});
        MatQ treps = (t == pg.entries.end()) ? MatQ(c.dim(k + 1), 0) : t->second.reps;
        MatQ img = c.d_at(k) * e.reps;
        MatQ tden = denominator(r, tp, k + 1);
        auto X = express_modulo(img, treps, tden);
        if (!X) throw InvalidComplex("spectral page: d of a cycle not expressible on target page");
        pg.d[pq] = *X;
    }
    return pg;
}

int PageComputer::stable_r() const { return f_.max_level - f_.min_level + 2; }

bool PageComputer::convergence_holds() {
    const CochainComplex& c = f_.base;
    SpectralSequencePage inf = page(stable_r());
    for (int k = c.lo; k <= c.hi(); ++k) {
        int sum = 0;
        for (int p = f_.min_level; p <= f_.max_level; ++p) sum += inf.dim(p, k - p);
        if (sum != c.cohomology_dim(k)) return false;
    }
    return true;
}

int PageComputer::filtered_image_dim(int level, int k) const {
    const CochainComplex& c = f_.base;
    MatQ A = f_.F(level, k);
    // cycles of the subcomplex F^level
    MatQ K = kernel_basis(c.d_at(k) * A);
    MatQ sub_cycles = column_basis(A * K);
    MatQ bd = c.coboundaries(k);
    return rank(hstack(sub_cycles, bd)) - rank(bd);
}

std::vector<SpectralSequencePage> spectral_pages(const FilteredCochainComplex& f, int r_max) {
    f.validate();
    PageComputer pc(f);
    std::vector<SpectralSequencePage> pages;
    for (int r = 0; r <= r_max; ++r) pages.push_back(pc.page(r));
    return pages;
}

void verify_page_laws(PageComputer& pc, int r_max) {
    for (int r = 0; r < r_max; ++r) {
        SpectralSequencePage cur = pc.page(r);
        SpectralSequencePage nxt = pc.page(r + 1);
        for (auto& [pq, e] : cur.entries) {
            auto [p, q] = pq;
            MatQ out = cur.d_at(p, q);
            MatQ in = cur.d_at(p - r, q + r - 1);
            if (!(cur.d_at(p + r, q - r + 1) * out).is_zero())
                throw InvalidComplex("d_r . d_r != 0");
            int expect = (e.dim - rank(out)) - rank(in);
            if (nxt.dim(p, q) != expect)
                throw InvalidComplex("dim E_{r+1} != ker - im at page " + std::to_string(r));
        }
    }
}

bool LongExactSequence::exact() const {
    for (size_t t = 0; t < terms.size(); ++t) {
        int rank_in = (t == 0) ? 0 : rank(terms[t - 1].map_to_next);
        int ker_out = terms[t].dim - rank(terms[t].map_to_next);
        if (rank_in != ker_out) return false;
        if (t > 0 && !(terms[t].map_to_next * terms[t - 1].map_to_next).is_zero()) return false;
    }
    return true;
}

void LongExactSequence::verify_exact() const {
    if (!exact()) throw NotExactSES("long exact sequence fails exactness");
}

LongExactSequence les_from_ses(const ChainMap& incl, const ChainMap& proj) {
    incl.validate();
    proj.validate();
    const CochainComplex& A = incl.src;
    const CochainComplex& B = incl.dst;
    const CochainComplex& C = proj.dst;
    int lo = std::min({A.lo, B.lo, C.lo});
    int hi = std::max({A.hi(), B.hi(), C.hi()});
    for (int k = lo; k <= hi; ++k) {
        MatQ i = incl.at(k), s = proj.at(k);
        if (rank(i) != A.dim(k)) throw NotExactSES("inclusion not injective at degree " + std::to_string(k));
        if (rank(s) != C.dim(k)) throw NotExactSES("projection not surjective at degree " + std::to_string(k));
        if (!(s * i).is_zero()) throw NotExactSES("composite nonzero at degree " + std::to_string(k));
        if (A.dim(k) != B.dim(k) - rank(s))
            throw NotExactSES("im != ker at degree " + std::to_string(k));
    }

    std::vector<CohomologyBasis> hA, hB, hC;
    for (int k = lo; k <= hi + 1; ++k) {
        hA.push_back(cohomology_basis(A, k));
        hB.push_back(cohomology_basis(B, k));
        hC.push_back(cohomology_basis(C, k));
    }
    LongExactSequence les;
    auto idx = [&](int k) { return k - lo; };
    for (int k = lo; k <= hi; ++k) {
        LesTerm tA{"H^" + std::to_string(k) + "(A)", hA[idx(k)].dim(),
                   induced_on_cohomology(incl, k, hA[idx(k)], hB[idx(k)])};
        LesTerm tB{"H^" + std::to_string(k) + "(B)", hB[idx(k)].dim(),
                   induced_on_cohomology(proj, k, hB[idx(k)], hC[idx(k)])};
        // connecting map: lift, push by d, pull back along the inclusion
        MatQ reps = hC[idx(k)].reps;
        MatQ delta(hA[idx(k + 1)].dim(), reps.cols);
        if (reps.cols > 0) {
            auto lift = solve(proj.at(k), reps);
            if (!lift) throw NotExactSES("failed to lift a cocycle through the projection");
            MatQ db = B.d_at(k) * (*lift);
            auto a = solve(incl.at(k + 1), db);
            if (!a) throw NotExactSES("connecting image not in the subcomplex");
            auto X = hA[idx(k + 1)].express(*a);
            if (!X) throw NotExactSES("connecting image is not a cocycle class");
            delta = *X;
        } else {
            delta = MatQ(hA[idx(k + 1)].dim(), 0);
        }
        LesTerm tC{"H^" + std::to_string(k) + "(C)", hC[idx(k)].dim(), delta};
        les.terms.push_back(tA);
        les.terms.push_back(tB);
        les.terms.push_back(tC);
    }
    return les;
}

PageMap induced_page_map(const FilteredMap& m, int r) {
    m.validate();
    PageComputer src(m.src), dst(m.dst);
    SpectralSequencePage ps = src.page(r);
    SpectralSequencePage pd = dst.page(r);
    PageMap out;
    out.r = r;
    for (auto& [pq, e] : ps.entries) {
        auto [p, q] = pq;
        int k = p + q;
        MatQ img = m.map.at(k) * e.reps;
        PageEntry te = dst.entry(r, p, k);
        MatQ tden = dst.denominator(r, p, k);
        auto X = express_modulo(img, te.reps, tden);
        if (!X) throw NotFiltered("filtered map image not expressible on target page");
        out.blocks[pq] = *X;
    }
    // the blocks must intertwine d_r exactly
    for (auto& [pq, blk] : out.blocks) {
        auto [p, q] = pq;
        auto tgt = out.blocks.find({p + r, q - r + 1});
        MatQ lhs = (tgt == out.blocks.end())
                       ? MatQ(pd.dim(p + r, q - r + 1), ps.dim(p, q))
                       : tgt->second * ps.d_at(p, q);
        MatQ rhs = pd.d_at(p, q) * blk;
        if (!(lhs - rhs).is_zero())
            throw NotFiltered("induced page map fails to commute with d_r");
    }
    return out;
}

}  // namespace reglab
