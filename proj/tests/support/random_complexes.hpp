#ifndef REGLAB_TESTS_RANDOM_COMPLEXES_HPP
#define REGLAB_TESTS_RANDOM_COMPLEXES_HPP

#include <random>

#include "reglab/filtered.hpp"
#include "reglab/gysin.hpp"

// Random exact-arithmetic test inputs. Complexes are built as direct sums of
// elementary pieces (single generators and two-term isomorphisms) conjugated
// by invertible changes of basis, so d.d = 0 holds by construction while the
// matrices look generic.

namespace reglab::testsupport {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
    return (int)(lo + rng() % (unsigned long long)(hi - lo + 1));
}

inline Rat small_rat(Rng& rng, int mag = 3) {
    return rat(uniform(rng, -mag, mag), uniform(rng, 1, 2));
}

inline Rat nonzero_rat(Rng& rng, int mag = 3) {
    Rat q = small_rat(rng, mag);
    return q == 0 ? rat(1) : q;
}

struct Piece {
    int degree;
    bool two_term;
    Rat scale;     // iso entry for two-term pieces
    int level_lo;  // filtration level of the source generator
    int level_hi;  // filtration level of the target generator
};

struct ElementaryComplex {
    int lo, hi;
    std::vector<Piece> pieces;
    // generator bookkeeping
    struct Gen { int deg, idx, level, piece; bool is_target; };
    std::vector<Gen> gens;
    CochainComplex complex;

    int dim(int k) const { return complex.dim(k); }
};

inline ElementaryComplex random_elementary(Rng& rng, int lo, int hi, int max_total_dim,
                                           int max_level) {
    ElementaryComplex e;
    e.lo = lo;
    e.hi = hi;
    std::vector<int> dims(hi - lo + 1, 0);
    int total = 0;
    while (total < max_total_dim) {
        Piece p;
        p.degree = uniform(rng, lo, hi - 1);
        p.two_term = uniform(rng, 0, 2) > 0;
        p.scale = nonzero_rat(rng, 2);
        p.level_lo = uniform(rng, 0, max_level);
        p.level_hi = p.two_term ? uniform(rng, p.level_lo, max_level) : p.level_lo;
        int cost = p.two_term ? 2 : 1;
        if (total + cost > max_total_dim) break;
        total += cost;
        int pi = (int)e.pieces.size();
        e.pieces.push_back(p);
        e.gens.push_back({p.degree, dims[p.degree - lo]++, p.level_lo, pi, false});
        if (p.two_term)
            e.gens.push_back({p.degree + 1, dims[p.degree + 1 - lo]++, p.level_hi, pi, true});
    }
    CochainComplex c;
    c.lo = lo;
    c.dims = dims;
    c.d.assign(dims.size(), MatQ());
    for (int k = lo; k <= hi; ++k) c.d[k - lo] = MatQ(c.dim(k + 1), c.dim(k));
    for (size_t g = 0; g + 1 < e.gens.size(); ++g)
        if (e.gens[g].piece == e.gens[g + 1].piece)
            c.d[e.gens[g].deg - lo].at(e.gens[g + 1].idx, e.gens[g].idx) =
                e.pieces[e.gens[g].piece].scale;
    e.complex = c;
    return e;
}

// filtration-preserving invertible change of basis per degree
inline std::vector<MatQ> filtered_conjugators(Rng& rng, const ElementaryComplex& e) {
    std::vector<MatQ> out;
    for (int k = e.lo; k <= e.hi; ++k) {
        int n = e.dim(k);
        std::vector<int> lvl(n, 0), order(n);
        for (auto& g : e.gens)
            if (g.deg == k) lvl[g.idx] = g.level;
        MatQ A = MatQ::identity(n);  // strictly level-raising part
        MatQ B = MatQ::identity(n);  // unit-triangular within a level
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (lvl[i] > lvl[j] && uniform(rng, 0, 2) == 0) A.at(i, j) = small_rat(rng, 2);
                if (lvl[i] == lvl[j] && i > j && uniform(rng, 0, 2) == 0)
                    B.at(i, j) = small_rat(rng, 2);
            }
        out.push_back(A * B);
    }
    return out;
}

inline MatQ inverse_of(const MatQ& m) {
    auto inv = solve(m, MatQ::identity(m.rows));
    return *inv;
}

inline FilteredCochainComplex random_filtered_complex(Rng& rng, int lo, int hi,
                                                      int max_total_dim, int max_level) {
    ElementaryComplex e = random_elementary(rng, lo, hi, max_total_dim, max_level);
    std::vector<MatQ> P = filtered_conjugators(rng, e);
    auto Pat = [&](int k) {
        return (k < e.lo || k > e.hi) ? MatQ::identity(e.dim(k)) : P[k - e.lo];
    };

    CochainComplex c = e.complex;
    for (int k = e.lo; k < e.hi; ++k)
        c.d[k - e.lo] = Pat(k + 1) * e.complex.d_at(k) * inverse_of(Pat(k));

    FilteredCochainComplex f;
    f.base = c;
    f.min_level = 0;
    f.max_level = max_level;
    f.filt.assign(max_level + 1, {});
    for (int l = 0; l <= max_level; ++l)
        for (int k = e.lo; k <= e.hi; ++k) {
            std::vector<int> cols;
            for (auto& g : e.gens)
                if (g.deg == k && g.level >= l) cols.push_back(g.idx);
            MatQ m(c.dim(k), (int)cols.size());
            for (size_t j = 0; j < cols.size(); ++j) m.at(cols[j], (int)j) = 1;
            f.filt[l].push_back(column_basis(Pat(k) * m));
        }
    return f;
}

inline CochainComplex random_complex(Rng& rng, int lo, int hi, int max_total_dim) {
    return random_filtered_complex(rng, lo, hi, max_total_dim, 1).base;
}

// 0 -> A -> A + C -> C -> 0 with a random compatible gluing map.
struct RandomSes {
    CochainComplex A, B, C;
    ChainMap incl, proj;
};

inline RandomSes random_ses(Rng& rng, int lo, int hi, int dim_a, int dim_c) {
    RandomSes s;
    s.A = random_complex(rng, lo, hi, dim_a);
    s.C = random_complex(rng, lo, hi, dim_c);
    // glue h_k : C^k -> A^{k+1} with d_A h + h d_C = 0, sampled from the
    // exact solution space of the coupled linear system
    int nvar = 0;
    std::vector<int> offset;
    for (int k = lo; k <= hi; ++k) {
        offset.push_back(nvar);
        nvar += s.A.dim(k + 1) * s.C.dim(k);
    }
    auto var = [&](int k, int i, int j) { return offset[k - lo] + i * s.C.dim(k) + j; };
    std::vector<std::vector<Rat>> rows;
    for (int k = lo; k <= hi; ++k) {
        MatQ dA = s.A.d_at(k + 1), dC = s.C.d_at(k);
        int nr = s.A.dim(k + 2), nc = s.C.dim(k);
        for (int r = 0; r < nr; ++r)
            for (int cidx = 0; cidx < nc; ++cidx) {
                std::vector<Rat> row(nvar);
                for (int i = 0; i < s.A.dim(k + 1); ++i)
                    if (dA.at(r, i) != 0) row[var(k, i, cidx)] += dA.at(r, i);
                if (k + 1 <= hi)
                    for (int j = 0; j < s.C.dim(k + 1); ++j)
                        if (dC.at(j, cidx) != 0) row[var(k + 1, r, j)] += dC.at(j, cidx);
                rows.push_back(std::move(row));
            }
    }
    MatQ L((int)rows.size(), nvar);
    for (size_t r = 0; r < rows.size(); ++r)
        for (int cidx = 0; cidx < nvar; ++cidx) L.at((int)r, cidx) = rows[r][cidx];
    MatQ K = nvar > 0 ? kernel_basis(L) : MatQ(0, 0);
    std::vector<Rat> h(nvar);
    for (int j = 0; j < K.cols; ++j) {
        Rat coef = small_rat(rng, 1);
        if (coef == 0) continue;
        for (int i = 0; i < nvar; ++i) h[i] += coef * K.at(i, j);
    }

    CochainComplex B;
    B.lo = lo;
    for (int k = lo; k <= hi; ++k) B.dims.push_back(s.A.dim(k) + s.C.dim(k));
    B.d.assign(B.dims.size(), MatQ());
    for (int k = lo; k <= hi; ++k) {
        MatQ D(B.dim(k + 1), B.dim(k));
        MatQ dA = s.A.d_at(k), dC = s.C.d_at(k);
        for (int i = 0; i < dA.rows; ++i)
            for (int j = 0; j < dA.cols; ++j) D.at(i, j) = dA.at(i, j);
        for (int i = 0; i < dC.rows; ++i)
            for (int j = 0; j < dC.cols; ++j) D.at(s.A.dim(k + 1) + i, s.A.dim(k) + j) = dC.at(i, j);
        for (int i = 0; i < s.A.dim(k + 1); ++i)
            for (int j = 0; j < s.C.dim(k); ++j) D.at(i, s.A.dim(k) + j) = h[var(k, i, j)];
        B.d[k - lo] = D;
    }
    B.validate();
    s.B = B;

    ChainMap incl{s.A, B, {}, lo};
    ChainMap proj{B, s.C, {}, lo};
    for (int k = lo; k <= hi; ++k) {
        MatQ I(B.dim(k), s.A.dim(k));
        for (int i = 0; i < s.A.dim(k); ++i) I.at(i, i) = 1;
        incl.f.push_back(I);
        MatQ Pr(s.C.dim(k), B.dim(k));
        for (int i = 0; i < s.C.dim(k); ++i) Pr.at(i, s.A.dim(k) + i) = 1;
        proj.f.push_back(Pr);
    }
    s.incl = incl;
    s.proj = proj;
    return s;
}

// Random NCD descriptor: every stratum model is a conjugated copy of one
// elementary complex T; Gy components are scalar multiples of a single
// degree +2 chain map of T, so all commutation constraints hold exactly.
inline NcdDescriptor random_ncd(Rng& rng, int n_components) {
    ElementaryComplex T = random_elementary(rng, -2, 2, uniform(rng, 3, 6), 0);

    // degree +2 chain map Psi: same-shape piece pairs two degrees apart
    int ndeg = T.hi - T.lo + 1;
    std::vector<MatQ> psi(ndeg);
    for (int k = T.lo; k <= T.hi; ++k) psi[k - T.lo] = MatQ(T.dim(k + 2), T.dim(k));
    for (size_t a = 0; a < T.pieces.size(); ++a)
        for (size_t b = 0; b < T.pieces.size(); ++b) {
            const Piece& pa = T.pieces[a];
            const Piece& pb = T.pieces[b];
            if (pb.degree != pa.degree + 2 || pb.two_term != pa.two_term) continue;
            Rat c = small_rat(rng, 2);
            if (c == 0) continue;
            int sa = -1, sb = -1, ta = -1, tb = -1;
            for (auto& g : T.gens) {
                if (g.piece == (int)a) (g.is_target ? ta : sa) = g.idx;
                if (g.piece == (int)b) (g.is_target ? tb : sb) = g.idx;
            }
            psi[pa.degree - T.lo].at(sb, sa) += c;
            if (pa.two_term) {
                // chain condition fixes the target entry
                psi[pa.degree + 1 - T.lo].at(tb, ta) += c * pb.scale / pa.scale;
            }
        }

    NcdDescriptor ncd;
    ncd.n_components = n_components;
    // random downward-closed nonempty strata: components always nonempty
    for (int i = 1; i <= n_components; ++i) ncd.nonempty.insert(1u << (i - 1));
    for (MultiIndex I = 1; I < (1u << n_components); ++I) {
        if (multi_size(I) < 2) continue;
        bool all_sub = true;
        for (int i = 1; i <= n_components; ++i)
            if ((I & (1u << (i - 1))) && multi_size(I) > 1) {
                MultiIndex J = I & ~(1u << (i - 1));
                if (J != 0 && ncd.nonempty.count(J) == 0) all_sub = false;
            }
        if (all_sub && uniform(rng, 0, 2) > 0) ncd.nonempty.insert(I);
    }

    std::vector<Rat> gamma(n_components + 1), tau(n_components + 1);
    for (int i = 0; i <= n_components; ++i) {
        gamma[i] = nonzero_rat(rng, 2);
        tau[i] = nonzero_rat(rng, 2);
    }

    // conjugate each stratum copy separately
    std::map<MultiIndex, std::vector<MatQ>> conj, conj_inv;
    auto make_conj = [&](MultiIndex I) {
        std::vector<MatQ> P = filtered_conjugators(rng, T);
        std::vector<MatQ> Pi;
        for (auto& m : P) Pi.push_back(inverse_of(m));
        conj[I] = P;
        conj_inv[I] = Pi;
        CochainComplex c = T.complex;
        for (int k = T.lo; k < T.hi; ++k)
            c.d[k - T.lo] = P[k + 1 - T.lo] * T.complex.d_at(k) * Pi[k - T.lo];
        ncd.models[I] = c;
    };
    make_conj(0);
    for (MultiIndex I : ncd.nonempty) make_conj(I);

    auto Pat = [&](MultiIndex I, int k) {
        if (k < T.lo || k > T.hi) return MatQ::identity(T.dim(k));
        return conj[I][k - T.lo];
    };
    auto Pinv = [&](MultiIndex I, int k) {
        if (k < T.lo || k > T.hi) return MatQ::identity(T.dim(k));
        return conj_inv[I][k - T.lo];
    };

    for (MultiIndex I : ncd.nonempty)
        for (int i = 1; i <= n_components; ++i) {
            if (!(I & (1u << (i - 1)))) continue;
            MultiIndex J = I & ~(1u << (i - 1));
            if (J != 0 && ncd.nonempty.count(J) == 0) continue;
            std::map<int, MatQ> comp;
            Rat scale = gamma[i] * tau[multi_size(I)];
            for (int m = T.lo; m <= T.hi; ++m) {
                MatQ raw = scale * psi[m - T.lo];
                comp[m] = Pat(J, m + 2) * raw * Pinv(I, m);
            }
            ncd.gysin_components[{I, i}] = comp;
        }
    return ncd;
}

}  // namespace reglab::testsupport

#endif
