#include "reglab/gysin.hpp"

#include "reglab/errors.hpp"
#include "reglab/json_io.hpp"

namespace reglab {

int multi_size(MultiIndex I) { return __builtin_popcount(I); }

int position_in(int i, MultiIndex J) {
    // 1-based position of i inside sorted(J u {i})
    MultiIndex below = J & ((1u << (i - 1)) - 1u);
    return 1 + __builtin_popcount(below);
}

std::string multi_to_string(MultiIndex I) {
    std::string s;
    for (int i = 1; i <= 32; ++i)
        if (I & (1u << (i - 1))) s += std::to_string(i);
    return s.empty() ? "0" : s;
}

MultiIndex multi_from_string(const std::string& s) {
    if (s == "0" || s.empty()) return 0;
    MultiIndex I = 0;
    for (char c : s) {
        if (c < '1' || c > '9') throw ParseError("bad multi-index '" + s + "'");
        I |= 1u << (c - '1');
    }
    return I;
}

const CochainComplex& NcdDescriptor::model(MultiIndex I) const {
    static CochainComplex empty{0, {0}, {MatQ(0, 0)}};
    auto it = models.find(I);
    if (it == models.end()) return empty;
    return it->second;
}

MatQ NcdDescriptor::gy_component(MultiIndex I, int i, int m) const {
    const CochainComplex& src = model(I);
    const CochainComplex& dst = model(I & ~(1u << (i - 1)));
    auto it = gysin_components.find({I, i});
    if (it == gysin_components.end()) return MatQ(dst.dim(m + 2), src.dim(m));
    auto jt = it->second.find(m);
    if (jt == it->second.end()) return MatQ(dst.dim(m + 2), src.dim(m));
    return jt->second;
}

void NcdDescriptor::validate() const {
    for (MultiIndex I : nonempty) {
        if (I == 0 || (int)I >= (1 << n_components))
            throw InvalidComplex("stratum index out of range");
        // downward closure: removing one component keeps the stratum nonempty
        for (int i = 1; i <= n_components; ++i) {
            MultiIndex J = I & ~(1u << (i - 1));
            if (J != 0 && (I & (1u << (i - 1))) && nonempty.count(J) == 0)
                throw InvalidComplex("strata not downward closed at " + multi_to_string(I));
        }
    }
    for (auto& [I, c] : models) {
        if (!stratum_nonempty(I)) throw InvalidComplex("model given for empty stratum");
        c.validate();
    }
    // each Gy component is a degree +2 chain map
    for (auto& [key, per_deg] : gysin_components) {
        auto [I, i] = key;
        if (!(I & (1u << (i - 1)))) throw InvalidComplex("Gy component index not in stratum");
        const CochainComplex& src = model(I);
        const CochainComplex& dst = model(I & ~(1u << (i - 1)));
        for (int m = src.lo - 1; m <= src.hi(); ++m) {
            MatQ fm = gy_component(I, i, m);
            MatQ fm1 = gy_component(I, i, m + 1);
            if (fm.rows != dst.dim(m + 2) || fm.cols != src.dim(m))
                throw InvalidComplex("Gy component shape at " + multi_to_string(I));
            if (!(dst.d_at(m + 2) * fm - fm1 * src.d_at(m)).is_zero())
                throw InvalidComplex("Gy component not a chain map at " + multi_to_string(I));
        }
    }
}

static BlockLayout level_layout(const NcdDescriptor& ncd, int level, int m) {
    BlockLayout lay;
    if (level == 0) {
        lay.indices = {0};
        lay.offset[0] = 0;
        return lay;
    }
    int off = 0;
    for (MultiIndex I = 1; I < (1u << ncd.n_components); ++I) {
        if (multi_size(I) != level || !ncd.stratum_nonempty(I)) continue;
        lay.indices.push_back(I);
        lay.offset[I] = off;
        off += ncd.model(I).dim(m);
    }
    return lay;
}

GysinComplex build_gysin(const NcdDescriptor& ncd, int p) {
    ncd.validate();
    const int N = ncd.n_components;
    // b-range from the model degree ranges: b = m - 2p - 2a with a = -level
    int blo = 1 << 30, bhi = -(1 << 30);
    for (int level = 0; level <= N; ++level) {
        for (MultiIndex I = 0; I < (1u << N); ++I) {
            if (multi_size(I) != level || !ncd.stratum_nonempty(I)) continue;
            if (I != 0 && ncd.models.count(I) == 0) continue;
            const CochainComplex& c = ncd.model(I);
            blo = std::min(blo, c.lo - 2 * p + 2 * level);
            bhi = std::max(bhi, c.hi() - 2 * p + 2 * level);
        }
    }
    if (blo > bhi) { blo = 0; bhi = 0; }

    GysinComplex g;
    g.ncd = ncd;
    g.p = p;
    DoubleComplex& dc = g.grid;
    dc.alo = -N;
    dc.blo = blo;
    dc.na = N + 1;
    dc.nb = bhi - blo + 1;
    dc.resize_grid();

    auto deg_of = [&](int a, int b) { return 2 * p + 2 * a + b; };

    for (int a = -N; a <= 0; ++a)
        for (int b = blo; b <= bhi; ++b) {
            int m = deg_of(a, b);
            BlockLayout lay = level_layout(ncd, -a, m);
            int n = 0;
            for (MultiIndex I : lay.indices) n += ncd.model(I).dim(m);
            dc.set_dim(a, b, n);
        }

    for (int a = -N; a <= 0; ++a)
        for (int b = blo; b <= bhi; ++b) {
            int m = deg_of(a, b);
            // vertical: block diagonal model differential
            BlockLayout src = level_layout(ncd, -a, m);
            BlockLayout dst_v = level_layout(ncd, -a, m + 1);
            MatQ V(dc.dim(a, b + 1), dc.dim(a, b));
            for (MultiIndex I : src.indices) {
                MatQ d = ncd.model(I).d_at(m);
                int co = src.offset.at(I);
                int ro = dst_v.offset.count(I) ? dst_v.offset.at(I) : 0;
                for (int i = 0; i < d.rows; ++i)
                    for (int j = 0; j < d.cols; ++j) V.at(ro + i, co + j) = d.at(i, j);
            }
            dc.set_v(a, b, V);
            if (a == 0) continue;
            // horizontal: signed Gysin sum into level (-a - 1) at degree m+2
            BlockLayout dst_h = level_layout(ncd, -a - 1, m + 2);
            MatQ H(dc.dim(a + 1, b), dc.dim(a, b));
            for (MultiIndex I : src.indices) {
                int co = src.offset.at(I);
                for (int i = 1; i <= N; ++i) {
                    if (!(I & (1u << (i - 1)))) continue;
                    MultiIndex J = I & ~(1u << (i - 1));
                    if (!ncd.stratum_nonempty(J)) continue;
                    if (dst_h.offset.count(J) == 0) continue;
                    MatQ f = ncd.gy_component(I, i, m);
                    Rat sign = (position_in(i, J) % 2 == 0) ? rat(1) : rat(-1);
                    int ro = dst_h.offset.at(J);
                    for (int r = 0; r < f.rows; ++r)
                        for (int cidx = 0; cidx < f.cols; ++cidx)
                            H.at(ro + r, co + cidx) += sign * f.at(r, cidx);
                }
            }
            dc.set_h(a, b, H);
        }

    // Gy with the position signs must square to zero before totalizing
    for (int a = -N; a < 0; ++a)
        for (int b = blo; b <= bhi; ++b)
            if (!(dc.h_at(a + 1, b) * dc.h_at(a, b)).is_zero())
                throw GySquareNonzero("at column " + std::to_string(a) + ", b=" + std::to_string(b));

    g.tot = totalize(dc);
    return g;
}

FilteredCochainComplex weight_filtration(const GysinComplex& g) {
    return column_filtration(g.grid, g.tot);
}

ResidueResult higher_residue(const GysinComplex& g, const WeightGradedClass& cls, int k) {
    if (cls.a != -k)
        throw WrongColumn("class lives in column " + std::to_string(cls.a) +
                          ", depth " + std::to_string(k) + " requested");
    const int N = g.ncd.n_components;

    // representative of the class inside the total complex
    FilteredCochainComplex wf = weight_filtration(g);
    PageComputer pc(wf);
    PageEntry e = pc.entry(pc.stable_r(), cls.a, cls.a + cls.b);
    if (cls.coords.rows != e.dim) throw WrongColumn("class coordinate size mismatch");
    MatQ z = e.reps * cls.coords;

    // depth-k quotient grid: columns a <= -k, reindexed by a' = a + k
    ResidueResult res;
    res.depth = k;
    res.b = cls.b;
    GysinComplex& q = res.quotient;
    q.ncd = g.ncd;
    q.p = g.p - k;
    DoubleComplex& sub = q.grid;
    sub.alo = -(N - k);
    sub.blo = g.grid.blo;
    sub.na = N - k + 1;
    sub.nb = g.grid.nb;
    sub.resize_grid();
    for (int a2 = sub.alo; a2 <= 0; ++a2)
        for (int b = sub.blo; b <= sub.bhi(); ++b) {
            sub.set_dim(a2, b, g.grid.dim(a2 - k, b));
            sub.set_v(a2, b, g.grid.v_at(a2 - k, b));
            if (a2 < 0) sub.set_h(a2, b, g.grid.h_at(a2 - k, b));
        }
    q.tot = totalize(sub);

    // project the representative onto column -k and read it in the new grid
    MatQ zblock = g.tot.project(-k, cls.b, z);
    MatQ zq = q.tot.embed(0, cls.b, zblock);

    FilteredCochainComplex wq = weight_filtration(q);
    PageComputer pq(wq);
    PageEntry eq = pq.entry(pq.stable_r(), 0, cls.b);
    MatQ den = pq.denominator(pq.stable_r(), 0, cls.b);
    auto X = express_modulo(zq, eq.reps, den);
    if (!X) throw WrongColumn("residue image not expressible (invalid class data)");
    res.coords = *X;
    res.target_dim = eq.dim;
    return res;
}

std::vector<SpectralSequencePage> coniveau_pages(const NcdDescriptor& ncd, int p, int r_max) {
    const CochainComplex& x = ncd.model(0);
    if (ncd.coniveau.empty()) throw NotAFiltration("no coniveau data supplied");
    int kmax = 0;
    for (auto& [k, _] : ncd.coniveau) kmax = std::max(kmax, k);

    FilteredCochainComplex f;
    f.base = shift(x, 2 * p);  // grid degree k carries C^{2p+k}
    f.min_level = 0;
    f.max_level = kmax;
    f.filt.assign(kmax + 1, {});
    for (int level = 0; level <= kmax; ++level) {
        for (int m = x.lo; m <= x.hi(); ++m) {
            MatQ span;
            if (level == 0) {
                span = MatQ::identity(x.dim(m));
            } else {
                auto it = ncd.coniveau.find(level);
                span = MatQ(x.dim(m), 0);
                if (it != ncd.coniveau.end()) {
                    auto jt = it->second.find(m);
                    if (jt != it->second.end()) span = jt->second;
                }
            }
            f.filt[level].push_back(span);
        }
    }
    // N^{k+1} inside N^k
    for (int level = 0; level < kmax; ++level)
        for (int m = x.lo; m <= x.hi(); ++m)
            if (!span_contains(f.filt[level][m - x.lo], f.filt[level + 1][m - x.lo]))
                throw NotAFiltration("N^" + std::to_string(level + 1) + " not inside N^" +
                                     std::to_string(level));
    try {
        f.validate();
    } catch (const NotFiltered& e) {
        throw NotAFiltration(e.what());
    }
    return spectral_pages(f, r_max);
}

NcdDescriptor ncd_from_json(const nlohmann::json& j) {
    NcdDescriptor ncd;
    ncd.n_components = j.at("components").get<int>();
    if (j.contains("strata"))
        for (auto& s : j.at("strata")) ncd.nonempty.insert(multi_from_string(s.get<std::string>()));
    for (auto& [key, val] : j.at("models").items())
        ncd.models[multi_from_string(key)] = complex_from_json(val);
    if (j.contains("gysin"))
        for (auto& [key, val] : j.at("gysin").items()) {
            auto arrow = key.find("->");
            if (arrow == std::string::npos) throw ParseError("gysin key must be 'I->J': " + key);
            MultiIndex I = multi_from_string(key.substr(0, arrow));
            MultiIndex J = multi_from_string(key.substr(arrow + 2));
            MultiIndex diff = I & ~J;
            if (multi_size(diff) != 1 || (J & ~I) != 0)
                throw ParseError("gysin key must remove exactly one component: " + key);
            int i = __builtin_ctz(diff) + 1;
            const CochainComplex& src = ncd.model(I);
            const CochainComplex& dst = ncd.model(J);
            std::map<int, MatQ> per_deg;
            for (auto& [mkey, mat] : val.items()) {
                int m = std::stoi(mkey);
                per_deg[m] = matrix_from_json(mat, dst.dim(m + 2), src.dim(m));
            }
            ncd.gysin_components[{I, i}] = per_deg;
        }
    if (j.contains("coniveau"))
        for (auto& [key, val] : j.at("coniveau").items()) {
            int level = std::stoi(key);
            const CochainComplex& x = ncd.model(0);
            for (auto& [mkey, mat] : val.items()) {
                int m = std::stoi(mkey);
                int cols2 = mat.empty() ? 0 : (int)mat[0].size();
                ncd.coniveau[level][m] = matrix_from_json(mat, x.dim(m), cols2);
            }
        }
    return ncd;
}

}  // namespace reglab
