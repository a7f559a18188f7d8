#include "reglab/double_complex.hpp"

#include <string>

#include "reglab/errors.hpp"

namespace reglab {

static std::string bidx(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

int DoubleComplex::dim(int a, int b) const {
    if (!in_range(a, b)) return 0;
    return dims[(size_t)(a - alo) * nb + (b - blo)];
}

MatQ DoubleComplex::h_at(int a, int b) const {
    size_t idx = (size_t)(a - alo) * nb + (b - blo);
    if (!in_range(a, b) || a == ahi() || idx >= horiz.size())
        return MatQ(dim(a + 1, b), dim(a, b));
    const MatQ& m = horiz[idx];
    if (m.rows == 0 && m.cols == 0) return MatQ(dim(a + 1, b), dim(a, b));
    return m;
}

MatQ DoubleComplex::v_at(int a, int b) const {
    size_t idx = (size_t)(a - alo) * nb + (b - blo);
    if (!in_range(a, b) || b == bhi() || idx >= vert.size())
        return MatQ(dim(a, b + 1), dim(a, b));
    const MatQ& m = vert[idx];
    if (m.rows == 0 && m.cols == 0) return MatQ(dim(a, b + 1), dim(a, b));
    return m;
}

void DoubleComplex::validate() const {
    for (int a = alo; a <= ahi(); ++a)
        for (int b = blo; b <= bhi(); ++b) {
            MatQ h = h_at(a, b), v = v_at(a, b);
            if (h.rows != dim(a + 1, b) || h.cols != dim(a, b))
                throw InvalidComplex("horizontal map at " + bidx(a, b) + " has wrong shape");
            if (v.rows != dim(a, b + 1) || v.cols != dim(a, b))
                throw InvalidComplex("vertical map at " + bidx(a, b) + " has wrong shape");
            if (!(h_at(a + 1, b) * h).is_zero())
                throw InvalidComplex("row not a complex at " + bidx(a, b));
            if (!(v_at(a, b + 1) * v).is_zero())
                throw InvalidComplex("column not a complex at " + bidx(a, b));
            if (!(v_at(a + 1, b) * h - h_at(a, b + 1) * v).is_zero())
                throw SquaresDoNotCommute("at " + bidx(a, b));
        }
}

MatQ Totalization::embed(int a, int b, const MatQ& v) const {
    int k = a + b;
    int n = total.dim(k);
    auto it = offset.find({a, b});
    MatQ out(n, v.cols);
    if (it == offset.end()) return out;
    for (int i = 0; i < v.rows; ++i)
        for (int j = 0; j < v.cols; ++j) out.at(it->second + i, j) = v.at(i, j);
    return out;
}

MatQ Totalization::project(int a, int b, const MatQ& v) const {
    auto ito = offset.find({a, b});
    auto itd = block_dim.find({a, b});
    int bd = itd == block_dim.end() ? 0 : itd->second;
    MatQ out(bd, v.cols);
    if (ito == offset.end()) return out;
    for (int i = 0; i < bd; ++i)
        for (int j = 0; j < v.cols; ++j) out.at(i, j) = v.at(ito->second + i, j);
    return out;
}

Totalization totalize(const DoubleComplex& dc) {
    dc.validate();
    Totalization t;
    t.alo = dc.alo;
    t.blo = dc.blo;
    int klo = dc.alo + dc.blo;
    int khi = dc.ahi() + dc.bhi();
    CochainComplex c;
    c.lo = klo;
    for (int k = klo; k <= khi; ++k) {
        int n = 0;
        for (int a = dc.alo; a <= dc.ahi(); ++a) {
            int b = k - a;
            if (!dc.in_range(a, b)) continue;
            t.offset[{a, b}] = n;
            t.block_dim[{a, b}] = dc.dim(a, b);
            n += dc.dim(a, b);
        }
        c.dims.push_back(n);
    }
    c.d.resize(c.dims.size());
    for (int k = klo; k <= khi; ++k) {
        MatQ D(c.dim(k + 1), c.dim(k));
        for (int a = dc.alo; a <= dc.ahi(); ++a) {
            int b = k - a;
            if (!dc.in_range(a, b)) continue;
            int co = t.offset[{a, b}];
            MatQ v = dc.v_at(a, b);
            if (dc.in_range(a, b + 1)) {
                int ro = t.offset[{a, b + 1}];
                for (int i = 0; i < v.rows; ++i)
                    for (int j = 0; j < v.cols; ++j) D.at(ro + i, co + j) = v.at(i, j);
            }
            MatQ h = dc.h_at(a, b);
            if (dc.in_range(a + 1, b)) {
                int ro = t.offset[{a + 1, b}];
                Rat sign = (b % 2 == 0) ? rat(1) : rat(-1);
                for (int i = 0; i < h.rows; ++i)
                    for (int j = 0; j < h.cols; ++j) D.at(ro + i, co + j) = sign * h.at(i, j);
            }
        }
        c.d[k - klo] = D;
    }
    c.validate();  // D.D = 0, guaranteed by commuting squares
    t.total = c;
    return t;
}

FilteredCochainComplex column_filtration(const DoubleComplex& dc, const Totalization& t) {
    FilteredCochainComplex f;
    f.base = t.total;
    f.min_level = dc.alo;
    f.max_level = dc.ahi();
    f.filt.assign(dc.na, {});
    for (int l = dc.alo; l <= dc.ahi(); ++l) {
        for (int k = t.total.lo; k <= t.total.hi(); ++k) {
            std::vector<int> cols;
            for (int a = std::max(l, dc.alo); a <= dc.ahi(); ++a) {
                int b = k - a;
                if (!dc.in_range(a, b)) continue;
                int off = t.offset.at({a, b});
                for (int i = 0; i < dc.dim(a, b); ++i) cols.push_back(off + i);
            }
            MatQ m(t.total.dim(k), (int)cols.size());
            for (size_t j = 0; j < cols.size(); ++j) m.at(cols[j], (int)j) = 1;
            f.filt[l - dc.alo].push_back(m);
        }
    }
    return f;
}

}  // namespace reglab
