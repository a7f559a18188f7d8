#include <doctest.h>

#include "reglab/double_complex.hpp"
#include "reglab/errors.hpp"
#include "support/random_complexes.hpp"

using namespace reglab;
using namespace reglab::testsupport;

static CochainComplex one_space(int deg, int dim) {
    CochainComplex c;
    c.lo = deg;
    c.dims = {dim};
    c.d = {MatQ(0, dim)};
    return c;
}

TEST_CASE("cone of the identity is acyclic") {
    CochainComplex q = one_space(0, 1);
    ChainMap id = identity_map(q);
    CochainComplex c = cone(id);
    for (int k = c.lo; k <= c.hi(); ++k) CHECK(c.cohomology_dim(k) == 0);
}

TEST_CASE("cone of 0 -> N has the cohomology of N") {
    Rng rng(7);
    CochainComplex n = random_complex(rng, 0, 3, 8);
    CochainComplex z = one_space(0, 0);
    ChainMap mu = zero_map(z, n);
    CochainComplex c = cone(mu);
    for (int k = n.lo; k <= n.hi(); ++k)
        CHECK(c.cohomology_dim(k) == n.cohomology_dim(k));
}

TEST_CASE("cone of a rank-1 map Q^2 -> Q^2 in degree 0") {
    CochainComplex m = one_space(0, 2), n = one_space(0, 2);
    ChainMap mu{m, n, {MatQ(2, 2, {1, 0, 0, 0})}, 0};
    CochainComplex c = cone(mu);
    CHECK(c.cohomology_dim(-1) == 1);
    CHECK(c.cohomology_dim(0) == 1);
}

TEST_CASE("cone rejects non-chain maps") {
    CochainComplex a;
    a.lo = 0;
    a.dims = {1, 1};
    a.d = {MatQ::identity(1), MatQ(0, 1)};
    CochainComplex b = a;
    // constant map that fails to commute with d
    ChainMap bad{a, b, {MatQ::identity(1), MatQ(1, 1)}, 0};
    CHECK_THROWS_AS(cone(bad), NonChainMap);
}

TEST_CASE("truncation: complex concentrated above q dies") {
    CochainComplex c = one_space(3, 4);
    CochainComplex t = truncate(c, 2);
    for (int k = t.lo; k <= t.hi(); ++k) CHECK(t.dim(k) == 0);
}

TEST_CASE("truncation at 0 of an isomorphism complex is zero") {
    CochainComplex c;
    c.lo = 0;
    c.dims = {1, 1};
    c.d = {MatQ::identity(1), MatQ(0, 1)};
    CochainComplex t = truncate(c, 0);
    CHECK(t.dim(0) == 0);
    CHECK(t.cohomology_dim(0) == 0);
}

TEST_CASE("truncation preserves cohomology up to q and kills it above") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        CochainComplex c = random_complex(rng, -1, 3, 10);
        int q = uniform(rng, -1, 3);
        CochainComplex t = truncate(c, q);
        t.validate();
        for (int k = -2; k <= 4; ++k) {
            int expect = k <= q ? c.cohomology_dim(k) : 0;
            CHECK(t.cohomology_dim(k) == expect);
        }
    }
}

TEST_CASE("totalize: single entry concentrates in one degree") {
    DoubleComplex dc;
    dc.alo = -1;
    dc.blo = 2;
    dc.na = 1;
    dc.nb = 1;
    dc.resize_grid();
    dc.set_dim(-1, 2, 3);
    Totalization t = totalize(dc);
    CHECK(t.total.dim(1) == 3);
    CHECK(t.total.cohomology_dim(1) == 3);
}

TEST_CASE("totalize: 2x2 grid of isomorphisms is acyclic") {
    DoubleComplex dc;
    dc.alo = 0;
    dc.blo = 0;
    dc.na = 2;
    dc.nb = 2;
    dc.resize_grid();
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) dc.set_dim(a, b, 2);
    MatQ m(2, 2, {1, 1, 0, 1});
    dc.set_h(0, 0, m);
    dc.set_h(0, 1, m);
    dc.set_v(0, 0, m);
    dc.set_v(1, 0, m);
    Totalization t = totalize(dc);
    for (int k = 0; k <= 2; ++k) CHECK(t.total.cohomology_dim(k) == 0);
}

TEST_CASE("totalize: 3x3 zero-map grid has antidiagonal-sum dimensions") {
    DoubleComplex dc;
    dc.alo = -2;
    dc.blo = -2;
    dc.na = 3;
    dc.nb = 3;
    dc.resize_grid();
    int d[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    for (int a = -2; a <= 0; ++a)
        for (int b = -2; b <= 0; ++b) dc.set_dim(a, b, d[a + 2][b + 2]);
    Totalization t = totalize(dc);
    for (int k = -4; k <= 0; ++k) {
        int expect = 0;
        for (int a = -2; a <= 0; ++a) {
            int b = k - a;
            if (b >= -2 && b <= 0) expect += d[a + 2][b + 2];
        }
        CHECK(t.total.dim(k) == expect);
    }
}

TEST_CASE("totalize rejects non-commuting squares") {
    DoubleComplex dc;
    dc.alo = 0;
    dc.blo = 0;
    dc.na = 2;
    dc.nb = 2;
    dc.resize_grid();
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b) dc.set_dim(a, b, 1);
    dc.set_h(0, 0, MatQ::identity(1));
    dc.set_h(0, 1, MatQ::identity(1));
    dc.set_v(0, 0, MatQ::identity(1));
    dc.set_v(1, 0, 2 * MatQ::identity(1));
    CHECK_THROWS_AS(totalize(dc), SquaresDoNotCommute);
}

TEST_CASE("decalee of the one-jump filtration is the kernel truncation pattern") {
    Rng rng(23);
    CochainComplex c = random_complex(rng, -2, 1, 9);
    FilteredCochainComplex f = trivial_filtration(c);
    FilteredCochainComplex g = decalee(f);
    for (int m = c.lo; m <= c.hi(); ++m) {
        // Dec^0 at degree m: everything below 0, ker(d) at 0, nothing above
        MatQ w0 = g.F(0, m);
        if (m < 0) CHECK(rank(w0) == c.dim(m));
        if (m == 0) CHECK(rank(w0) == kernel_basis(c.d_at(0)).cols);
        if (m > 0) CHECK(rank(w0) == 0);
    }
}

TEST_CASE("decalee filtrands contain differentials appropriately") {
    Rng rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        FilteredCochainComplex f = random_filtered_complex(rng, -1, 2, 10, 3);
        f.validate();
        FilteredCochainComplex g = decalee(f);
        g.validate();  // containment + d-stability checked exactly
        // every boundary lying in 'W^{l+m} K^m is already in Dec^l K^m
        for (int l = g.min_level; l <= g.max_level; ++l)
            for (int m = f.base.lo; m <= f.base.hi(); ++m) {
                MatQ deep_bd = span_intersect(column_basis(f.base.d_at(m - 1)), f.F(l + m, m));
                CHECK(span_contains(g.F(l, m), deep_bd));
            }
    }
}
