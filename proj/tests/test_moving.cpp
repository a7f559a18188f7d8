#include <doctest.h>

#include "reglab/cycle_dsl.hpp"
#include "reglab/cycles.hpp"
#include "reglab/errors.hpp"

using namespace reglab;

static CycleChain chain_diff(const CycleChain& a, const CycleChain& b) {
    return normal_form(a + rat(-1) * b, false);
}

static CycleChain facet_of_chain(const CycleChain& z, int i, FacetValue f) {
    CycleChain out;
    for (auto& [comp, c] : z.terms) out += c * facet_pullback(comp, i, f);
    return normal_form(out, false);
}

TEST_CASE("normalize leaves a del_inf-free chain unchanged") {
    // the open base excludes the only pole locus, so no del_inf facets exist
    CycleChain z = parse_cycle_chain("base P1(y) exclude inf\ncycle (1 - y, y)");
    CycleChain nz = normalize(z);
    CHECK(chain_diff(nz, normal_form(z, false)).empty_chain());
}

TEST_CASE("normalize kills all del_inf facets") {
    // pole loci of the coordinates are pairwise disjoint (admissible graphs)
    std::vector<std::string> cases = {
        "base P1(t)\ncycle ((t^2 + 7)/(t + 1), (t - 5)/(t - 3))",
        "base P1(t)\ncycle (t, (t - zeta(3))/(t - 2))",
        "base P1(t)\ncycle ((t^2 + 7)/(t + 1), (t - 5)/(t - 3), (t + 2)/(t - 9))",
    };
    for (auto& s : cases) {
        CycleChain z = parse_cycle_chain(s);
        CycleChain nz = normalize(z);
        int n = z.terms[0].first.n();
        for (int i = 1; i <= n; ++i) {
            CycleChain fi = facet_of_chain(nz, i, FacetValue::Infinity);
            CHECK(fi.empty_chain());
        }
        // the correction differs from the input only by degenerate components
        CycleChain diff = chain_diff(nz, normal_form(z, false));
        for (auto& [comp, c] : diff.terms) CHECK(is_degenerate(comp));
    }
}

TEST_CASE("move facet identities on the spec example") {
    // w = graph of (t, 1-t): del_0^1 w is empty (the remaining coordinate
    // lands at 1), so M_1 w = 0 and the identities hold trivially
    CycleChain w = parse_cycle_chain("base P1(t)\ncycle (t, 1 - t)");
    CycleChain m = move_Mi(w, 1);
    CHECK(m.empty_chain());
    CycleChain f0 = facet_of_chain(w, 1, FacetValue::Zero);
    CHECK(f0.empty_chain());
}

TEST_CASE("move facet identities on nontrivial cycles") {
    std::vector<std::string> cases = {
        "base P1(t)\ncycle (t, zeta(3) - t)",
        "base P1(t)\ncycle (t - 2, (t + 3)/(t - 1))",
        "base P1(t)\ncycle (t, t - 5, 2 - t)",
        "base P1(t)\ncycle ((t - 2)*(t - 3), t + 1, t - 4)",
    };
    for (auto& s : cases) {
        CycleChain w = parse_cycle_chain(s);
        int n = w.terms[0].first.n();
        for (int i = 1; i < n; ++i) {
            CycleChain m = move_Mi(w, i);
            CycleChain lhs = facet_of_chain(m, i, FacetValue::Zero);
            CycleChain mid = facet_of_chain(w, i, FacetValue::Zero);
            CycleChain rhs = facet_of_chain(m, i + 1, FacetValue::Zero);
            CHECK(chain_diff(lhs, mid).empty_chain());
            CHECK(chain_diff(rhs, mid).empty_chain());
        }
    }
}

TEST_CASE("homotopy identity (8.3)") {
    // del_B-closed example: boundary of the chain vanishes, so
    // del_B H_i(w) = (-1)^{i+1} M_i(w) exactly
    std::vector<std::string> closed_cases = {
        "base P1(t)\ncycle (t, zeta(3) - t)",   // del_B = 0 by cancellation
        "base P1(t)\ncycle (t, 5 - t)",
    };
    for (auto& s : closed_cases) {
        CycleChain w = parse_cycle_chain(s);
        CHECK(boundary(w).empty_chain());
        CycleChain h = homotopy_Hi(w, 1);
        CycleChain bh;
        for (auto& [comp, c] : h.terms) bh += c * boundary(chain_of(comp));
        bh = normal_form(bh, true);
        CycleChain m = normal_form(move_Mi(w, 1), true);
        // i = 1: (-1)^{i+1} = +1
        CHECK(chain_diff(bh, m).empty_chain());
    }
}

TEST_CASE("homotopy identity with nonvanishing boundary") {
    // generic curve graph with n = 2: del_B w is a chain of points with a
    // single cube coordinate, too short for H_1, so that term of (8.3) is
    // zero and the identity reads del_B H_1 = (-1)^{1+1} M_1
    CycleChain w = parse_cycle_chain("base P1(t)\ncycle (t - 2, (t + 3)/(t - 1))");
    CHECK(!boundary(w).empty_chain());
    CycleChain h = homotopy_Hi(w, 1);
    CycleChain bh;
    for (auto& [comp, c] : h.terms) bh += c * boundary(chain_of(comp));
    bh = normal_form(bh, true);
    CycleChain m = normal_form(move_Mi(w, 1), true);
    CHECK(chain_diff(bh, m).empty_chain());
}

TEST_CASE("homotopy identity (8.3) with a genuine correction term") {
    // n = 3 graph whose boundary points still carry two cube coordinates:
    // H_1(del_B w) is defined and the full identity is checked exactly
    CycleChain w =
        parse_cycle_chain("base P1(t)\ncycle (t - 2, (t + 3)/(t - 1), (t - 7)/(t + 4))");
    CycleChain db = boundary(w);
    CHECK(!db.empty_chain());
    CycleChain h = homotopy_Hi(w, 1);
    CycleChain bh;
    for (auto& [comp, c] : h.terms) bh += c * boundary(chain_of(comp));
    bh = normal_form(bh, true);
    CycleChain m = normal_form(move_Mi(w, 1), true);
    CycleChain hdb = homotopy_Hi(db, 1);
    CycleChain rhs = normal_form(m + rat(-1) * hdb, true);
    CHECK(chain_diff(bh, rhs).empty_chain());
}

TEST_CASE("trivial move of an empty facet") {
    CycleChain w = parse_cycle_chain("base P1(t)\ncycle (t + 7, 1 - t)");
    // del_0^1 w = point at t = -7 with coordinate 8... nonempty; use slot 2
    // of a cycle whose del_0 facet is empty instead:
    CycleChain w2 = parse_cycle_chain("base P1(t)\ncycle ((t^2 + 7)/(t^2 + 5), t - 1)");
    // t^2 + 7 = 0 has no cyclotomic root but an extension one: facet nonempty.
    // For the genuinely-empty case take a coordinate with constant value:
    CycleChain w3 = parse_cycle_chain("base P1(t)\ncycle (3, t - 1)");
    CycleChain m3 = move_Mi(w3, 1);
    CHECK(m3.empty_chain());
    CycleChain h3 = homotopy_Hi(w3, 1);
    CHECK(h3.empty_chain());
}

TEST_CASE("surface example: xi_4 of the singular-surface scenario is closed") {
    std::string dsl =
        "base hypersurface((P1)^3; x*y*z - (x-1)*(y-1)) exclude x=0, y=0\n"
        "cycle (x, y, z)\n"
        "base surface(t, u) exclude t=0, u=0, u=1, u=inf\n"
        "- cycle (inf, t, 1 - 1/t; 1/u, 1 - 1/(t*u), 1 - u)\n"
        "+ cycle (inf, t, 1 - 1/t; 1/u, 1 - 1/u, 1 - u)\n"
        "+ cycle (t, inf, 1 - 1/t; 1/u, 1 - 1/(t*u), 1 - u)\n"
        "- cycle (t, inf, 1 - 1/t; 1/u, 1 - 1/u, 1 - u)\n";
    CycleChain xi = parse_cycle_chain(dsl);
    REQUIRE(xi.terms.size() == 5);
    CycleChain b = boundary(xi);
    CHECK(b.empty_chain());
    // the uncorrected restriction alone is not closed
    CycleChain z_only = chain_of(xi.terms[0].first);
    CHECK(!boundary(z_only).empty_chain());
}
