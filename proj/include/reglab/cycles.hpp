#ifndef REGLAB_CYCLES_HPP
#define REGLAB_CYCLES_HPP

#include <optional>
#include <string>
#include <vector>

#include "reglab/mpoly.hpp"

namespace reglab {

enum class BaseKind { Point, Curve, Surface };

// Excluded locus of the open base: a parameter value on curves, a parameter
// line {var = value} on surfaces.
struct ExcludedLocus {
    int var = 0;
    PValue value;
};

// Parametrized cubical precycle component: a map from the base (0, 1 or 2
// parameters) to X x square^n, cube coordinates in P^1 \ {1} with facets at
// 0 and infinity. Components produced by facet pullbacks may live over an
// extension K[theta]/(m); the point base itself is carried by that field.
struct ParamCycle {
    BaseKind kind = BaseKind::Curve;
    int nparams = 1;
    std::shared_ptr<const ExtField> field;  // null: plain cyclotomic scalars
    std::vector<RF> x_coords;
    std::vector<RF> cube_coords;
    Rat multiplicity = Rat(1);
    std::vector<ExcludedLocus> excluded;
    std::string base_label;

    int n() const { return (int)cube_coords.size(); }
    std::string to_string() const;
};

struct CycleChain {
    std::vector<std::pair<ParamCycle, Rat>> terms;
    std::vector<std::string> warnings;

    bool empty_chain() const { return terms.empty(); }
    CycleChain& operator+=(const CycleChain& o);
    friend CycleChain operator*(const Rat& c, const CycleChain& z);
    friend CycleChain operator+(CycleChain a, const CycleChain& b) {
        a += b;
        return a;
    }
    std::string to_string() const;
};

CycleChain chain_of(ParamCycle z, Rat coeff = Rat(1));

/* symbol-graph constructors */

// graph of rational functions over P^1 (parameter t), X-coords optional
ParamCycle symbol_graph_curve(const std::vector<RF>& cube, const std::vector<RF>& x = {},
                              std::string label = "P1");

/* operations */

// del_f^i: solve cube coordinate i = f on the base. 1-based i; f in {0, inf}.
enum class FacetValue { Zero, Infinity };
CycleChain facet_pullback(const ParamCycle& z, int i, FacetValue f);

// del_B = sum_j (-1)^j (del_0^j - del_inf^j), degenerate components dropped
CycleChain boundary(const CycleChain& z);

bool is_degenerate(const ParamCycle& z);

// deterministic sampling-based identity of parametrized components
bool identity_test(const ParamCycle& a, const ParamCycle& b);

// merge identical components; drop zero coefficients; optionally drop
// degenerate components ("modulo degenerate cycles")
CycleChain normal_form(const CycleChain& z, bool drop_degenerate);

struct TameValue {
    ExtElem value;
    bool is_torsion = false;
    int torsion_order = 0;
    bool in_base_field = false;       // residue field is the cyclotomic field
    CycloNum base_value;              // set when in_base_field
};

struct CurvePoint {
    bool at_infinity = false;
    UPoly<CycloNum> modulus;  // monic; ignored when at_infinity
};

TameValue tame_symbol(const RF& f, const RF& g, const CurvePoint& p);

// Z~_{i+1} = Z~_i - pi_i^* del_inf^i Z~_i for i = 1..n
CycleChain normalize(const CycleChain& z);

// pullback along the projection dropping cube slot i (the degenerate
// correction used by normalize)
CycleChain projection_pullback(const CycleChain& z, int i);

CycleChain move_Mi(const CycleChain& w, int i);
CycleChain homotopy_Hi(const CycleChain& w, int i);

/* advisory good-real-position sampling */

struct GoodPositionItem {
    std::string component;
    std::string facet;   // "I=(...) f=..." or "cycle"
    int j = 0;
    std::string status;  // PASS / INCONCLUSIVE / FAIL
    std::string detail;
};

struct GoodPositionReport {
    std::vector<GoodPositionItem> items;
    bool all_pass() const;
    std::string to_string() const;
};

GoodPositionReport good_position_report(const CycleChain& z, unsigned seed_salt = 0);

}  // namespace reglab

#endif
