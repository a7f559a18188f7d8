#include "reglab/cycles.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "reglab/errors.hpp"

namespace reglab {

static ExtElem one_e() { return ExtElem(CycloNum(rat(1))); }

static RF rf_one(int nvars) { return RF::constant(one_e(), nvars); }

std::string ParamCycle::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case BaseKind::Point: os << "point"; break;
        case BaseKind::Curve: os << "curve"; break;
        case BaseKind::Surface: os << "surface"; break;
    }
    if (field) os << "{mod deg " << field->degree() << "}";
    if (!base_label.empty()) os << "[" << base_label << "]";
    os << " mult=" << multiplicity.get_str();
    os << " X=(";
    for (size_t i = 0; i < x_coords.size(); ++i) os << (i ? ", " : "") << x_coords[i].to_string();
    os << ") cube=(";
    for (size_t i = 0; i < cube_coords.size(); ++i)
        os << (i ? ", " : "") << cube_coords[i].to_string();
    os << ")";
    return os.str();
}

CycleChain& CycleChain::operator+=(const CycleChain& o) {
    for (auto& t : o.terms) terms.push_back(t);
    for (auto& w : o.warnings) warnings.push_back(w);
    return *this;
}

CycleChain operator*(const Rat& c, const CycleChain& z) {
    CycleChain out = z;
    if (c == 0) {
        out.terms.clear();
        return out;
    }
    for (auto& t : out.terms) t.second *= c;
    return out;
}

std::string CycleChain::to_string() const {
    std::ostringstream os;
    if (terms.empty()) return "0";
    for (size_t i = 0; i < terms.size(); ++i)
        os << (i ? "  +  " : "") << terms[i].second.get_str() << " * "
           << terms[i].first.to_string();
    return os.str();
}

CycleChain chain_of(ParamCycle z, Rat coeff) {
    CycleChain c;
    c.terms.push_back({std::move(z), std::move(coeff)});
    return c;
}

ParamCycle symbol_graph_curve(const std::vector<RF>& cube, const std::vector<RF>& x,
                              std::string label) {
    ParamCycle z;
    z.kind = BaseKind::Curve;
    z.nparams = 1;
    z.cube_coords = cube;
    z.x_coords = x;
    z.base_label = std::move(label);
    return z;
}

/* ------------------------- identity and degeneracy ------------------------- */

static void sample_budget_check(int needed) {
    if (needed > 64) throw DegreeBoundExceeded(std::to_string(needed) + " sample points needed");
}

// exact sampling equality of two rational maps in <= 2 parameters: the cross
// polynomial is evaluated at more points than its degree bound
static bool rf_same_by_sampling(const RF& a, const RF& b, int nparams) {
    MPoly cross = a.num * b.den - b.num * a.den;
    if (cross.is_zero()) return true;
    if (nparams == 0) return false;  // nonzero constant
    int d0 = cross.deg_in(0), d1 = cross.deg_in(1);
    sample_budget_check((d0 + 1) * (nparams > 1 ? d1 + 1 : 1));
    for (int i = 0; i <= d0; ++i) {
        MPoly row = cross.subst_const(0, ExtElem(CycloNum(rat(i + 2))));
        if (nparams == 1) {
            if (!row.is_zero()) return false;
            continue;
        }
        for (int j = 0; j <= d1; ++j)
            if (!row.subst_const(1, ExtElem(CycloNum(rat(j + 2)))).is_zero()) return false;
    }
    return true;
}

bool identity_test(const ParamCycle& a, const ParamCycle& b) {
    if (a.kind != b.kind || a.nparams != b.nparams || a.n() != b.n() ||
        a.x_coords.size() != b.x_coords.size())
        return false;
    bool af = a.field != nullptr, bf = b.field != nullptr;
    if (af != bf) return false;
    if (af && !(a.field->modulus() == b.field->modulus())) return false;
    for (size_t i = 0; i < a.cube_coords.size(); ++i)
        if (!rf_same_by_sampling(a.cube_coords[i], b.cube_coords[i], a.nparams)) return false;
    for (size_t i = 0; i < a.x_coords.size(); ++i)
        if (!rf_same_by_sampling(a.x_coords[i], b.x_coords[i], a.nparams)) return false;
    return true;
}

bool is_degenerate(const ParamCycle& z) {
    // a 0-dimensional component cannot factor through a cube projection
    if (z.nparams == 0) return false;
    for (int i = 0; i < z.n(); ++i) {
        const RF& g = z.cube_coords[i];
        if (g.num.is_constant() && g.den.is_constant()) return true;
        for (int j = 0; j < z.nparams; ++j) {
            if (!g.same_function(RF::var(j, z.nparams))) continue;
            bool used_elsewhere = false;
            for (int k = 0; k < z.n(); ++k) {
                if (k == i) continue;
                if (z.cube_coords[k].num.depends_on(j) || z.cube_coords[k].den.depends_on(j))
                    used_elsewhere = true;
            }
            for (const RF& x : z.x_coords)
                if (x.num.depends_on(j) || x.den.depends_on(j)) used_elsewhere = true;
            if (!used_elsewhere) return true;  // pullback along the slot-i projection
        }
    }
    return false;
}

CycleChain normal_form(const CycleChain& z, bool drop_degenerate) {
    CycleChain out;
    out.warnings = z.warnings;
    for (auto& [comp, coeff] : z.terms) {
        Rat weight = coeff * comp.multiplicity;
        if (weight == 0) continue;
        if (drop_degenerate && is_degenerate(comp)) continue;
        bool merged = false;
        for (auto& [have, c] : out.terms) {
            bool same = false;
            try {
                same = identity_test(have, comp);
            } catch (const DegreeBoundExceeded&) {
                same = false;
            }
            if (same) {
                c += weight;
                merged = true;
                break;
            }
        }
        if (!merged) {
            ParamCycle copy = comp;
            copy.multiplicity = 1;
            out.terms.push_back({std::move(copy), weight});
        }
    }
    std::erase_if(out.terms, [](const auto& t) { return t.second == 0; });
    return out;
}

/* ------------------------------ facet pullback ------------------------------ */

namespace {

UPoly<CycloNum> to_cyclo_poly(const UPoly<ExtElem>& p) {
    UPoly<CycloNum> out;
    for (int i = 0; i <= p.degree(); ++i) {
        const ExtElem& c = p.coeff(i);
        if (!c.is_constant()) throw Error("polynomial has non-constant extension coefficients");
        out.set_coeff(i, c.constant_part());
    }
    return out;
}

UPoly<ExtElem> from_cyclo_poly(const UPoly<CycloNum>& p) {
    UPoly<ExtElem> out;
    for (int i = 0; i <= p.degree(); ++i) out.set_coeff(i, ExtElem(p.coeff(i)));
    return out;
}

int factor_multiplicity(UPoly<ExtElem> p, const UPoly<ExtElem>& m) {
    int e = 0;
    while (!p.is_zero()) {
        UPoly<ExtElem> q, r;
        UPoly<ExtElem>::divmod(p, m, q, r);
        if (!r.is_zero()) break;
        p = q;
        ++e;
    }
    return e;
}

ParamCycle restrict_curve_to_point(const ParamCycle& z, int drop_slot, const PValue& at,
                                   std::shared_ptr<const ExtField> point_field,
                                   const std::string& tag) {
    ParamCycle out;
    out.kind = BaseKind::Point;
    out.nparams = 0;
    out.field = point_field;
    out.multiplicity = z.multiplicity;
    out.base_label = z.base_label.empty() ? tag : z.base_label + ":" + tag;
    auto restrict_rf = [&](const RF& f) {
        RF r = f.subst_point(0, at);
        return r.drop_var(0);
    };
    for (const RF& x : z.x_coords) out.x_coords.push_back(restrict_rf(x));
    for (int k = 0; k < z.n(); ++k) {
        if (k == drop_slot) continue;
        out.cube_coords.push_back(restrict_rf(z.cube_coords[k]));
    }
    return out;
}

bool point_excluded(const ParamCycle& z, const PValue& at) {
    for (const ExcludedLocus& ex : z.excluded)
        if ((at.a * ex.value.b - ex.value.a * at.b).is_zero_split()) return true;
    return false;
}

// true if some cube coordinate is identically 1 (outside the open cube);
// *ambiguous flags a genuinely indeterminate 0/0 value
bool component_outside_cube(const ParamCycle& comp, bool* ambiguous) {
    *ambiguous = false;
    for (const RF& g : comp.cube_coords) {
        if (comp.nparams == 0) {
            PValue v = rf_value_at0(g);
            if (v.a.is_zero() && v.b.is_zero()) {
                *ambiguous = true;
                return false;
            }
            if (v.is_one_split()) return true;
        } else {
            if (g.num.is_zero() && g.den.is_zero()) {
                *ambiguous = true;
                return false;
            }
            if (g.is_identically(one_e())) return true;
        }
    }
    return false;
}

void emit_point_component(const ParamCycle& z, int slot, const PValue& at, int mult,
                          std::shared_ptr<const ExtField> pf, const std::string& tag,
                          CycleChain& out) {
    if (point_excluded(z, at)) return;
    ParamCycle comp = restrict_curve_to_point(z, slot, at, pf, tag);
    bool ambiguous = false;
    if (component_outside_cube(comp, &ambiguous)) {
        if (mult > 1)
            out.warnings.push_back("dropped component at cube value 1 with multiplicity " +
                                   std::to_string(mult) + " (" + comp.base_label + ")");
        return;
    }
    if (ambiguous)
        throw ImproperFacet("indeterminate coordinate value on facet component " + tag);
    comp.multiplicity = z.multiplicity * rat(mult);
    out.terms.push_back({comp, Rat(1)});
}

// points of an extension locus, splitting the modulus lazily on demand
void emit_extension_points(const ParamCycle& z, int slot, UPoly<CycloNum> m0, int mult,
                           CycleChain& out) {
    std::vector<UPoly<CycloNum>> work{std::move(m0)};
    while (!work.empty()) {
        UPoly<CycloNum> m = work.back().monic();
        work.pop_back();
        if (m.degree() == 1) {
            CycloNum root = (CycloNum() - m.coeff(0)) / m.coeff(1);
            emit_point_component(z, slot, PValue{ExtElem(root), one_e()}, mult, nullptr, "pt", out);
            continue;
        }
        auto fld = std::make_shared<const ExtField>(m);
        try {
            PValue at{ExtElem::theta(fld), ExtElem(fld, UPoly<CycloNum>(CycloNum(rat(1))))};
            emit_point_component(z, slot, at, mult, fld,
                                 "pt(deg" + std::to_string(m.degree()) + ")", out);
        } catch (const SplitNeeded& sp) {
            UPoly<CycloNum> g = sp.factor.monic();
            UPoly<CycloNum> q, r;
            UPoly<CycloNum>::divmod(m, g, q, r);
            if (!r.is_zero()) throw Error("split factor does not divide the modulus");
            work.push_back(g);
            work.push_back(q);
        }
    }
}

void facet_points_of_curve(const ParamCycle& z, int slot, FacetValue f,
                           std::vector<std::pair<PValue, int>>& plain_points,
                           std::vector<std::pair<UPoly<CycloNum>, int>>& ext_points,
                           int& inf_mult) {
    RF g = z.cube_coords[slot].reduced();
    const MPoly& hm = (f == FacetValue::Zero) ? g.num : g.den;
    const MPoly& om = (f == FacetValue::Zero) ? g.den : g.num;
    if (hm.is_zero())
        throw ImproperFacet("cube coordinate " + std::to_string(slot + 1) +
                            " is identically the facet value");
    UPoly<ExtElem> h = hm.to_upoly(0);
    UPoly<ExtElem> o = om.to_upoly(0);
    inf_mult = std::max(0, o.degree() - h.degree());
    if (h.degree() == 0) return;

    bool plain = true;
    for (const ExtElem& c : h.coeffs())
        if (c.field() && !c.is_constant()) plain = false;
    if (!z.field && plain) {
        for (auto& [fac, mult] : UPoly<ExtElem>::squarefree(h)) {
            UPoly<CycloNum> m = to_cyclo_poly(fac);
            if (m.degree() > 4)
                throw UnfactorableLocus("facet locus of degree " + std::to_string(m.degree()));
            if (m.degree() == 1) {
                CycloNum root = (CycloNum() - m.coeff(0)) / m.coeff(1);
                plain_points.push_back({PValue{ExtElem(root), one_e()}, mult});
            } else {
                ext_points.push_back({m, mult});
            }
        }
    } else {
        // over an extension base only linear loci stay inside the field
        for (auto& [fac, mult] : UPoly<ExtElem>::squarefree(h)) {
            if (fac.degree() > 1)
                throw UnfactorableLocus("nonlinear facet locus over an extension base");
            ExtElem root = -(fac.coeff(0) * fac.coeff(1).inverse());
            plain_points.push_back({PValue{root, one_e()}, mult});
        }
    }
}

/* surface facet machinery */

std::vector<UPoly<ExtElem>> nested_view(const MPoly& p, int main, int other) {
    std::vector<UPoly<ExtElem>> out(p.deg_in(main) + 1);
    for (auto& [e, c] : p.terms()) {
        UPoly<ExtElem>& slot = out[e[main]];
        ExtElem cur = slot.coeff(e[other]);
        slot.set_coeff(e[other], cur + c);
    }
    return out;
}

MPoly from_nested(const std::vector<UPoly<ExtElem>>& v, int main, int other, int nvars) {
    MPoly out(nvars);
    for (size_t k = 0; k < v.size(); ++k)
        for (int i = 0; i <= v[k].degree(); ++i) {
            MPoly::Expo e{0, 0, 0};
            e[main] = (int)k;
            e[other] = i;
            out.add_term(e, v[k].coeff(i));
        }
    return out;
}

struct SurfaceFactor {
    bool is_line = false;
    int line_var = 0;
    PValue line_value;
    UPoly<CycloNum> line_modulus;  // deg >= 2: conjugate family of lines
    bool line_over_extension = false;
    RF graph;       // the other variable as a function of graph_var
    int graph_var = 0;
    int mult = 1;
};

// supported factorizations: per-variable contents (univariate, degree <= 4)
// times a primitive part linear in one of the variables
void factor_surface_locus(const MPoly& h, std::vector<SurfaceFactor>& out) {
    MPoly cur = h;
    for (int main : {1, 0}) {
        int other = 1 - main;
        std::vector<UPoly<ExtElem>> view = nested_view(cur, main, other);
        UPoly<ExtElem> content;
        for (auto& c : view) content = UPoly<ExtElem>::gcd(content, c);
        if (content.degree() > 0) {
            for (auto& [fac, mult] : UPoly<ExtElem>::squarefree(content)) {
                UPoly<CycloNum> m = to_cyclo_poly(fac);
                if (m.degree() > 4)
                    throw UnfactorableLocus("surface content factor of degree " +
                                            std::to_string(m.degree()));
                SurfaceFactor sf;
                sf.is_line = true;
                sf.line_var = other;
                sf.mult = mult;
                if (m.degree() == 1) {
                    CycloNum root = (CycloNum() - m.coeff(0)) / m.coeff(1);
                    sf.line_value = PValue{ExtElem(root), one_e()};
                } else {
                    sf.line_over_extension = true;
                    sf.line_modulus = m;
                }
                out.push_back(sf);
            }
            for (auto& c : view) {
                UPoly<ExtElem> q, r;
                UPoly<ExtElem>::divmod(c, content, q, r);
                if (!r.is_zero()) throw Error("content division failed");
                c = q;
            }
            cur = from_nested(view, main, other, cur.nvars());
        }
    }
    if (cur.is_constant()) return;
    if (cur.deg_in(1) == 1) {
        std::vector<UPoly<ExtElem>> view = nested_view(cur, 1, 0);
        SurfaceFactor sf;
        sf.graph_var = 0;
        sf.graph = RF{-MPoly::from_upoly(view[0], 0, 2), MPoly::from_upoly(view[1], 0, 2)};
        out.push_back(sf);
        return;
    }
    if (cur.deg_in(0) == 1) {
        std::vector<UPoly<ExtElem>> view = nested_view(cur, 0, 1);
        SurfaceFactor sf;
        sf.graph_var = 1;
        sf.graph = RF{-MPoly::from_upoly(view[0], 1, 2), MPoly::from_upoly(view[1], 1, 2)};
        out.push_back(sf);
        return;
    }
    throw UnfactorableLocus("surface facet locus has no per-variable-linear factorization");
}

ParamCycle restrict_surface_to_line(const ParamCycle& z, int drop_slot, int line_var,
                                    const PValue& at, std::shared_ptr<const ExtField> pf,
                                    const std::string& tag) {
    ParamCycle out;
    out.kind = BaseKind::Curve;
    out.nparams = 1;
    out.field = pf ? pf : z.field;
    out.multiplicity = z.multiplicity;
    out.base_label = (z.base_label.empty() ? "" : z.base_label + ":") + tag;
    auto restrict_rf = [&](const RF& f) {
        RF r = f.subst_point(line_var, at);
        return r.drop_var(line_var);
    };
    for (const RF& x : z.x_coords) out.x_coords.push_back(restrict_rf(x));
    for (int k = 0; k < z.n(); ++k) {
        if (k == drop_slot) continue;
        out.cube_coords.push_back(restrict_rf(z.cube_coords[k]));
    }
    int kept = 1 - line_var;
    for (const ExcludedLocus& ex : z.excluded)
        if (ex.var == kept) out.excluded.push_back({0, ex.value});
    return out;
}

ParamCycle restrict_surface_to_graph(const ParamCycle& z, int drop_slot, int graph_var,
                                     const RF& phi, const std::string& tag,
                                     std::vector<std::string>& warnings) {
    int other = 1 - graph_var;
    ParamCycle out;
    out.kind = BaseKind::Curve;
    out.nparams = 1;
    out.field = z.field;
    out.multiplicity = z.multiplicity;
    out.base_label = (z.base_label.empty() ? "" : z.base_label + ":") + tag;
    auto restrict_rf = [&](const RF& f) { return f.subst(other, phi).drop_var(other); };
    for (const RF& x : z.x_coords) out.x_coords.push_back(restrict_rf(x));
    for (int k = 0; k < z.n(); ++k) {
        if (k == drop_slot) continue;
        out.cube_coords.push_back(restrict_rf(z.cube_coords[k]));
    }
    RF phi_d = phi.drop_var(other);
    for (const ExcludedLocus& ex : z.excluded) {
        if (ex.var == graph_var) {
            out.excluded.push_back({0, ex.value});
            continue;
        }
        // {other = c} meets the graph where phi = c
        MPoly diff = ex.value.b.is_zero()
                         ? phi_d.den
                         : phi_d.num * MPoly::constant(ex.value.b, 1) -
                               MPoly::constant(ex.value.a, 1) * phi_d.den;
        if (diff.is_zero()) continue;  // coincides; handled at the component level
        UPoly<ExtElem> u = diff.to_upoly(0);
        if (u.degree() == 1) {
            ExtElem root = -(u.coeff(0) * u.coeff(1).inverse());
            out.excluded.push_back({0, PValue{root, one_e()}});
        } else if (u.degree() > 1) {
            warnings.push_back("exclusion pullback of degree " + std::to_string(u.degree()) +
                               " skipped on " + out.base_label);
        }
    }
    return out;
}

bool line_excluded(const ParamCycle& z, int var, const PValue& value) {
    for (const ExcludedLocus& ex : z.excluded)
        if (ex.var == var && (value.a * ex.value.b - ex.value.a * value.b).is_zero_split())
            return true;
    return false;
}

ParamCycle rebase_cycle(const ParamCycle& z, const std::shared_ptr<const ExtField>& nf) {
    ParamCycle out = z;
    out.field = (nf && nf->degree() >= 2) ? nf : nullptr;
    std::shared_ptr<const ExtField> target = out.field ? out.field : nf;
    for (RF& x : out.x_coords) x = x.rebased(target);
    for (RF& g : out.cube_coords) g = g.rebased(target);
    for (ExcludedLocus& ex : out.excluded) {
        ex.value.a = ex.value.a.rebased(target);
        ex.value.b = ex.value.b.rebased(target);
    }
    return out;
}

CycleChain facet_pullback_impl(const ParamCycle& z, int i, FacetValue f) {
    int slot = i - 1;
    CycleChain out;

    if (z.kind == BaseKind::Point) {
        PValue v = rf_value_at0(z.cube_coords[slot]);
        bool on_facet = (f == FacetValue::Zero) ? v.is_zero_split() : v.is_inf_split();
        if (on_facet)
            throw ImproperFacet("point component lies inside the facet (improper intersection)");
        return out;
    }

    if (z.kind == BaseKind::Curve) {
        std::vector<std::pair<PValue, int>> plain_points;
        std::vector<std::pair<UPoly<CycloNum>, int>> ext_points;
        int inf_mult = 0;
        facet_points_of_curve(z, slot, f, plain_points, ext_points, inf_mult);
        for (auto& [at, mult] : plain_points)
            emit_point_component(z, slot, at, mult, z.field, "pt", out);
        for (auto& [m, mult] : ext_points) emit_extension_points(z, slot, m, mult, out);
        if (inf_mult > 0)
            emit_point_component(z, slot, PValue{one_e(), ExtElem()}, inf_mult, z.field,
                                 "pt(inf)", out);
        return out;
    }

    RF g = z.cube_coords[slot];
    const MPoly& hm = (f == FacetValue::Zero) ? g.num : g.den;
    const MPoly& om = (f == FacetValue::Zero) ? g.den : g.num;
    if (hm.is_zero())
        throw ImproperFacet("cube coordinate " + std::to_string(i) +
                            " is identically the facet value");
    if (z.field) throw UnfactorableLocus("surface facets over an extension base are unsupported");

    std::vector<SurfaceFactor> factors;
    factor_surface_locus(hm, factors);
    for (int var = 0; var < 2; ++var) {
        // vanishing order of the facet function along {var = infinity}
        int mult = om.deg_in(var) - hm.deg_in(var);
        if (mult > 0) {
            SurfaceFactor sf;
            sf.is_line = true;
            sf.line_var = var;
            sf.line_value = PValue{one_e(), ExtElem()};
            sf.mult = mult;
            factors.push_back(sf);
        }
    }

    for (const SurfaceFactor& sf : factors) {
        if (sf.is_line) {
            std::shared_ptr<const ExtField> fld;
            PValue at = sf.line_value;
            std::string tag;
            if (sf.line_over_extension) {
                fld = std::make_shared<const ExtField>(sf.line_modulus);
                at = PValue{ExtElem::theta(fld), ExtElem(fld, UPoly<CycloNum>(CycloNum(rat(1))))};
                tag = (sf.line_var == 0 ? "s" : "w") + std::string("=theta(deg") +
                      std::to_string(sf.line_modulus.degree()) + ")";
            } else {
                tag = (sf.line_var == 0 ? "s=" : "w=") + at.to_string();
            }
            if (line_excluded(z, sf.line_var, at)) continue;
            ParamCycle comp = restrict_surface_to_line(z, slot, sf.line_var, at, fld, tag);
            bool ambiguous = false;
            if (component_outside_cube(comp, &ambiguous)) {
                if (sf.mult > 1)
                    out.warnings.push_back("dropped component at cube value 1 with multiplicity " +
                                           std::to_string(sf.mult) + " (" + tag + ")");
                continue;
            }
            if (ambiguous) throw ImproperFacet("indeterminate coordinate on " + tag);
            comp.multiplicity = z.multiplicity * rat(sf.mult);
            out.terms.push_back({comp, Rat(1)});
        } else {
            RF phi = sf.graph;
            int other = 1 - sf.graph_var;
            RF phi_d = phi.drop_var(other);
            bool coincides_excluded = false;
            for (const ExcludedLocus& ex : z.excluded) {
                if (ex.var != other) continue;
                MPoly cross = phi_d.num * MPoly::constant(ex.value.b, 1) -
                              MPoly::constant(ex.value.a, 1) * phi_d.den;
                if (cross.is_zero()) coincides_excluded = true;
            }
            if (coincides_excluded) continue;
            ParamCycle comp = restrict_surface_to_graph(
                z, slot, sf.graph_var, phi,
                std::string(other == 1 ? "w=phi(s)" : "s=phi(w)"), out.warnings);
            bool ambiguous = false;
            if (component_outside_cube(comp, &ambiguous)) {
                if (sf.mult > 1)
                    out.warnings.push_back("dropped graph component with multiplicity " +
                                           std::to_string(sf.mult));
                continue;
            }
            if (ambiguous) throw ImproperFacet("indeterminate coordinate on graph component");
            comp.multiplicity = z.multiplicity * rat(sf.mult);
            out.terms.push_back({comp, Rat(1)});
        }
    }
    return out;
}

}  // namespace

CycleChain facet_pullback(const ParamCycle& z, int i, FacetValue f) {
    if (i < 1 || i > z.n()) throw Error("facet index out of range");
    try {
        return facet_pullback_impl(z, i, f);
    } catch (const SplitNeeded& sp) {
        // the base extension is reducible here: split and recurse per branch
        if (!z.field) throw Error("split requested over the base field");
        UPoly<CycloNum> m = z.field->modulus();
        UPoly<CycloNum> g = sp.factor.monic();
        UPoly<CycloNum> q, r;
        UPoly<CycloNum>::divmod(m, g, q, r);
        if (!r.is_zero()) throw Error("split factor does not divide the base modulus");
        auto f1 = std::make_shared<const ExtField>(g);
        auto f2 = std::make_shared<const ExtField>(q);
        CycleChain out = facet_pullback(rebase_cycle(z, f1), i, f);
        out += facet_pullback(rebase_cycle(z, f2), i, f);
        return out;
    }
}

CycleChain boundary(const CycleChain& z) {
    CycleChain acc;
    acc.warnings = z.warnings;
    for (auto& [comp, coeff] : z.terms) {
        for (int j = 1; j <= comp.n(); ++j) {
            Rat sign = (j % 2 == 0) ? rat(1) : rat(-1);
            acc += (sign * coeff) * facet_pullback(comp, j, FacetValue::Zero);
            acc += (-sign * coeff) * facet_pullback(comp, j, FacetValue::Infinity);
        }
    }
    return normal_form(acc, /*drop_degenerate=*/true);
}

/* ------------------------------ tame symbols ------------------------------ */

TameValue tame_symbol(const RF& f_in, const RF& g_in, const CurvePoint& p) {
    RF f = f_in.reduced(), g = g_in.reduced();
    if (f.num.is_zero() || g.num.is_zero() || f.den.is_zero() || g.den.is_zero())
        throw ZeroFunction("tame symbol of the zero (or infinite) function");

    using PE = UPoly<ExtElem>;
    PE m = p.at_infinity ? PE() : from_cyclo_poly(p.modulus).monic();
    auto valuation = [&](const RF& h) -> int {
        PE num = h.num.to_upoly(0), den = h.den.to_upoly(0);
        if (p.at_infinity) return den.degree() - num.degree();
        return factor_multiplicity(num, m) - factor_multiplicity(den, m);
    };
    int vf = valuation(f), vg = valuation(g);

    auto rf_pow = [&](const RF& base, int e) {
        RF acc = RF::constant(one_e(), 1);
        RF b = e >= 0 ? base : RF{base.den, base.num};
        for (int k = 0; k < std::abs(e); ++k) acc = acc * b;
        return acc;
    };
    RF h = rf_pow(f, vg) * rf_pow(g, -vf);

    TameValue out;
    if (p.at_infinity) {
        int cap = std::max(h.num.deg_in(0), h.den.deg_in(0));
        MPoly n1 = h.num.subst_homog(0, MPoly::constant(one_e(), 1), MPoly(1), cap);
        MPoly d1 = h.den.subst_homog(0, MPoly::constant(one_e(), 1), MPoly(1), cap);
        PValue v{n1.drop_var(0).eval0(), d1.drop_var(0).eval0()};
        out.value = v.finite();
    } else {
        PE num = h.num.to_upoly(0), den = h.den.to_upoly(0);
        int common = std::min(factor_multiplicity(num, m), factor_multiplicity(den, m));
        for (int k = 0; k < common; ++k) {
            PE q, r;
            PE::divmod(num, m, q, r);
            num = q;
            PE::divmod(den, m, q, r);
            den = q;
        }
        ExtElem theta_val;
        if (p.modulus.degree() == 1) {
            theta_val = ExtElem((CycloNum() - p.modulus.coeff(0)) / p.modulus.coeff(1));
        } else {
            auto fld = std::make_shared<const ExtField>(p.modulus);
            theta_val = ExtElem::theta(fld);
        }
        out.value = num.eval(theta_val) * den.eval(theta_val).inverse();
    }
    if ((vf * vg) % 2 != 0) out.value = -out.value;
    out.is_torsion = out.value.is_root_of_unity(&out.torsion_order);
    if (!out.value.field() || out.value.is_constant()) {
        out.in_base_field = true;
        out.base_value = out.value.rep().coeff(0);
    }
    return out;
}

/* --------------------------- normalization moves --------------------------- */

CycleChain projection_pullback(const CycleChain& z, int i) {
    CycleChain out;
    out.warnings = z.warnings;
    for (auto& [comp, coeff] : z.terms) {
        int np = comp.nparams;
        if (np >= 2) throw NotParametrized("projection pullback beyond two parameters");
        ParamCycle lifted;
        lifted.kind = np == 0 ? BaseKind::Curve : BaseKind::Surface;
        lifted.nparams = np + 1;
        lifted.field = comp.field;
        lifted.multiplicity = comp.multiplicity;
        lifted.excluded = comp.excluded;
        lifted.base_label = "pi" + std::to_string(i) + "*(" + comp.base_label + ")";
        for (const RF& x : comp.x_coords) lifted.x_coords.push_back(x.insert_var(np));
        for (int k = 0; k < comp.n(); ++k) {
            if (k == i - 1) lifted.cube_coords.push_back(RF::var(np, np + 1));
            lifted.cube_coords.push_back(comp.cube_coords[k].insert_var(np));
        }
        if (i - 1 == comp.n()) lifted.cube_coords.push_back(RF::var(np, np + 1));
        out.terms.push_back({lifted, coeff});
    }
    return out;
}

CycleChain normalize(const CycleChain& z) {
    CycleChain cur = normal_form(z, false);
    int n = -1;
    for (auto& [comp, c] : cur.terms) {
        if (n < 0) n = comp.n();
        if (comp.n() != n) throw Error("normalize: mixed cube dimensions in chain");
    }
    if (n <= 0) return cur;
    for (int i = 1; i <= n; ++i) {
        CycleChain facet;
        for (auto& [comp, c] : cur.terms)
            facet += c * facet_pullback(comp, i, FacetValue::Infinity);
        CycleChain corr = projection_pullback(facet, i);
        cur = normal_form(cur + rat(-1) * corr, false);
        cur.warnings.insert(cur.warnings.end(), facet.warnings.begin(), facet.warnings.end());
    }
    return cur;
}

static ParamCycle lift_with_extra_params(const ParamCycle& c, int extra) {
    ParamCycle lifted = c;
    lifted.nparams = c.nparams + extra;
    if (lifted.nparams > 3) throw NotParametrized("too many parameters in move construction");
    lifted.kind = lifted.nparams == 1 ? BaseKind::Curve : BaseKind::Surface;
    lifted.x_coords.clear();
    lifted.cube_coords.clear();
    for (const RF& x : c.x_coords) {
        RF cur = x;
        for (int e = 0; e < extra; ++e) cur = cur.insert_var(c.nparams + e);
        lifted.x_coords.push_back(cur);
    }
    for (const RF& g : c.cube_coords) {
        RF cur = g;
        for (int e = 0; e < extra; ++e) cur = cur.insert_var(c.nparams + e);
        lifted.cube_coords.push_back(cur);
    }
    return lifted;
}

CycleChain move_Mi(const CycleChain& w, int i) {
    CycleChain out;
    for (auto& [comp, coeff] : w.terms) {
        int n = comp.n();
        if (i < 1 || i >= n) throw Error("move index must satisfy 1 <= i <= n-1");
        CycleChain f0 = facet_pullback(comp, i, FacetValue::Zero);
        for (auto& [c, ccoeff] : f0.terms) {
            ParamCycle lifted = lift_with_extra_params(c, 1);
            int np = c.nparams;
            RF sigma = RF::var(np, np + 1);
            RF one = rf_one(np + 1);
            std::vector<RF> cube;
            for (int k = 0; k < i - 1; ++k) cube.push_back(lifted.cube_coords[k]);
            cube.push_back(sigma);
            RF wi = lifted.cube_coords[i - 1];
            cube.push_back((wi - sigma) / (one - sigma));
            for (int k = i; k < n - 1; ++k) cube.push_back(lifted.cube_coords[k]);
            lifted.cube_coords = cube;
            lifted.base_label = "M" + std::to_string(i) + "(" + c.base_label + ")";
            out.terms.push_back({lifted, coeff * ccoeff * c.multiplicity});
            out.terms.back().first.multiplicity = 1;
        }
        out.warnings.insert(out.warnings.end(), f0.warnings.begin(), f0.warnings.end());
    }
    return normal_form(out, false);
}

CycleChain homotopy_Hi(const CycleChain& w, int i) {
    CycleChain out;
    for (auto& [comp, coeff] : w.terms) {
        int n = comp.n();
        if (i < 1 || i >= n) throw Error("homotopy index must satisfy 1 <= i <= n-1");
        CycleChain f0 = facet_pullback(comp, i, FacetValue::Zero);
        for (auto& [c, ccoeff] : f0.terms) {
            ParamCycle lifted = lift_with_extra_params(c, 2);
            int np = c.nparams;
            RF sigma = RF::var(np, np + 2);
            RF sigma2 = RF::var(np + 1, np + 2);
            RF one = rf_one(np + 2);
            std::vector<RF> cube;
            for (int k = 0; k < i - 1; ++k) cube.push_back(lifted.cube_coords[k]);
            cube.push_back(sigma);
            cube.push_back(sigma2);
            RF wi = lifted.cube_coords[i - 1];
            // (1-s)(1-s')(1-z) = 1-w_i  =>  z = 1 - (1-w_i)/((1-s)(1-s'))
            cube.push_back(one - (one - wi) / ((one - sigma) * (one - sigma2)));
            for (int k = i; k < n - 1; ++k) cube.push_back(lifted.cube_coords[k]);
            lifted.cube_coords = cube;
            lifted.base_label = "H" + std::to_string(i) + "(" + c.base_label + ")";
            // orientation of the solved-variable pushforward, fixed so that
            // del_B H_i = (-1)^{i+1} M_i - H_i del_B holds on the nose
            out.terms.push_back({lifted, -coeff * ccoeff * c.multiplicity});
            out.terms.back().first.multiplicity = 1;
        }
        out.warnings.insert(out.warnings.end(), f0.warnings.begin(), f0.warnings.end());
    }
    return normal_form(out, false);
}

/* --------------------- advisory good-position sampling --------------------- */

bool GoodPositionReport::all_pass() const {
    for (auto& it : items)
        if (it.status != "PASS") return false;
    return true;
}

std::string GoodPositionReport::to_string() const {
    std::ostringstream os;
    for (auto& it : items)
        os << "[" << it.status << "] " << it.component << " " << it.facet << " j=" << it.j
           << (it.detail.empty() ? "" : "  (" + it.detail + ")") << "\n";
    return os.str();
}

namespace {

int numeric_rank(std::vector<std::vector<double>> m, double tol) {
    int rows = (int)m.size();
    if (rows == 0) return 0;
    int cols = (int)m[0].size();
    int rank = 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        double best = tol;
        for (int r = rank; r < rows; ++r)
            if (std::abs(m[r][c]) > best) {
                best = std::abs(m[r][c]);
                piv = r;
            }
        if (piv < 0) continue;
        std::swap(m[rank], m[piv]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            double f = m[r][c] / m[rank][c];
            for (int cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

void sample_component(const ParamCycle& comp, const std::string& facet_tag, unsigned seed,
                      GoodPositionReport& report) {
    int rho = comp.nparams;
    int n = comp.n();
    for (int j = 1; j <= n; ++j) {
        GoodPositionItem item;
        item.component = comp.base_label.empty() ? "component" : comp.base_label;
        item.facet = facet_tag;
        item.j = j;
        int expected = 2 * rho - j;
        if (rho == 0) {
            bool nonempty = true;
            for (int k = 0; k < j; ++k) {
                auto v = rf_value_at0(comp.cube_coords[k]).eval_complex();
                if (!(std::abs(v.imag()) < 1e-9 && v.real() < 0)) nonempty = false;
            }
            item.status = nonempty ? "FAIL" : "PASS";
            item.detail = nonempty ? "point lies on the real-negative locus" : "empty locus";
            report.items.push_back(item);
            continue;
        }
        std::mt19937_64 rng(seed + (unsigned)j * 7919u);
        std::uniform_real_distribution<double> U(-2.0, 2.0);
        int hits = 0, bad = 0;
        for (int start = 0; start < 40; ++start) {
            std::array<std::complex<double>, 3> x{0.0, 0.0, 0.0};
            for (int v = 0; v < rho; ++v) x[v] = std::complex<double>(U(rng), U(rng));
            for (int iter = 0; iter < 60; ++iter) {
                std::vector<double> F(j);
                std::vector<std::vector<double>> J(j, std::vector<double>(2 * rho));
                double worst = 0;
                bool blew_up = false;
                for (int k = 0; k < j; ++k) {
                    auto v = comp.cube_coords[k].eval_complex(x);
                    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) blew_up = true;
                    F[k] = v.imag();
                    worst = std::max(worst, std::abs(F[k]));
                    for (int p = 0; p < rho; ++p) {
                        auto dv = comp.cube_coords[k].derivative(p).eval_complex(x);
                        J[k][2 * p] = dv.imag();
                        J[k][2 * p + 1] = dv.real();
                    }
                }
                if (blew_up) break;
                if (worst < 1e-11) {
                    bool neg = true;
                    for (int k = 0; k < j; ++k) {
                        auto v = comp.cube_coords[k].eval_complex(x);
                        if (v.real() >= -1e-9) neg = false;
                    }
                    if (neg) {
                        ++hits;
                        if (numeric_rank(J, 1e-7) < j) ++bad;
                    }
                    break;
                }
                // damped Gauss-Newton via normal equations (tiny systems)
                int m2 = 2 * rho;
                std::vector<std::vector<double>> A(m2, std::vector<double>(m2 + 1, 0.0));
                for (int r = 0; r < m2; ++r) {
                    for (int c = 0; c < m2; ++c)
                        for (int k = 0; k < j; ++k) A[r][c] += J[k][r] * J[k][c];
                    A[r][r] += 1e-10;
                    for (int k = 0; k < j; ++k) A[r][m2] += -J[k][r] * F[k];
                }
                for (int c = 0; c < m2; ++c) {
                    int piv = c;
                    for (int r = c + 1; r < m2; ++r)
                        if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
                    std::swap(A[c], A[piv]);
                    if (std::abs(A[c][c]) < 1e-14) continue;
                    for (int r = 0; r < m2; ++r) {
                        if (r == c) continue;
                        double fm = A[r][c] / A[c][c];
                        for (int cc = c; cc <= m2; ++cc) A[r][cc] -= fm * A[c][cc];
                    }
                }
                for (int p = 0; p < rho; ++p) {
                    double dre =
                        std::abs(A[2 * p][2 * p]) > 1e-14 ? A[2 * p][m2] / A[2 * p][2 * p] : 0;
                    double dim = std::abs(A[2 * p + 1][2 * p + 1]) > 1e-14
                                     ? A[2 * p + 1][m2] / A[2 * p + 1][2 * p + 1]
                                     : 0;
                    x[p] += std::complex<double>(dre, dim);
                }
            }
        }
        if (hits == 0) {
            item.status = "PASS";
            item.detail = "no locus points found in the sample budget";
        } else if (bad == 0) {
            item.status = "PASS";
            item.detail = std::to_string(hits) + " locus points, full-rank constraints (dim <= " +
                          std::to_string(expected) + ")";
        } else {
            item.status = expected < 0 ? "FAIL" : "INCONCLUSIVE";
            item.detail = std::to_string(bad) + "/" + std::to_string(hits) +
                          " locus points with degenerate constraints";
        }
        report.items.push_back(item);
    }
}

}  // namespace

GoodPositionReport good_position_report(const CycleChain& z, unsigned seed_salt) {
    GoodPositionReport report;
    for (auto& [comp, coeff] : z.terms) {
        unsigned seed = seed_salt;
        for (char c : comp.to_string()) seed = seed * 131u + (unsigned char)c;
        sample_component(comp, "cycle", seed, report);
        for (int i = 1; i <= comp.n(); ++i) {
            for (FacetValue f : {FacetValue::Zero, FacetValue::Infinity}) {
                std::string tag = std::string("facet ") + (f == FacetValue::Zero ? "0" : "inf") +
                                  "@" + std::to_string(i);
                try {
                    CycleChain fc = facet_pullback(comp, i, f);
                    for (auto& [sub, c2] : fc.terms) sample_component(sub, tag, seed + i, report);
                } catch (const Error& e) {
                    GoodPositionItem item;
                    item.component = comp.base_label;
                    item.facet = tag;
                    item.status = "INCONCLUSIVE";
                    item.detail = e.what();
                    report.items.push_back(item);
                }
            }
        }
    }
    return report;
}

}  // namespace reglab
