#include "reglab/klm.hpp"

#include <algorithm>
#include <optional>

#include "reglab/errors.hpp"

namespace reglab {

namespace {

// Crossing-sign convention for delta_{T_f} against an oriented path, with
// T_f = f^{-1}(R^-) oriented from f = 0 toward f = infinity. Calibrated via
// the n = 1 Stokes identity and pinned by the worked period values.
constexpr double kCrossSign = -1.0;

Complex eval_rf(const RF& f, Complex t) { return f.eval_complex({t, 0.0, 0.0}); }

struct Fn1 {
    RF f;
    RF df;
    explicit Fn1(const RF& g) : f(g), df(g.derivative(0)) {}
    Complex val(Complex t) const { return eval_rf(f, t); }
    Complex dlog(Complex t) const { return eval_rf(df, t) / eval_rf(f, t); }
};

struct Crossing {
    double s;     // parameter on the segment
    Complex t;    // point
    double dir;   // sign of d/ds Im f at the crossing
};

std::vector<Crossing> ray_crossings(const Fn1& f, Complex a, Complex b, bool first_seg,
                                    bool last_seg) {
    const int N = 512;
    std::vector<Crossing> out;
    auto im_at = [&](double s) { return f.val(a + (b - a) * s).imag(); };
    double prev = im_at(0.0);
    for (int i = 1; i <= N; ++i) {
        double s1 = (double)i / N;
        double cur = im_at(s1);
        if ((prev < 0) != (cur < 0) && prev != cur) {
            double s0 = (double)(i - 1) / N;
            double sc = bisect_root(im_at, s0, s1);
            Complex t = a + (b - a) * sc;
            Complex v = f.val(t);
            if (v.real() < 0) {
                if ((first_seg && sc < 1e-10) || (last_seg && sc > 1.0 - 1e-10))
                    throw IntersectionUnresolved(
                        "real-negativity crossing within 1e-10 of the membrane boundary");
                double h = 1e-7;
                double slope = (im_at(std::min(1.0, sc + h)) - im_at(std::max(0.0, sc - h)));
                out.push_back({sc, t, slope >= 0 ? 1.0 : -1.0});
            }
        }
        prev = cur;
    }
    return out;
}

// interior singularity scan: coordinates must stay away from 0 and infinity
// strictly inside a segment (endpoints are graded by the quadrature)
void scan_interior_singularities(const std::vector<Fn1>& fs, Complex a, Complex b,
                                 std::vector<double>& extra_splits) {
    const int N = 256;
    for (const Fn1& f : fs) {
        for (int i = 1; i < N; ++i) {
            double s = (double)i / N;
            Complex v = f.val(a + (b - a) * s);
            double m = std::abs(v);
            if (m < 1e-12 || m > 1e12) {
                if (m < 1e-14 || m > 1e14)
                    throw SingularOnMembrane(
                        "coordinate function vanishes or blows up strictly inside the membrane");
                extra_splits.push_back(s);
            }
        }
    }
}

IntegralResult pair_path(const SymbolCurrent& R, const Membrane& g,
                         const QuadratureSettings& cfg) {
    const ParamCycle& z = R.cycle;
    if (z.nparams != 1 || z.kind != BaseKind::Curve)
        throw NotASymbolGraph("path pairing needs a curve-base symbol graph");
    int n = z.n();
    std::vector<Fn1> fs;
    fs.reserve(n);
    for (const RF& c : z.cube_coords) fs.emplace_back(c.reduced());

    IntegralResult total;
    // delta-restricted strata beyond the first T are points on the path; for
    // n = 2 only T_{f_1} crossings are needed
    if (n != 2) throw NotASymbolGraph("path pairing implements form degree 1 (n = 2)");

    for (size_t seg = 0; seg + 1 < g.path.size(); ++seg) {
        Complex a = g.path[seg], b = g.path[seg + 1];
        std::vector<Crossing> crossings =
            ray_crossings(fs[0], a, b, seg == 0, seg + 2 == g.path.size());
        std::vector<double> splits{0.0, 1.0};
        for (auto& c : crossings) splits.push_back(c.s);
        scan_interior_singularities(fs, a, b, splits);
        std::sort(splits.begin(), splits.end());

        // term 1: log f1 dlog f2 piecewise between branch jumps
        for (size_t p = 0; p + 1 < splits.size(); ++p) {
            double lo = splits[p], hi = splits[p + 1];
            if (hi - lo < 1e-13) continue;
            Complex pa = a + (b - a) * lo, pb = a + (b - a) * hi;
            IntegralResult piece = integrate_01(
                [&](double s) {
                    Complex t = pa + (pb - pa) * s;
                    return std::log(fs[0].val(t)) * fs[1].dlog(t) * (pb - pa);
                },
                cfg, cfg.target_abs_tol / (double)(splits.size() + g.path.size()));
            total.value += piece.value;
            total.error += piece.error;
        }
        // term 2: -(2 pi i) log f2 on the T_{f1} crossings
        for (auto& c : crossings) {
            double csign = kCrossSign * c.dir;
            total.value += -1.0 * Complex(0.0, 2.0 * M_PI) * csign * std::log(fs[1].val(c.t));
        }
    }
    if (g.orientation < 0) total.value = -total.value;
    return total;
}

// samples the j-fold real-negativity locus on the region; returns true if a
// strictly interior locus point exists (not representable as a pairing)
bool region_locus_nonempty(const std::vector<Fn1>&, const std::vector<RF>& coords, int jcount,
                           Region2D region, double* boundary_hits) {
    const int N = 81;
    bool interior = false;
    if (boundary_hits) *boundary_hits = 0;
    for (int i = 0; i <= N; ++i)
        for (int j2 = 0; j2 <= N; ++j2) {
            double x = (double)i / N, y = (double)j2 / N;
            if (region == Region2D::Delta2 && x + y < 1.0) continue;
            bool on = true;
            for (int k = 0; k < jcount; ++k) {
                Complex v = coords[k].eval_complex({x, y, 0.0});
                if (!(std::abs(v.imag()) < 1e-9 && v.real() < -1e-9)) on = false;
            }
            if (!on) continue;
            double edge = std::min({x, y, 1.0 - x, 1.0 - y,
                                    region == Region2D::Delta2 ? x + y - 1.0 : 1.0});
            if (edge > 1e-3)
                interior = true;
            else if (boundary_hits)
                *boundary_hits += 1;
        }
    return interior;
}

IntegralResult pair_region(const SymbolCurrent& R, const Membrane& g,
                           const QuadratureSettings& cfg) {
    const ParamCycle& z = R.cycle;
    if (z.nparams != 2 || z.kind != BaseKind::Surface)
        throw NotASymbolGraph("region pairing needs a surface-base symbol graph");
    int n = z.n();
    if (n != 3) throw NotASymbolGraph("region pairing implements form degree 2 (n = 3)");

    std::vector<RF> f(z.cube_coords);
    std::vector<RF> fds, fdw;
    for (auto& c : f) {
        fds.push_back(c.derivative(0));
        fdw.push_back(c.derivative(1));
    }
    std::vector<Fn1> dummy;

    // delta terms require the T-loci to miss the open region
    for (int k = 2; k <= n; ++k) {
        if (region_locus_nonempty(dummy, f, k - 1, g.region, nullptr))
            throw IntersectionUnresolved(
                "real-negativity locus meets the region interior; the delta term is not a "
                "transverse pairing on this membrane");
    }

    auto dlog_at = [&](int j, double x, double y) {
        std::array<Complex, 3> pt{x, y, 0.0};
        Complex v = f[j].eval_complex(pt);
        return std::pair<Complex, Complex>(fds[j].eval_complex(pt) / v,
                                           fdw[j].eval_complex(pt) / v);
    };
    IntegralResult r = integrate_region(
        [&](double x, double y) {
            auto [l2s, l2w] = dlog_at(1, x, y);
            auto [l3s, l3w] = dlog_at(2, x, y);
            Complex wedge = l2s * l3w - l2w * l3s;
            Complex v1 = f[0].eval_complex({x, y, 0.0});
            return std::log(v1) * wedge;
        },
        g.region, cfg);
    if (g.orientation < 0) r.value = -r.value;
    return r;
}

}  // namespace

CurrentTriple klm_triple(const ParamCycle& z) {
    int n = z.n();
    if (n < 1) throw NotASymbolGraph("cycle has no cube coordinates");
    for (const RF& c : z.cube_coords) {
        if (c.num.is_zero()) throw NotASymbolGraph("a cube coordinate is identically 0");
        if (c.den.is_zero()) throw NotASymbolGraph("a cube coordinate is identically infinite");
    }
    CurrentTriple t;
    t.R.cycle = z;
    for (int k = 1; k <= n; ++k)
        t.R.terms.push_back({k, (k % 2 == 1) ? 1 : -1, k - 1});
    for (int i = 1; i <= n; ++i) t.omega_indices.push_back(i);
    std::string td = "cycle";
    for (int i = 1; i <= n; ++i) td += " ^ T_z" + std::to_string(i);
    t.t_descriptor = td;
    return t;
}

IntegralResult pair_with_membrane(const SymbolCurrent& R, const Membrane& g,
                                  const QuadratureSettings& cfg) {
    if (R.n() != g.dim + 1)
        throw NotASymbolGraph("membrane dimension does not match the R-current form degree");
    return g.dim == 1 ? pair_path(R, g, cfg) : pair_region(R, g, cfg);
}

IntegralResult pair_chain_with_membrane(const CycleChain& z, const Membrane& g,
                                        const QuadratureSettings& cfg) {
    IntegralResult total;
    for (auto& [comp, coeff] : z.terms) {
        CurrentTriple t = klm_triple(comp);
        IntegralResult r = pair_with_membrane(t.R, g, cfg);
        double w = rat_to_double(coeff * comp.multiplicity);
        total.value += w * r.value;
        total.error += std::abs(w) * r.error;
    }
    return total;
}

PeriodValue diagonal_pairing(const std::vector<Stratum>& strata, int p, int n,
                             const QuadratureSettings& cfg) {
    for (auto& s : strata)
        for (auto& [comp, c] : s.chain.terms)
            if (comp.n() != s.membrane.dim + 1)
                throw MisalignedStrata("stratum chain and membrane dimensions disagree at " +
                                       s.label);
    Complex pre(1.0, 0.0);
    Complex m2pi(0.0, -2.0 * M_PI);
    for (int i = 0; i < std::abs(p - n); ++i) pre *= m2pi;
    if (p - n < 0) pre = 1.0 / pre;
    PeriodValue out;
    out.p = p;
    for (auto& s : strata) {
        IntegralResult r = pair_chain_with_membrane(s.chain, s.membrane, cfg);
        out.value += r.value;
        out.error_estimate += r.error;
    }
    out.value *= pre;
    out.error_estimate *= std::abs(pre);
    return out;
}

/* ------------------------------- test forms ------------------------------- */

Complex TestForm::bump(Complex t) const {
    double r2 = std::norm((t - center) / radius);
    if (r2 >= 1.0) return {0.0, 0.0};
    return {std::exp(1.0 - 1.0 / (1.0 - r2)), 0.0};
}

Complex TestForm::bump_dx(Complex t) const {
    double r2 = std::norm((t - center) / radius);
    if (r2 >= 1.0) return {0.0, 0.0};
    double b = std::exp(1.0 - 1.0 / (1.0 - r2));
    double d = 1.0 - r2;
    double du = -b / (d * d);
    double dudx = 2.0 * (t.real() - center.real()) / (radius * radius);
    return {du * dudx, 0.0};
}

Complex TestForm::bump_dy(Complex t) const {
    double r2 = std::norm((t - center) / radius);
    if (r2 >= 1.0) return {0.0, 0.0};
    double b = std::exp(1.0 - 1.0 / (1.0 - r2));
    double d = 1.0 - r2;
    double du = -b / (d * d);
    double dudy = 2.0 * (t.imag() - center.imag()) / (radius * radius);
    return {du * dudy, 0.0};
}

namespace {

// numeric roots of a univariate polynomial part (Durand-Kerner on embeds)
std::vector<Complex> numeric_roots(const MPoly& pol) {
    UPoly<ExtElem> up = pol.to_upoly(0);
    int d = up.degree();
    std::vector<Complex> roots;
    if (d < 1) return roots;
    std::vector<Complex> cs(d + 1);
    for (int i = 0; i <= d; ++i) cs[i] = up.coeff(i).embed();
    roots.resize(d);
    Complex seed(0.4, 0.9), acc(1.0, 0.0);
    for (int i = 0; i < d; ++i) {
        acc *= seed;
        roots[i] = acc;
    }
    for (int it = 0; it < 200; ++it) {
        double moved = 0;
        for (int i = 0; i < d; ++i) {
            Complex val = 0.0;
            for (int k = d; k >= 0; --k) val = val * roots[i] + cs[k];
            Complex den = cs[d];
            for (int j = 0; j < d; ++j)
                if (j != i) den *= roots[i] - roots[j];
            Complex delta = val / den;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return roots;
}

// 2-D chart integral over the support square of the form, optionally in a
// frame rotated so a straight branch ray becomes {eta = 0, xi > 0}; the
// outer variable is split at the cut and at interior dlog singularities
IntegralResult integrate_chart(const std::function<Complex(Complex)>& fn, Complex center,
                               double radius, std::optional<std::pair<Complex, Complex>> cut,
                               const std::vector<Complex>& singular_points,
                               const QuadratureSettings& cfg) {
    Complex frame_origin = cut ? cut->first : center;
    Complex dir = cut ? cut->second : Complex(1.0, 0.0);
    dir /= std::abs(dir);
    Complex cprime = (center - frame_origin) / dir;
    double L = radius * 1.0001;
    double xi_lo = cprime.real() - L, xi_hi = cprime.real() + L;
    double eta_lo = cprime.imag() - L, eta_hi = cprime.imag() + L;

    std::vector<double> cuts{eta_lo, eta_hi};
    if (cut && eta_lo < 0.0 && eta_hi > 0.0) cuts.push_back(0.0);
    for (Complex p : singular_points) {
        double eta = ((p - frame_origin) / dir).imag();
        if (eta > eta_lo + 1e-12 && eta < eta_hi - 1e-12) cuts.push_back(eta);
    }
    std::sort(cuts.begin(), cuts.end());

    IntegralResult total;
    for (size_t b = 0; b + 1 < cuts.size(); ++b) {
        double e0 = cuts[b], e1 = cuts[b + 1];
        if (e1 - e0 < 1e-13) continue;
        IntegralResult band = integrate_01_soft(
            [&](double sy) {
                double eta = e0 + (e1 - e0) * sy;
                IntegralResult inner = integrate_01_soft(
                    [&](double sx) {
                        double xi = xi_lo + (xi_hi - xi_lo) * sx;
                        Complex t = frame_origin + dir * Complex(xi, eta);
                        return fn(t) * (xi_hi - xi_lo);
                    },
                    cfg, cfg.target_abs_tol_2d / 8);
                return inner.value * (e1 - e0);
            },
            cfg, cfg.target_abs_tol_2d);
        total.value += band.value;
        total.error += band.error;
    }
    return total;
}

// linear coordinate a t + b (over constants) if the map has that shape
std::optional<std::pair<Complex, Complex>> linear_shape(const RF& f) {
    RF r = f.reduced();
    if (!r.den.is_constant() || r.num.deg_in(0) > 1) return std::nullopt;
    Complex den = r.den.eval_complex({0.0, 0.0, 0.0});
    Complex b = 0.0, a = 0.0;
    for (auto& [e, c] : r.num.terms()) {
        if (e[0] == 0) b = c.embed();
        if (e[0] == 1) a = c.embed();
    }
    if (a == Complex(0.0, 0.0)) return std::nullopt;
    return std::make_pair(a / den, b / den);
}

// T_f ray of a linear map: root and direction
std::optional<std::pair<Complex, Complex>> linear_ray(const RF& f) {
    auto ab = linear_shape(f);
    if (!ab) return std::nullopt;
    auto [a, b] = *ab;
    return std::make_pair(-b / a, -1.0 / a);
}

IntegralResult integrate_on_ray(const std::function<Complex(Complex, Complex)>& fn, Complex root,
                                Complex dir, Complex center, double radius,
                                const QuadratureSettings& cfg) {
    // clip the ray {root + dir u : u > 0} to the support disc
    Complex d = dir / std::abs(dir);
    double proj = ((center - root) / d).real();
    double lo = std::max(0.0, proj - radius * 1.01), hi = std::max(0.0, proj + radius * 1.01);
    if (hi <= lo) return {};
    return integrate_01(
        [&](double s) {
            double u = lo + (hi - lo) * s;
            Complex t = root + d * u;
            return fn(t, d) * (hi - lo);
        },
        cfg, cfg.target_abs_tol);
}

}  // namespace

Complex stokes_residual(const ParamCycle& z, const TestForm& phi, const QuadratureSettings& cfg) {
    if (z.nparams != 1 || z.kind != BaseKind::Curve)
        throw NotASymbolGraph("stokes residual needs a curve-base symbol graph");
    int n = z.n();
    if (n != 1 && n != 2) throw NotASymbolGraph("stokes residual implements n = 1, 2");

    Fn1 f1(z.cube_coords[0].reduced());
    auto cut1 = linear_ray(z.cube_coords[0]);
    std::optional<std::pair<Complex, Complex>> chart_cut;
    if (cut1) chart_cut = *cut1;

    std::vector<Complex> sing;
    for (const RF& c : z.cube_coords) {
        for (Complex r : numeric_roots(c.reduced().num)) sing.push_back(r);
        for (Complex r : numeric_roots(c.reduced().den)) sing.push_back(r);
    }

    if (n == 1) {
        // calibrated: d[log f] = dlog f + 2 pi i delta_{T_f}, T oriented 0 -> inf
        // against phi = P dx + Q dy: -int log f dphi = int dlog f ^ phi + 2 pi i int_T phi
        IntegralResult lhs = integrate_chart(
            [&](Complex t) {
                Complex dphi = phi.degree == 1
                                   ? (phi.amp_dy * phi.bump_dx(t) - phi.amp_dx * phi.bump_dy(t))
                                   : Complex(0.0, 0.0);
                return -std::log(f1.val(t)) * dphi;
            },
            phi.center, phi.radius, chart_cut, sing, cfg);
        IntegralResult omega = integrate_chart(
            [&](Complex t) {
                Complex P = phi.amp_dx * phi.bump(t), Q = phi.amp_dy * phi.bump(t);
                return f1.dlog(t) * (Complex(0.0, -1.0) * P + Q);
            },
            phi.center, phi.radius, std::nullopt, sing, cfg);
        Complex tterm{0.0, 0.0};
        if (cut1) {
            IntegralResult ray = integrate_on_ray(
                [&](Complex t, Complex d) {
                    Complex P = phi.amp_dx * phi.bump(t), Q = phi.amp_dy * phi.bump(t);
                    return P * d.real() + Q * d.imag();
                },
                cut1->first, cut1->second, phi.center, phi.radius, cfg);
            tterm = ray.value;
        }
        // calibrated: d[log f] = dlog f + 2 pi i delta_{T_f} with T oriented
        // from f = 0 toward f = infinity
        return lhs.value - (omega.value + Complex(0.0, 2.0 * M_PI) * tterm);
    }

    // n = 2: d[R](phi) = R(dphi) for the 1-current R; the identity reads
    // R(dphi) = -(2 pi i)^2 delta_T(phi) - 2 pi i R_{del_B z}(phi)
    // (Omega = dlog f1 ^ dlog f2 vanishes identically on a curve)
    Fn1 f2(z.cube_coords[1].reduced());
    IntegralResult smooth = integrate_chart(
        [&](Complex t) {
            Complex dphix = phi.amp0 * phi.bump_dx(t);
            Complex dphiy = phi.amp0 * phi.bump_dy(t);
            return std::log(f1.val(t)) * f2.dlog(t) *
                   (Complex(0.0, -1.0) * dphix + dphiy);
        },
        phi.center, phi.radius, chart_cut, sing, cfg);
    Complex deltapart{0.0, 0.0};
    if (cut1) {
        IntegralResult ray = integrate_on_ray(
            [&](Complex t, Complex d) {
                Complex dphix = phi.amp0 * phi.bump_dx(t);
                Complex dphiy = phi.amp0 * phi.bump_dy(t);
                return std::log(f2.val(t)) * (dphix * d.real() + dphiy * d.imag());
            },
            cut1->first, cut1->second, phi.center, phi.radius, cfg);
        deltapart = ray.value;
    }
    Complex lhs = smooth.value + kCrossSign * Complex(0.0, -2.0 * M_PI) * deltapart;

    // delta_{T_z}: T_{f1} n T_{f2} intersection points of the two rays
    Complex t_term{0.0, 0.0};
    auto cut2 = linear_ray(z.cube_coords[1]);
    if (cut1 && cut2) {
        // solve root1 + d1 u = root2 + d2 v with u, v > 0
        Complex d1 = cut1->second / std::abs(cut1->second);
        Complex d2 = cut2->second / std::abs(cut2->second);
        double det = d1.real() * (-d2.imag()) - (-d2.real()) * d1.imag();
        if (std::abs(det) > 1e-12) {
            Complex rhs = cut2->first - cut1->first;
            double u = (rhs.real() * (-d2.imag()) - (-d2.real()) * rhs.imag()) / det;
            double v = (d1.real() * rhs.imag() - d1.imag() * rhs.real()) / det;
            if (u > 0 && v > 0) {
                Complex q = cut1->first + d1 * u;
                double cross = d1.real() * d2.imag() - d1.imag() * d2.real();
                double sgn = cross >= 0 ? 1.0 : -1.0;
                t_term += sgn * phi.amp0 * phi.bump(q);
            }
        }
    }

    // R of the boundary chain: signed log values at the boundary points,
    // located numerically on the chart (the symbolic boundary components
    // carry coordinate values but not base-point positions)
    Complex bsum{0.0, 0.0};
    for (int j = 1; j <= 2; ++j) {
        RF c = z.cube_coords[j - 1].reduced();
        double sign_j = (j % 2 == 0) ? 1.0 : -1.0;
        for (int which = 0; which < 2; ++which) {
            double facet_sign = which == 0 ? 1.0 : -1.0;  // del_0 minus del_inf
            int other = (j == 1) ? 2 : 1;
            for (Complex root : numeric_roots(which == 0 ? c.num : c.den)) {
                Complex g = eval_rf(z.cube_coords[other - 1], root);
                if (std::abs(g - Complex(1.0, 0.0)) < 1e-12) continue;  // outside the cube
                bsum += sign_j * facet_sign * std::log(g) * phi.amp0 * phi.bump(root);
            }
        }
    }

    Complex rhs = -Complex(0.0, 2.0 * M_PI) * Complex(0.0, 2.0 * M_PI) * t_term -
                  Complex(0.0, 2.0 * M_PI) * bsum;
    return lhs - rhs;
}

ParamCycle restrict_to_fiber(const ParamCycle& z, const PValue& s0) {
    if (z.kind != BaseKind::Surface || z.nparams != 2)
        throw NonProductBase("fiber restriction needs a two-parameter product base");
    ParamCycle out;
    out.kind = BaseKind::Curve;
    out.nparams = 1;
    out.field = z.field;
    out.multiplicity = z.multiplicity;
    out.base_label = z.base_label + "|fiber";
    auto restrict_rf = [&](const RF& f) { return f.subst_point(0, s0).drop_var(0); };
    for (const RF& x : z.x_coords) out.x_coords.push_back(restrict_rf(x));
    for (const RF& c : z.cube_coords) out.cube_coords.push_back(restrict_rf(c));
    for (const ExcludedLocus& ex : z.excluded)
        if (ex.var == 1) out.excluded.push_back({0, ex.value});
    return out;
}

SlicedTriple slice_over_base(const ParamCycle& z, const Membrane& g_in_s,
                             const QuadratureSettings& cfg) {
    if (z.kind != BaseKind::Surface || z.nparams != 2)
        throw NonProductBase("slice needs a two-parameter product base");
    SlicedTriple out;
    ParamCycle cycle = z;
    out.pair = [cycle, g_in_s, cfg](const Membrane& fiber_g,
                                    const QuadratureSettings& cfg2) -> IntegralResult {
        if (fiber_g.dim != 1 || g_in_s.dim != 1)
            throw NonProductBase("sliced pairing supports path x path products");
        // iterated evaluation: outer over the S-path, inner over the fiber
        // path, of the n = 3 R-current term restricted to the product
        const ParamCycle& z2 = cycle;
        if (z2.n() != 3) throw NotASymbolGraph("sliced pairing implements n = 3");
        std::vector<RF> f = z2.cube_coords;
        std::vector<RF> fs, fw;
        for (auto& c : f) {
            fs.push_back(c.derivative(0));
            fw.push_back(c.derivative(1));
        }
        IntegralResult total;
        for (size_t so = 0; so + 1 < g_in_s.path.size(); ++so) {
            Complex a = g_in_s.path[so], b = g_in_s.path[so + 1];
            IntegralResult outer = integrate_01(
                [&](double ss) {
                    Complex s = a + (b - a) * ss;
                    Complex ds = b - a;
                    IntegralResult inner{{0.0, 0.0}, 0.0};
                    for (size_t wo = 0; wo + 1 < fiber_g.path.size(); ++wo) {
                        Complex c0 = fiber_g.path[wo], c1 = fiber_g.path[wo + 1];
                        IntegralResult seg = integrate_01(
                            [&](double ww) {
                                Complex w = c0 + (c1 - c0) * ww;
                                Complex dw = c1 - c0;
                                std::array<Complex, 3> pt{s, w, 0.0};
                                auto dl = [&](int j, const std::vector<RF>& dv) {
                                    return dv[j].eval_complex(pt) / f[j].eval_complex(pt);
                                };
                                // pullback of dlog f2 ^ dlog f3 onto (s, w)
                                Complex wedge =
                                    dl(1, fs) * dl(2, fw) - dl(1, fw) * dl(2, fs);
                                return std::log(f[0].eval_complex(pt)) * wedge * ds * dw;
                            },
                            cfg2, cfg2.target_abs_tol);
                        inner.value += seg.value;
                        inner.error += seg.error;
                    }
                    return inner.value;
                },
                cfg2, cfg2.target_abs_tol);
            total.value += outer.value;
            total.error += outer.error;
        }
        return total;
    };
    return out;
}

/* ------------------------------ dlog residues ------------------------------ */

DlogForm DlogForm::wedge(const std::vector<int>& idx, Rat coeff) {
    DlogForm f;
    f.terms.push_back({std::move(coeff), idx});
    return f;
}

DlogForm operator+(const DlogForm& a, const DlogForm& b) {
    DlogForm out = a;
    for (auto& t : b.terms) out.terms.push_back(t);
    return out.canonical();
}

DlogForm DlogForm::canonical() const {
    DlogForm out;
    for (const Term& t : terms) {
        Term s = t;
        // insertion sort tracking the permutation sign
        int sign = 1;
        for (size_t i = 1; i < s.idx.size(); ++i)
            for (size_t j = i; j > 0 && s.idx[j - 1] > s.idx[j]; --j) {
                std::swap(s.idx[j - 1], s.idx[j]);
                sign = -sign;
            }
        bool repeated = false;
        for (size_t i = 1; i < s.idx.size(); ++i)
            if (s.idx[i] == s.idx[i - 1]) repeated = true;
        if (repeated) continue;
        s.coeff *= rat(sign);
        bool merged = false;
        for (Term& have : out.terms)
            if (have.idx == s.idx) {
                have.coeff += s.coeff;
                merged = true;
                break;
            }
        if (!merged) out.terms.push_back(s);
    }
    std::erase_if(out.terms, [](const Term& t) { return t.coeff == 0; });
    return out;
}

Rat dlog_residue(const DlogForm& form, const std::vector<int>& flag) {
    DlogForm cur = form.canonical();
    for (int var : flag) {
        DlogForm next;
        for (auto& t : cur.terms) {
            auto it = std::find(t.idx.begin(), t.idx.end(), var);
            if (it == t.idx.end()) continue;  // regular along this divisor
            int pos = (int)(it - t.idx.begin());
            DlogForm::Term s;
            s.coeff = t.coeff * rat(pos % 2 == 0 ? 1 : -1);
            for (int v : t.idx)
                if (v != var) s.idx.push_back(v);
            next.terms.push_back(s);
        }
        if (next.terms.empty())
            throw FlagNotInPolarLocus("no dlog factor along coordinate " + std::to_string(var));
        cur = next.canonical();
        if (cur.terms.empty()) return rat(0);
    }
    for (auto& t : cur.terms)
        if (!t.idx.empty())
            throw FlagNotInPolarLocus("flag shorter than the form degree; residue is a form");
    Rat total(0);
    for (auto& t : cur.terms) total += t.coeff;
    return total;
}

}  // namespace reglab
