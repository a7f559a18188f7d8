#include "reglab/mpoly.hpp"

#include <sstream>

#include "reglab/errors.hpp"

namespace reglab {

MPoly MPoly::constant(const ExtElem& c, int nvars) {
    MPoly p(nvars);
    if (!c.is_zero()) p.t_[{0, 0, 0}] = c;
    return p;
}

MPoly MPoly::var(int v, int nvars) {
    MPoly p(nvars);
    Expo e{0, 0, 0};
    e[v] = 1;
    p.t_[e] = ExtElem(CycloNum(rat(1)));
    return p;
}

bool MPoly::is_constant() const {
    for (auto& [e, c] : t_)
        if (e != Expo{0, 0, 0}) return false;
    return true;
}

ExtElem MPoly::constant_part() const {
    auto it = t_.find({0, 0, 0});
    return it == t_.end() ? ExtElem() : it->second;
}

int MPoly::deg_in(int v) const {
    int d = 0;
    for (auto& [e, c] : t_) d = std::max(d, e[v]);
    return d;
}

int MPoly::total_degree() const {
    int d = 0;
    for (auto& [e, c] : t_) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

void MPoly::add_term(const Expo& e, const ExtElem& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_[e] = c;
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) t_.erase(it);
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly out = a;
    out.nvars_ = std::max(a.nvars_, b.nvars_);
    for (auto& [e, c] : b.t_) out.add_term(e, c);
    return out;
}

MPoly operator-(const MPoly& a, const MPoly& b) {
    MPoly out = a;
    out.nvars_ = std::max(a.nvars_, b.nvars_);
    for (auto& [e, c] : b.t_) out.add_term(e, -c);
    return out;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out(std::max(a.nvars_, b.nvars_));
    for (auto& [ea, ca] : a.t_)
        for (auto& [eb, cb] : b.t_) {
            MPoly::Expo e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            out.add_term(e, ca * cb);
        }
    return out;
}

MPoly operator*(const ExtElem& s, const MPoly& a) {
    MPoly out(a.nvars_);
    if (s.is_zero()) return out;
    for (auto& [e, c] : a.t_) out.add_term(e, s * c);
    return out;
}

MPoly MPoly::operator-() const {
    MPoly out(nvars_);
    for (auto& [e, c] : t_) out.t_[e] = -c;
    return out;
}

MPoly MPoly::derivative(int v) const {
    MPoly out(nvars_);
    for (auto& [e, c] : t_) {
        if (e[v] == 0) continue;
        Expo e2 = e;
        e2[v] -= 1;
        ExtElem n = c;
        ExtElem acc;
        for (int k = 0; k < e[v]; ++k) acc = acc + c.one();
        out.add_term(e2, acc * c);
    }
    return out;
}

MPoly MPoly::pow(int e) const {
    MPoly acc = constant(ExtElem(CycloNum(rat(1))), nvars_);
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

MPoly MPoly::subst_homog(int v, const MPoly& n, const MPoly& d, int cap) const {
    // precompute powers
    std::vector<MPoly> np(cap + 1), dp(cap + 1);
    np[0] = dp[0] = constant(ExtElem(CycloNum(rat(1))), std::max(nvars_, n.nvars()));
    for (int i = 1; i <= cap; ++i) {
        np[i] = np[i - 1] * n;
        dp[i] = dp[i - 1] * d;
    }
    MPoly out(std::max(nvars_, n.nvars()));
    for (auto& [e, c] : t_) {
        int k = e[v];
        Expo e2 = e;
        e2[v] = 0;
        MPoly mono(out.nvars());
        mono.add_term(e2, c);
        out = out + mono * np[k] * dp[cap - k];
    }
    return out;
}

MPoly MPoly::subst_const(int v, const ExtElem& c) const {
    MPoly out(nvars_);
    for (auto& [e, coef] : t_) {
        ExtElem scaled = coef;
        for (int k = 0; k < e[v]; ++k) scaled = scaled * c;
        Expo e2 = e;
        e2[v] = 0;
        out.add_term(e2, scaled);
    }
    return out;
}

MPoly MPoly::drop_var(int v) const {
    MPoly out(nvars_ - 1);
    for (auto& [e, c] : t_) {
        if (e[v] != 0) throw Error("drop_var: polynomial still depends on the variable");
        Expo e2{0, 0, 0};
        int j = 0;
        for (int i = 0; i < nvars_; ++i) {
            if (i == v) continue;
            e2[j++] = e[i];
        }
        out.add_term(e2, c);
    }
    return out;
}

MPoly MPoly::insert_var(int v) const {
    MPoly out(nvars_ + 1);
    for (auto& [e, c] : t_) {
        Expo e2{0, 0, 0};
        int j = 0;
        for (int i = 0; i < nvars_ + 1; ++i) {
            if (i == v) continue;
            e2[i] = e[j++];
        }
        out.add_term(e2, c);
    }
    return out;
}

MPoly MPoly::rebased(const std::shared_ptr<const ExtField>& nf) const {
    MPoly out(nvars_);
    for (auto& [e, c] : t_) out.add_term(e, c.rebased(nf));
    return out;
}

std::complex<double> MPoly::eval_complex(const std::array<std::complex<double>, 3>& x,
                                         int root_index) const {
    std::complex<double> acc(0.0, 0.0);
    for (auto& [e, c] : t_) {
        std::complex<double> term = c.embed(root_index);
        for (int v = 0; v < 3; ++v)
            for (int k = 0; k < e[v]; ++k) term *= x[v];
        acc += term;
    }
    return acc;
}

ExtElem MPoly::eval0() const {
    if (!is_constant()) throw Error("eval0 on a non-constant polynomial");
    return constant_part();
}

UPoly<ExtElem> MPoly::to_upoly(int v) const {
    UPoly<ExtElem> out;
    for (auto& [e, c] : t_) {
        for (int i = 0; i < nvars_; ++i)
            if (i != v && e[i] != 0) throw Error("to_upoly: polynomial not univariate");
        ExtElem cur = out.coeff(e[v]);
        out.set_coeff(e[v], cur + c);
    }
    return out;
}

MPoly MPoly::from_upoly(const UPoly<ExtElem>& p, int v, int nvars) {
    MPoly out(nvars);
    for (int i = 0; i <= p.degree(); ++i) {
        Expo e{0, 0, 0};
        e[v] = i;
        out.add_term(e, p.coeff(i));
    }
    return out;
}

std::string MPoly::to_string(const std::array<const char*, 3>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : t_) {
        if (!first) os << " + ";
        os << "(" << c.to_string() << ")";
        for (int v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            os << "*" << names[v];
            if (e[v] > 1) os << "^" << e[v];
        }
        first = false;
    }
    return os.str();
}

/* ------------------------------- RF ------------------------------- */

RF RF::constant(const ExtElem& c, int nvars) {
    return {MPoly::constant(c, nvars), MPoly::constant(ExtElem(CycloNum(rat(1))), nvars)};
}

RF RF::infinity(int nvars) {
    return {MPoly::constant(ExtElem(CycloNum(rat(1))), nvars), MPoly(nvars)};
}

RF RF::var(int v, int nvars) {
    return {MPoly::var(v, nvars), MPoly::constant(ExtElem(CycloNum(rat(1))), nvars)};
}

bool RF::is_identically(const ExtElem& c) const {
    return (num - MPoly::constant(c, nvars()) * den).is_zero() && !den.is_zero();
}

RF operator+(const RF& a, const RF& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
RF operator-(const RF& a, const RF& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
RF operator*(const RF& a, const RF& b) { return {a.num * b.num, a.den * b.den}; }
RF operator/(const RF& a, const RF& b) { return {a.num * b.den, a.den * b.num}; }
RF RF::operator-() const { return {-num, den}; }

bool RF::same_function(const RF& o) const {
    return (num * o.den - o.num * den).is_zero();
}

RF RF::subst(int v, const RF& value) const {
    int cap = std::max(num.deg_in(v), den.deg_in(v));
    return {num.subst_homog(v, value.num, value.den, cap),
            den.subst_homog(v, value.num, value.den, cap)};
}

RF RF::subst_point(int v, const PValue& value) const {
    int cap = std::max(num.deg_in(v), den.deg_in(v));
    MPoly n = MPoly::constant(value.a, nvars());
    MPoly d = MPoly::constant(value.b, nvars());
    return {num.subst_homog(v, n, d, cap), den.subst_homog(v, n, d, cap)};
}

RF RF::drop_var(int v) const { return {num.drop_var(v), den.drop_var(v)}; }
RF RF::insert_var(int v) const { return {num.insert_var(v), den.insert_var(v)}; }

RF RF::derivative(int v) const {
    return {num.derivative(v) * den - num * den.derivative(v), den * den};
}

RF RF::rebased(const std::shared_ptr<const ExtField>& nf) const {
    return {num.rebased(nf), den.rebased(nf)};
}

RF RF::reduced() const {
    // univariate (or constant) reduction only; multivariate pairs are kept raw
    int used = -1;
    for (int v = 0; v < nvars(); ++v)
        if (num.depends_on(v) || den.depends_on(v)) {
            if (used >= 0) return *this;
            used = v;
        }
    if (used < 0) return *this;
    try {
        UPoly<ExtElem> n = num.to_upoly(used), d = den.to_upoly(used);
        if (n.is_zero() || d.is_zero()) return *this;
        UPoly<ExtElem> g = UPoly<ExtElem>::gcd(n, d);
        if (g.degree() <= 0) return *this;
        RF out;
        out.num = MPoly::from_upoly(n / g, used, nvars());
        out.den = MPoly::from_upoly(d / g, used, nvars());
        return out;
    } catch (const SplitNeeded&) {
        return *this;  // ambiguous over a reducible modulus: leave unreduced
    }
}

std::complex<double> RF::eval_complex(const std::array<std::complex<double>, 3>& x,
                                      int root_index) const {
    return num.eval_complex(x, root_index) / den.eval_complex(x, root_index);
}

std::string RF::to_string() const {
    if (den.is_constant() && !den.is_zero()) {
        ExtElem d = den.constant_part();
        bool is_one = (d - d.one()).is_zero();
        if (is_one) return num.to_string();
    }
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

/* ------------------------------ PValue ------------------------------ */

bool PValue::equals_value(const PValue& o) const {
    return (a * o.b - o.a * b).is_zero_split();
}

bool PValue::is_one_split() const { return (a - b).is_zero_split() && !b.is_zero(); }
bool PValue::is_zero_split() const { return a.is_zero_split() && !b.is_zero(); }
bool PValue::is_inf_split() const { return b.is_zero_split() && !a.is_zero(); }

std::complex<double> PValue::eval_complex(int root_index) const {
    return a.embed(root_index) / b.embed(root_index);
}

std::string PValue::to_string() const {
    if (b.is_zero()) return "inf";
    return (a * b.inverse()).to_string();
}

PValue rf_value_at0(const RF& f) { return {f.num.eval0(), f.den.eval0()}; }

}  // namespace reglab
