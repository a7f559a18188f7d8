#include "reglab/extfield.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "reglab/errors.hpp"

namespace reglab {

ExtField::ExtField(UPoly<CycloNum> modulus) : modulus_(std::move(modulus)) {
    if (modulus_.degree() < 1) throw Error("extension modulus must have degree >= 1");
    modulus_ = modulus_.monic();
}

const std::vector<std::complex<double>>& ExtField::roots() const {
    if (!roots_.empty() || modulus_.degree() == 0) return roots_;
    // Durand-Kerner on the embedded coefficients
    int n = modulus_.degree();
    std::vector<std::complex<double>> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = modulus_.coeff(i).embed();
    std::vector<std::complex<double>> r(n);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> acc(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
        acc *= seed;
        r[i] = acc;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0.0;
        for (int i = n; i >= 0; --i) v = v * x + c[i];
        return v;
    };
    for (int iter = 0; iter < 300; ++iter) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            std::complex<double> denom(1.0, 0.0);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (r[i] - r[j]);
            std::complex<double> delta = eval(r[i]) / denom;
            r[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    std::sort(r.begin(), r.end(), [](auto a, auto b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    roots_ = r;
    return roots_;
}

ExtElem::ExtElem(const CycloNum& c) {
    if (!c.is_zero()) rep_ = UPoly<CycloNum>(c);
}

ExtElem::ExtElem(std::shared_ptr<const ExtField> fld, UPoly<CycloNum> rep)
    : fld_(std::move(fld)), rep_(std::move(rep)) {
    reduce();
}

ExtElem ExtElem::theta(const std::shared_ptr<const ExtField>& fld) {
    UPoly<CycloNum> x;
    x.set_coeff(1, CycloNum(rat(1)));
    return ExtElem(fld, x);
}

void ExtElem::reduce() {
    if (fld_ && rep_.degree() >= fld_->degree()) rep_ = rep_ % fld_->modulus();
}

ExtElem ExtElem::one() const {
    ExtElem o;
    o.fld_ = fld_;
    o.rep_ = UPoly<CycloNum>(CycloNum(rat(1)));
    return o;
}

void ExtElem::align(ExtElem& a, ExtElem& b) {
    if (a.fld_ == b.fld_) return;
    if (!a.fld_) {
        a.fld_ = b.fld_;
        return;
    }
    if (!b.fld_) {
        b.fld_ = a.fld_;
        return;
    }
    if (a.fld_->modulus() == b.fld_->modulus()) return;  // structurally equal
    throw Error("cannot mix elements of two different extensions");
}

ExtElem operator+(const ExtElem& a, const ExtElem& b) {
    ExtElem x = a, y = b;
    ExtElem::align(x, y);
    ExtElem out;
    out = ExtElem(x.fld_, x.rep_ + y.rep_);
    return out;
}

ExtElem operator-(const ExtElem& a, const ExtElem& b) {
    ExtElem x = a, y = b;
    ExtElem::align(x, y);
    return ExtElem(x.fld_, x.rep_ - y.rep_);
}

ExtElem operator*(const ExtElem& a, const ExtElem& b) {
    ExtElem x = a, y = b;
    ExtElem::align(x, y);
    return ExtElem(x.fld_, x.rep_ * y.rep_);
}

ExtElem ExtElem::operator-() const {
    ExtElem out;
    out.fld_ = fld_;
    out.rep_ = -rep_;
    return out;
}

ExtElem ExtElem::inverse() const {
    if (rep_.is_zero()) throw ZeroFunction("inverse of zero");
    if (!fld_ || rep_.degree() == 0)
        return ExtElem(fld_, UPoly<CycloNum>(rep_.coeff(0).inverse()));
    UPoly<CycloNum> s, t;
    UPoly<CycloNum> g = UPoly<CycloNum>::ext_gcd(rep_, fld_->modulus(), s, t);
    if (g.degree() > 0) throw SplitNeeded{g, fld_};
    // s * rep = 1 mod modulus (g is the constant 1 after normalization)
    return ExtElem(fld_, s);
}

bool ExtElem::is_zero_split() const {
    if (rep_.is_zero()) return true;
    if (!fld_ || rep_.degree() == 0) return false;
    UPoly<CycloNum> g = UPoly<CycloNum>::gcd(rep_, fld_->modulus());
    if (g.degree() == 0) return false;
    if (g.degree() == fld_->degree()) return true;  // divisible by the modulus
    throw SplitNeeded{g, fld_};
}

bool ExtElem::is_root_of_unity(int* order) const {
    if (rep_.is_zero()) return false;
    // phi(order) <= [L : Q] and phi(m) >= sqrt(m/2) bound the search
    int deg_over_q = std::max(1, fld_ ? fld_->degree() : 1);
    int cond = 1;
    for (const CycloNum& c : rep_.coeffs()) cond = std::lcm(cond, c.conductor());
    deg_over_q *= euler_phi(cond);
    int bound = 2 * deg_over_q * deg_over_q + 2;
    ExtElem acc = *this;
    ExtElem o = one();
    for (int k = 1; k <= bound; ++k) {
        if (acc == o) {
            if (order) *order = k;
            return true;
        }
        acc = acc * *this;
    }
    return false;
}

std::complex<double> ExtElem::embed(int root_index) const {
    std::complex<double> th(0.0, 0.0);
    if (fld_) {
        const auto& rs = fld_->roots();
        th = rs[root_index % rs.size()];
    }
    std::complex<double> acc(0.0, 0.0);
    for (int i = rep_.degree(); i >= 0; --i) acc = acc * th + rep_.coeff(i).embed();
    return acc;
}

std::string ExtElem::to_string() const {
    std::ostringstream os;
    if (rep_.is_zero()) return "0";
    bool first = true;
    for (int i = 0; i <= rep_.degree(); ++i) {
        if (rep_.coeff(i).is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << rep_.coeff(i).to_string() << ")";
        if (i == 1) os << "*th";
        if (i > 1) os << "*th^" << i;
        first = false;
    }
    return os.str();
}

ExtElem ExtElem::rebased(const std::shared_ptr<const ExtField>& nf) const {
    if (!nf) {
        if (rep_.degree() <= 0) return ExtElem(nullptr, rep_);
        throw Error("cannot rebase a non-constant element to the base field");
    }
    if (nf->degree() == 1) {
        // theta is a plain field value: substitute it
        CycloNum root = CycloNum() - nf->modulus().coeff(0);
        CycloNum acc;
        for (int i = rep_.degree(); i >= 0; --i) acc = acc * root + rep_.coeff(i);
        return ExtElem(nullptr, UPoly<CycloNum>(acc));
    }
    return ExtElem(nf, rep_ % nf->modulus());
}

}  // namespace reglab
