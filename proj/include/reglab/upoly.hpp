#ifndef REGLAB_UPOLY_HPP
#define REGLAB_UPOLY_HPP

#include <vector>

#include "reglab/errors.hpp"

namespace reglab {

// Dense univariate polynomial over an exact field F. F needs default
// construction (zero), +, -, *, inverse(), is_zero(), ==.
template <class F>
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(F c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static UPoly x() {
        UPoly p;
        p.c_.resize(2);
        p.c_[1] = p.c_[1].one();
        return p;
    }

    int degree() const { return (int)c_.size() - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const F& coeff(int i) const {
        static const F zero{};
        return (i < 0 || i >= (int)c_.size()) ? zero : c_[i];
    }
    const std::vector<F>& coeffs() const { return c_; }
    const F& lead() const { return c_.back(); }

    void set_coeff(int i, F v) {
        if ((int)c_.size() <= i) c_.resize(i + 1);
        c_[i] = std::move(v);
        trim();
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<F> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff((int)i) + b.coeff((int)i);
        return UPoly(std::move(c));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<F> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff((int)i) - b.coeff((int)i);
        return UPoly(std::move(c));
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<F> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return UPoly(std::move(c));
    }
    friend UPoly operator*(const F& s, const UPoly& a) {
        std::vector<F> c(a.c_.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = s * a.c_[i];
        return UPoly(std::move(c));
    }
    UPoly operator-() const {
        std::vector<F> c(c_.size());
        for (size_t i = 0; i < c.size(); ++i) c[i] = F() - c_[i];
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return (a - b).is_zero(); }

    // quotient and remainder; divisor lead must be invertible (may throw)
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
        if (b.is_zero()) throw ZeroFunction("polynomial division by zero");
        F inv = b.lead().inverse();
        std::vector<F> rem = a.c_;
        std::vector<F> quo(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
        for (int i = (int)rem.size() - 1; i >= b.degree(); --i) {
            if (rem[i].is_zero()) continue;
            F f = rem[i] * inv;
            quo[i - b.degree()] = f;
            for (size_t j = 0; j < b.c_.size(); ++j)
                rem[i - b.degree() + j] = rem[i - b.degree() + j] - f * b.c_[j];
        }
        q = UPoly(std::move(quo));
        r = UPoly(std::move(rem));
    }
    friend UPoly operator%(const UPoly& a, const UPoly& b) {
        UPoly q, r;
        divmod(a, b, q, r);
        return r;
    }
    friend UPoly operator/(const UPoly& a, const UPoly& b) {
        UPoly q, r;
        divmod(a, b, q, r);
        return q;
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return lead().inverse() * *this;
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<F> c(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) {
            F n{};
            for (size_t k = 0; k < i; ++k) n = n + c_[i].one();  // i as a field element
            c[i - 1] = n * c_[i];
        }
        return UPoly(std::move(c));
    }

    F eval(const F& x) const {
        F acc{};
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = a % b;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    // extended euclid: returns g monic with s a + t b = g
    static UPoly ext_gcd(const UPoly& a, const UPoly& b, UPoly& s, UPoly& t) {
        UPoly r0 = a, r1 = b;
        UPoly s0{a.unit_one()}, s1, t0, t1{a.unit_one()};
        if (a.is_zero()) s0 = UPoly();
        if (a.is_zero() && b.is_zero()) { s = t = UPoly(); return UPoly(); }
        while (!r1.is_zero()) {
            UPoly q, r;
            divmod(r0, r1, q, r);
            UPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
            r0 = std::move(r1); r1 = std::move(r);
            s0 = std::move(s1); s1 = std::move(s2);
            t0 = std::move(t1); t1 = std::move(t2);
        }
        F inv = r0.lead().inverse();
        s = inv * s0;
        t = inv * t0;
        return inv * r0;
    }

    // squarefree decomposition (Yun): list of (factor, multiplicity)
    static std::vector<std::pair<UPoly, int>> squarefree(const UPoly& f);

private:
    std::vector<F> c_;

    UPoly unit_one() const {
        F o = F().one();
        return UPoly(o);
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

template <class F>
std::vector<std::pair<UPoly<F>, int>> UPoly<F>::squarefree(const UPoly<F>& f) {
    std::vector<std::pair<UPoly<F>, int>> out;
    if (f.degree() <= 0) return out;
    UPoly<F> a = f.monic();
    UPoly<F> g = gcd(a, a.derivative());
    UPoly<F> w = a / g;
    int mult = 1;
    while (w.degree() > 0) {
        UPoly<F> y = gcd(w, g);
        UPoly<F> factor = w / y;
        if (factor.degree() > 0) out.push_back({factor.monic(), mult});
        w = std::move(y);
        g = g / w;
        ++mult;
    }
    if (g.degree() > 0) {
        // leftover of p-th powers cannot happen in characteristic zero
        throw Error("squarefree decomposition failed");
    }
    return out;
}

}  // namespace reglab

#endif
