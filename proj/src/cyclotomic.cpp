#include "reglab/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "reglab/errors.hpp"

namespace reglab {

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

/* dense polynomial helpers on Rat vectors, ascending degree */

static void trim(std::vector<Rat>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

static std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// division by a monic divisor; remainder left in a, quotient returned
static std::vector<Rat> poly_divmod_monic(std::vector<Rat>& a, const std::vector<Rat>& m) {
    trim(a);
    if (a.size() < m.size()) return {};
    std::vector<Rat> q(a.size() - m.size() + 1);
    for (int i = (int)a.size() - 1; i >= (int)m.size() - 1; --i) {
        Rat f = a[i];
        if (f == 0) continue;
        q[i - (int)m.size() + 1] = f;
        for (size_t j = 0; j < m.size(); ++j) a[i - (int)m.size() + 1 + j] -= f * m[j];
    }
    trim(a);
    return q;
}

const std::vector<Rat>& CycloNum::cyclotomic_poly(int N) {
    static std::map<int, std::vector<Rat>> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    // (x^N - 1) / prod_{d | N, d < N} Phi_d
    std::vector<Rat> num(N + 1);
    num[0] = -1;
    num[N] = 1;
    for (int d = 1; d < N; ++d) {
        if (N % d) continue;
        num = poly_divmod_monic(num, cyclotomic_poly(d));
    }
    return cache.emplace(N, num).first->second;
}

std::vector<Rat> CycloNum::reduce_mod_phi(std::vector<Rat> poly, int N) {
    poly_divmod_monic(poly, cyclotomic_poly(N));
    poly.resize(euler_phi(N));
    return poly;
}

CycloNum::CycloNum(const Rat& r, int conductor) : conductor_(conductor) {
    c_.assign(euler_phi(conductor), Rat());
    c_[0] = r;
}

CycloNum CycloNum::zeta(int N, long power) {
    if (N <= 0) throw Error("zeta conductor must be positive");
    long e = ((power % N) + N) % N;
    std::vector<Rat> p(e + 1);
    p[e] = 1;
    CycloNum z;
    z.conductor_ = N;
    z.c_ = reduce_mod_phi(std::move(p), N);
    return z;
}

bool CycloNum::is_zero() const {
    for (const Rat& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat CycloNum::rational_part() const { return c_[0]; }

CycloNum CycloNum::promoted(int M) const {
    if (M == conductor_) return *this;
    if (M % conductor_ != 0) throw Error("cannot promote conductor");
    int step = M / conductor_;
    std::vector<Rat> p;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        size_t e = i * step;
        if (p.size() <= e) p.resize(e + 1);
        p[e] += c_[i];
    }
    CycloNum out;
    out.conductor_ = M;
    out.c_ = reduce_mod_phi(std::move(p), M);
    return out;
}

int CycloNum::common_conductor(const CycloNum& a, const CycloNum& b) {
    return std::lcm(a.conductor_, b.conductor_);
}

CycloNum operator+(const CycloNum& a, const CycloNum& b) {
    int m = CycloNum::common_conductor(a, b);
    CycloNum x = a.promoted(m), y = b.promoted(m);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
    return x;
}

CycloNum operator-(const CycloNum& a, const CycloNum& b) {
    int m = CycloNum::common_conductor(a, b);
    CycloNum x = a.promoted(m), y = b.promoted(m);
    for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
    return x;
}

CycloNum CycloNum::operator-() const {
    CycloNum x = *this;
    for (Rat& v : x.c_) v = -v;
    return x;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    int m = CycloNum::common_conductor(a, b);
    CycloNum x = a.promoted(m), y = b.promoted(m);
    std::vector<Rat> prod = poly_mul(x.c_, y.c_);
    CycloNum out;
    out.conductor_ = m;
    out.c_ = CycloNum::reduce_mod_phi(std::move(prod), m);
    return out;
}

CycloNum CycloNum::inverse() const {
    if (is_zero()) throw ZeroFunction("inverse of zero cyclotomic number");
    // extended euclid in Q[x]: s * this = 1 mod Phi_N (Phi_N irreducible)
    std::vector<Rat> r0(cyclotomic_poly(conductor_)), r1(c_);
    trim(r1);
    std::vector<Rat> s0 = {}, s1 = {Rat(1)};
    while (r1.size() > 1) {
        Rat lead = r1.back();
        std::vector<Rat> r1m = r1;
        for (Rat& v : r1m) v /= lead;
        std::vector<Rat> rem = r0;
        std::vector<Rat> q = poly_divmod_monic(rem, r1m);
        for (Rat& v : q) v /= lead;
        std::vector<Rat> s_new = s0;
        std::vector<Rat> qs = poly_mul(q, s1);
        if (s_new.size() < qs.size()) s_new.resize(qs.size());
        for (size_t i = 0; i < qs.size(); ++i) s_new[i] -= qs[i];
        trim(s_new);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s_new);
        if (r1.empty()) throw Error("cyclotomic inverse: zero remainder before unit");
    }
    Rat lead = r1[0];
    for (Rat& v : s1) v /= lead;
    CycloNum out;
    out.conductor_ = conductor_;
    out.c_ = reduce_mod_phi(std::move(s1), conductor_);
    return out;
}

CycloNum operator/(const CycloNum& a, const CycloNum& b) {
    int m = CycloNum::common_conductor(a, b);
    return a.promoted(m) * b.promoted(m).inverse();
}

bool operator==(const CycloNum& a, const CycloNum& b) {
    int m = CycloNum::common_conductor(a, b);
    return a.promoted(m).coeffs() == b.promoted(m).coeffs();
}

CycloNum CycloNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNum acc(rat(1), conductor_);
    CycloNum base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

std::complex<double> CycloNum::embed() const {
    std::complex<double> z = std::polar(1.0, 2.0 * M_PI / conductor_);
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * z + rat_to_double(c_[i]);
    return acc;
}

bool CycloNum::is_root_of_unity(int* order) const {
    if (is_zero()) return false;
    // torsion of Q(zeta_N)^x is generated by -zeta_N: order divides lcm(2, N)
    int bound = std::lcm(2, conductor_);
    CycloNum one{rat(1)};
    CycloNum acc = *this;
    for (int k = 1; k <= bound; ++k) {
        if (acc == one) {
            if (order) *order = k;
            return true;
        }
        acc = acc * *this;
    }
    return false;
}

std::string CycloNum::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i].get_str();
        if (i >= 1) os << "*z" << conductor_ << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace reglab
