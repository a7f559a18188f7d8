#ifndef REGLAB_CYCLOTOMIC_HPP
#define REGLAB_CYCLOTOMIC_HPP

#include <complex>
#include <vector>

#include "reglab/rational.hpp"

namespace reglab {

int euler_phi(int n);

// Element of Q(zeta_N) in the power basis 1, z, ..., z^{phi(N)-1} modulo the
// N-th cyclotomic polynomial. Arithmetic between different conductors
// promotes both sides to the lcm.
class CycloNum {
public:
    CycloNum() : conductor_(1), c_(1) {}
    explicit CycloNum(const Rat& r, int conductor = 1);
    static CycloNum zeta(int N, long power = 1);

    int conductor() const { return conductor_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_part() const;  // valid when is_rational()
    CycloNum one() const { return CycloNum(rat(1), conductor_); }

    CycloNum promoted(int M) const;  // conductor_ | M
    static int common_conductor(const CycloNum& a, const CycloNum& b);

    CycloNum operator-() const;
    CycloNum inverse() const;  // throws ZeroFunction on 0
    CycloNum pow(long e) const;

    std::complex<double> embed() const;  // zeta_N -> exp(2 pi i / N)
    // exact: some power equals 1; order returned if requested
    bool is_root_of_unity(int* order = nullptr) const;

    std::string to_string() const;

    // monic rational coefficients of Phi_N, ascending degree
    static const std::vector<Rat>& cyclotomic_poly(int N);

    friend CycloNum operator+(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator-(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator/(const CycloNum& a, const CycloNum& b);
    friend bool operator==(const CycloNum& a, const CycloNum& b);

private:
    int conductor_;
    std::vector<Rat> c_;  // length euler_phi(conductor_)

    static std::vector<Rat> reduce_mod_phi(std::vector<Rat> poly, int N);
};

inline CycloNum cyclo(long n, long d = 1) { return CycloNum(rat(n, d)); }

}  // namespace reglab

#endif
