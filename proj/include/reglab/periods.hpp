#ifndef REGLAB_PERIODS_HPP
#define REGLAB_PERIODS_HPP

#include <complex>
#include <string>

#include "reglab/rational.hpp"

namespace reglab {

// A complex number considered in C / (2 pi i)^p Q.
struct PeriodValue {
    std::complex<double> value{0.0, 0.0};
    int p = 0;
    double error_estimate = 0.0;
};

struct ModQpResult {
    bool equal = false;
    Rat witness;       // the rational q with a - b = (2 pi i)^p q (best found)
    double residual = 0.0;
    std::string to_string() const;
};

std::complex<double> two_pi_i_pow(int p);

// exhaustive denominator-bounded search: q = r/s with |r| <= num_bound,
// 1 <= s <= denom_bound, minimizing |a - b - (2 pi i)^p q|
ModQpResult mod_qp_equal(const PeriodValue& a, const PeriodValue& b, long num_bound,
                         long denom_bound, double tol);

}  // namespace reglab

#endif
