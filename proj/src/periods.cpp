#include "reglab/periods.hpp"

#include <cmath>
#include <sstream>

#include "reglab/errors.hpp"

namespace reglab {

std::string ModQpResult::to_string() const {
    std::ostringstream os;
    os << (equal ? "EQUAL" : "DIFFERENT") << " witness=" << witness.get_str()
       << " residual=" << residual;
    return os.str();
}

std::complex<double> two_pi_i_pow(int p) {
    std::complex<double> base(0.0, 2.0 * M_PI);
    std::complex<double> acc(1.0, 0.0);
    for (int i = 0; i < std::abs(p); ++i) acc *= base;
    if (p < 0) acc = 1.0 / acc;
    return acc;
}

ModQpResult mod_qp_equal(const PeriodValue& a, const PeriodValue& b, long num_bound,
                         long denom_bound, double tol) {
    if (a.p != b.p) throw Error("mod_qp_equal: mismatched modulus powers");
    std::complex<double> diff = a.value - b.value;
    std::complex<double> unit = two_pi_i_pow(a.p);
    std::complex<double> q = diff / unit;

    ModQpResult best;
    best.residual = std::abs(diff);
    best.witness = rat(0);
    best.equal = best.residual < tol;
    for (long s = 1; s <= denom_bound; ++s) {
        double scaled = q.real() * (double)s;
        if (!std::isfinite(scaled)) break;
        long r = (long)std::llround(scaled);
        if (std::llabs(r) > num_bound) continue;
        Rat cand = rat(r, s);
        double resid = std::abs(diff - unit * rat_to_double(cand));
        if (resid < best.residual - 1e-18) {
            best.residual = resid;
            best.witness = cand;
        }
    }
    best.equal = best.residual < tol;
    return best;
}

}  // namespace reglab
