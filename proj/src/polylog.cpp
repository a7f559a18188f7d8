#include "reglab/polylog.hpp"

#include <vector>

#include "reglab/errors.hpp"
#include "reglab/rational.hpp"

namespace reglab {

using C = std::complex<double>;

double zeta2() { return M_PI * M_PI / 6.0; }
double zeta3() { return 1.2020569031595942853997381615114; }

// zeta at integers <= 1 via exact Bernoulli numbers: zeta(-n) = -B_{n+1}/(n+1)
static const std::vector<double>& zeta_nonpos_table() {
    static std::vector<double> table = [] {
        const int N = 80;
        std::vector<Rat> B(N + 1);
        B[0] = rat(1);
        for (int m = 1; m <= N; ++m) {
            // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
            Rat acc(0);
            Rat binom(1);  // C(m+1, 0)
            for (int k = 0; k < m; ++k) {
                acc += binom * B[k];
                binom *= rat(m + 1 - k, k + 1);
            }
            B[m] = -acc / rat(m + 1);
        }
        std::vector<double> t(N);
        // zeta(-n) = (-1)^n B_{n+1} / (n+1)
        for (int n = 0; n < N; ++n)
            t[n] = (n % 2 ? -1.0 : 1.0) * rat_to_double(B[n + 1]) / (n + 1);
        return t;
    }();
    return table;
}

static double zeta_int(int s) {
    // s <= 0 from the table; s = 2, 3 from constants
    if (s == 2) return zeta2();
    if (s == 3) return zeta3();
    if (s <= 0) return zeta_nonpos_table()[-s];
    throw Error("zeta_int: unsupported argument");
}

using LC = std::complex<long double>;

static C series_polylog(int s, C z0) {
    LC z((long double)z0.real(), (long double)z0.imag());
    LC acc = 0, term = z;
    for (int k = 1; k < 500; ++k) {
        LC t = term / powl((long double)k, s);
        acc += t;
        if (std::abs(t) < 1e-21L * (1.0L + std::abs(acc))) break;
        term *= z;
    }
    return {(double)acc.real(), (double)acc.imag()};
}

// expansion in mu = log z around z = 1 (|mu| < 2 pi), extended precision
static C mu_expansion(int s, C z0) {
    LC z((long double)z0.real(), (long double)z0.imag());
    LC mu = std::log(z);
    LC acc = 0;
    LC mupow = 1.0L;
    long double fact = 1.0L;
    int tiny_streak = 0;
    for (int k = 0; k < 78; ++k) {
        LC term;
        if (k == s - 1) {
            // special term: mu^{s-1}/(s-1)! * (H_{s-1} - log(-mu))
            long double h = 0;
            for (int j = 1; j <= s - 1; ++j) h += 1.0L / j;
            term = mupow / fact * (h - std::log(-mu));
        } else {
            term = (long double)zeta_int(s - k) * mupow / fact;
        }
        acc += term;
        mupow *= mu;
        fact *= (k + 1);
        // the zeta factors grow factorially, so gate on the actual terms
        tiny_streak = (k > 4 && std::abs(term) < 1e-20L) ? tiny_streak + 1 : 0;
        if (tiny_streak >= 3) break;
    }
    return {(double)acc.real(), (double)acc.imag()};
}

static C dilog(C z) {
    double az = std::abs(z);
    if (az <= 0.75) return series_polylog(2, z);
    if (az >= 1.4) {
        // Li2(z) = -Li2(1/z) - pi^2/6 - log^2(-z)/2
        C lz = std::log(-z);
        return -dilog(1.0 / z) - zeta2() - 0.5 * lz * lz;
    }
    if (std::abs(1.0 - z) <= 0.75) {
        // reflection: Li2(z) + Li2(1-z) = zeta(2) - log z log(1-z)
        return zeta2() - std::log(z) * std::log(1.0 - z) - series_polylog(2, 1.0 - z);
    }
    return mu_expansion(2, z);
}

static C trilog(C z) {
    double az = std::abs(z);
    if (az <= 0.75) return series_polylog(3, z);
    if (az >= 1.4) {
        // Li3(z) = Li3(1/z) - pi^2/6 log(-z) - log^3(-z)/6
        C lz = std::log(-z);
        return trilog(1.0 / z) - zeta2() * lz - lz * lz * lz / 6.0;
    }
    return mu_expansion(3, z);
}

std::complex<double> polylog(int s, std::complex<double> z) {
    if (z.imag() == 0.0 && z.real() > 1.0)
        throw OnBranchCut("polylog argument on [1, inf) without a side specifier");
    if (z == C(1.0, 0.0)) return s == 2 ? C(zeta2(), 0.0) : C(zeta3(), 0.0);
    if (s == 2) return dilog(z);
    if (s == 3) return trilog(z);
    throw Error("polylog: only s = 2, 3 are provided");
}

}  // namespace reglab
