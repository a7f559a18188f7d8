#ifndef REGLAB_POLYLOG_HPP
#define REGLAB_POLYLOG_HPP

#include <complex>

namespace reglab {

// Li_s for s = 2, 3 with branch cut [1, inf); throws OnBranchCut for real
// arguments strictly on the cut (pass a side via a small imaginary part).
std::complex<double> polylog(int s, std::complex<double> z);

double zeta2();
double zeta3();

}  // namespace reglab

#endif
