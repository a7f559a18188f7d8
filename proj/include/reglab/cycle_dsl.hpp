#ifndef REGLAB_CYCLE_DSL_HPP
#define REGLAB_CYCLE_DSL_HPP

#include "reglab/cycles.hpp"

namespace reglab {

// Text format for cycle chains:
//
//   # comment
//   base point
//   base P1(t) exclude inf, zeta(3)
//   base surface(s, w) exclude s=0, w=inf
//   base hypersurface((P1)^3; x*y*z - (x-1)*(y-1)) exclude x=0, y=0
//   cycle (t, 1 - t)
//   + 1/2 cycle (x, y; x, y, z)     # X-coords before ';', cube coords after
//   - cycle (1/t, 1 - 1/t)
//
// Constants: rationals, zeta(N), zeta(N)^k, inf. Each `cycle` uses the most
// recent `base`. Parser errors carry line:column positions.
CycleChain parse_cycle_chain(const std::string& text);

// single rational-function expression in the given parameter names
RF parse_rf_expression(const std::string& text, const std::vector<std::string>& params);

}  // namespace reglab

#endif
