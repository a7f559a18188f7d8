#ifndef REGLAB_MEMBRANE_HPP
#define REGLAB_MEMBRANE_HPP

#include <string>
#include <vector>

#include "reglab/quadrature.hpp"

namespace reglab {

// Piecewise-smooth chain in the base parameters: an oriented polyline in the
// coordinate of a curve base (dim 1), or a built-in region in the two real
// parameters of a surface base (dim 2).
struct Membrane {
    int dim = 1;
    std::vector<Complex> path;  // dim 1: straight segments through these points
    Region2D region = Region2D::UnitSquare;
    int orientation = 1;

    static Membrane segment(Complex a, Complex b);
    static Membrane polyline(std::vector<Complex> pts);
    static Membrane square();
    static Membrane delta2();
    Membrane reversed() const;

    // Text format, one directive per line:
    //   path <expr> -> <expr> [-> <expr> ...]
    //   region delta2 | region square
    //   reversed
    // Endpoint expressions use the cycle-DSL constant grammar
    // (rationals, zeta(N)^k, inf is not allowed here).
    static Membrane from_text(const std::string& text);
};

}  // namespace reglab

#endif
