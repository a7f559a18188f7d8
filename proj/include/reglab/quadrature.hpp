#ifndef REGLAB_QUADRATURE_HPP
#define REGLAB_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

namespace reglab {

struct QuadratureSettings {
    double target_abs_tol = 1e-10;     // 1-D paths
    double target_abs_tol_2d = 1e-7;   // iterated 2-D
    int max_depth = 15;                // tanh-sinh refinement levels
    int max_splits = 12;               // adaptive bisection budget per segment
    bool singular_endpoints = true;
    bool use_extended_precision = false;  // long-double nodes for tol < 1e-12
};

struct IntegralResult {
    std::complex<double> value{0.0, 0.0};
    double error = 0.0;
};

using Complex = std::complex<double>;

// integral of f over [0,1] (tanh-sinh, endpoint singularities welcome)
IntegralResult integrate_01(const std::function<Complex(double)>& f,
                            const QuadratureSettings& cfg, double tol);

// best-effort variant: returns the achieved error instead of raising
IntegralResult integrate_01_soft(const std::function<Complex(double)>& f,
                                 const QuadratureSettings& cfg, double tol);

// integral of f(z) dz along the straight segments through `points`
IntegralResult integrate_path(const std::function<Complex(Complex)>& f,
                              const std::vector<Complex>& points,
                              const QuadratureSettings& cfg);

enum class Region2D { UnitSquare, Delta2 };  // Delta2 = {x + y >= 1} in [0,1]^2

// iterated integral of f(x,y) dx dy over the region
IntegralResult integrate_region(const std::function<Complex(double, double)>& f,
                                Region2D region, const QuadratureSettings& cfg);

// bisection refinement of a scalar root on [a,b]; f(a), f(b) must differ in sign
double bisect_root(const std::function<double(double)>& f, double a, double b,
                   double tol = 1e-14);

}  // namespace reglab

#endif
