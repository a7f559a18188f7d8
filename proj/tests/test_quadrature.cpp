#include <doctest.h>

#include "reglab/errors.hpp"
#include "reglab/polylog.hpp"
#include "reglab/periods.hpp"
#include "reglab/quadrature.hpp"

using namespace reglab;

static QuadratureSettings cfg1() { return {}; }

TEST_CASE("zero integrand") {
    auto r = integrate_path([](Complex) { return Complex{0, 0}; }, {{0, 0}, {1, 0}}, cfg1());
    CHECK(std::abs(r.value) == 0.0);
}

TEST_CASE("log endpoint singularity: int_0^1 log u du = -1") {
    auto r = integrate_01([](double u) { return Complex(std::log(u), 0); }, cfg1(), 1e-13);
    CHECK(std::abs(r.value - Complex(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("series route: -2 int log(u)log(1-u)/u du = -2 zeta(3)") {
    auto r = integrate_01(
        [](double u) { return Complex(-2.0 * std::log(u) * std::log1p(-u) / u, 0); }, cfg1(),
        1e-12);
    CHECK(std::abs(r.value.real() - (-2.0 * zeta3())) < 1e-10);
}

TEST_CASE("path linearity, concatenation, reversal") {
    auto f = [](Complex z) { return z * z + Complex(0, 2) * z; };
    auto whole = integrate_path(f, {{0, 0}, {1, 1}}, cfg1());
    auto part = integrate_path(f, {{0, 0}, {0.3, 0.7}, {1, 1}}, cfg1());
    CHECK(std::abs(whole.value - part.value) < 1e-11);
    auto rev = integrate_path(f, {{1, 1}, {0, 0}}, cfg1());
    CHECK(std::abs(whole.value + rev.value) < 1e-11);
    // exact: antiderivative z^3/3 + i z^2 at (1+i)
    Complex z(1, 1);
    Complex expect = z * z * z / 3.0 + Complex(0, 1) * z * z;
    CHECK(std::abs(whole.value - expect) < 1e-11);
}

TEST_CASE("region integrals") {
    auto one = [](double, double) { return Complex(1, 0); };
    auto sq = integrate_region(one, Region2D::UnitSquare, cfg1());
    CHECK(std::abs(sq.value - Complex(1, 0)) < 1e-9);
    auto tri = integrate_region(one, Region2D::Delta2, cfg1());
    CHECK(std::abs(tri.value - Complex(0.5, 0)) < 1e-9);
    // separable smooth integrand matches the product of 1-D integrals
    auto f2 = [](double x, double y) { return Complex(std::exp(x) * std::cos(y), 0); };
    auto r2 = integrate_region(f2, Region2D::UnitSquare, cfg1());
    double expect = (std::exp(1.0) - 1.0) * std::sin(1.0);
    CHECK(std::abs(r2.value.real() - expect) < 1e-8);
}

TEST_CASE("surface route: region integral equals -2 zeta(3)") {
    // int_Delta log(x) dlog(y) ^ dlog((x-1)/x), written out in coordinates
    auto f = [](double x, double y) {
        if (x <= 0 || y <= 0) return Complex(0, 0);
        double w = std::log(x) * (1.0 / (x - 1.0) - 1.0 / x) / y;
        return Complex(-w, 0);  // dlog y ^ dlog(...) = -(d/dx)(d/dy) orientation
    };
    QuadratureSettings cfg = cfg1();
    auto r = integrate_region(f, Region2D::Delta2, cfg);
    CHECK(std::abs(r.value.real() - (-2.0 * zeta3())) < 2e-6);
}

TEST_CASE("polylog values") {
    CHECK(std::abs(polylog(2, {0, 0})) == 0.0);
    CHECK(std::abs(polylog(2, {1, 0}) - Complex(zeta2(), 0)) < 1e-13);
    CHECK(std::abs(polylog(3, {1, 0}) - Complex(zeta3(), 0)) < 1e-13);
    CHECK(std::abs(polylog(2, {-1, 0}) - Complex(-M_PI * M_PI / 12.0, 0)) < 1e-13);
    CHECK(std::abs(polylog(3, {-1, 0}) - Complex(-0.75 * zeta3(), 0)) < 1e-13);
    CHECK_THROWS_AS(polylog(2, {1.5, 0}), OnBranchCut);

    // series oracle on a representative grid inside the unit disc
    for (double re : {-0.9, -0.4, 0.2, 0.6}) {
        for (double im : {-0.5, 0.1, 0.7}) {
            Complex z(re, im);
            if (std::abs(z) >= 1.0) continue;
            Complex truth = 0;
            Complex t = z;
            for (int k = 1; k < 2000; ++k) {
                truth += t / (double)(k) / (double)k;
                t *= z;
                if (std::abs(t) < 1e-19) break;
            }
            CHECK(std::abs(polylog(2, z) - truth) < 1e-13);
        }
    }
}

TEST_CASE("dilog reflection identity on a grid") {
    for (double re : {-0.7, -0.2, 0.3, 0.8}) {
        for (double im : {-0.8, -0.1, 0.4, 0.9}) {
            Complex z(re, im);
            if (std::abs(z) < 0.05 || std::abs(1.0 - z) < 0.05) continue;
            Complex lhs = polylog(2, z) + polylog(2, 1.0 - z);
            Complex rhs = Complex(zeta2(), 0) - std::log(z) * std::log(1.0 - z);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("mod Q(p) comparison") {
    PeriodValue a{{1.25, 2.5}, 2, 0};
    PeriodValue b = a;
    ModQpResult r0 = mod_qp_equal(a, b, 10000, 64, 1e-10);
    CHECK(r0.equal);
    CHECK(r0.witness == rat(0));

    // a = b + (2 pi i)^2 * 3/4
    PeriodValue c{b.value + two_pi_i_pow(2) * 0.75, 2, 0};
    ModQpResult r1 = mod_qp_equal(c, b, 10000, 64, 1e-10);
    CHECK(r1.equal);
    CHECK(r1.witness == rat(3, 4));

    PeriodValue d{b.value + std::complex<double>(0.001, 0), 2, 0};
    ModQpResult r2 = mod_qp_equal(d, b, 3, 4, 1e-8);
    CHECK(!r2.equal);

    // symmetry and reflexivity
    ModQpResult r3 = mod_qp_equal(b, c, 10000, 64, 1e-10);
    CHECK(r3.equal);
    CHECK(r3.witness == rat(-3, 4));

    // pi^2 = -(2 pi i)^2/4 is rational in Q(2)
    PeriodValue e{{M_PI * M_PI, 0}, 2, 0};
    PeriodValue zero{{0, 0}, 2, 0};
    ModQpResult r4 = mod_qp_equal(e, zero, 10000, 64, 1e-10);
    CHECK(r4.equal);
    CHECK(r4.witness == rat(-1, 4));
}
