#ifndef REGLAB_KLM_HPP
#define REGLAB_KLM_HPP

#include "reglab/cycles.hpp"
#include "reglab/membrane.hpp"
#include "reglab/periods.hpp"

namespace reglab {

// One term of the R-current expansion
//   R{f_1..f_n} = sum_k s_k (2 pi i)^{k-1}
//                 log f_k dlog f_{k+1} ^ ... ^ dlog f_n  delta_{T_{f_1..k-1}}
// with the calibrated sign vector s_k = (-1)^{k-1}.
struct RTerm {
    int k = 1;          // log index; delta over 1..k-1, dlog over k+1..n
    int sign = 1;       // s_k
    int twist_pow = 0;  // k-1
};

struct SymbolCurrent {
    ParamCycle cycle;  // the symbol graph; cube coordinates are f_1..f_n
    std::vector<RTerm> terms;
    int n() const { return cycle.n(); }
};

struct CurrentTriple {
    std::string t_descriptor;        // symbolic constraint list for T
    std::vector<int> omega_indices;  // Omega = dlog f_1 ^ ... ^ dlog f_n
    SymbolCurrent R;
};

CurrentTriple klm_triple(const ParamCycle& z);

// integral of the R-current against a membrane of matching dimension
IntegralResult pair_with_membrane(const SymbolCurrent& R, const Membrane& g,
                                  const QuadratureSettings& cfg);
IntegralResult pair_chain_with_membrane(const CycleChain& z, const Membrane& g,
                                        const QuadratureSettings& cfg);

struct Stratum {
    CycleChain chain;
    Membrane membrane;
    std::string label;
};

// (-2 pi i)^{p-n} sum over strata of the membrane pairings
PeriodValue diagonal_pairing(const std::vector<Stratum>& strata, int p, int n,
                             const QuadratureSettings& cfg);

// compactly supported bump form on the parameter chart
struct TestForm {
    int degree = 1;  // 0 or 1
    Complex center{0.0, 0.0};
    double radius = 1.0;
    Complex amp0{1.0, 0.0};    // 0-form amplitude
    Complex amp_dx{1.0, 0.0};  // 1-form components
    Complex amp_dy{0.0, 0.0};

    Complex bump(Complex t) const;
    Complex bump_dx(Complex t) const;
    Complex bump_dy(Complex t) const;
};

// defect of d[R] = Omega - (2 pi i)^n delta_T - (2 pi i) R_{del_B z}
// against the test form; n = 1 or 2
Complex stokes_residual(const ParamCycle& z, const TestForm& phi, const QuadratureSettings& cfg);

// slice of the triple of a product-base cycle along a membrane in the first
// factor; exact restriction for point membranes, numeric evaluator otherwise
struct SlicedTriple {
    bool exact_fiber = false;
    ParamCycle fiber;  // when exact_fiber
    std::function<IntegralResult(const Membrane&, const QuadratureSettings&)> pair;
};

// exact restriction of the cycle to the fiber over parameter-0 value s0
ParamCycle restrict_to_fiber(const ParamCycle& z, const PValue& s0);

SlicedTriple slice_over_base(const ParamCycle& z, const Membrane& g_in_s,
                             const QuadratureSettings& cfg);

/* toric dlog residues */

struct DlogForm {
    struct Term {
        Rat coeff;
        std::vector<int> idx;  // dlog x_{idx[0]} ^ dlog x_{idx[1]} ^ ...
    };
    std::vector<Term> terms;

    static DlogForm wedge(const std::vector<int>& idx, Rat coeff = Rat(1));
    DlogForm canonical() const;  // sorted factors with signs, repeats dropped
    friend DlogForm operator+(const DlogForm& a, const DlogForm& b);
};

// iterated residue along the coordinate flag; exact
Rat dlog_residue(const DlogForm& form, const std::vector<int>& flag);

}  // namespace reglab

#endif
