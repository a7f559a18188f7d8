#ifndef REGLAB_MPOLY_HPP
#define REGLAB_MPOLY_HPP

#include <array>
#include <map>

#include "reglab/extfield.hpp"

namespace reglab {

// Sparse polynomial in up to 3 variables over ExtElem coefficients.
// Used for cycle coordinate functions; degrees stay small.
class MPoly {
public:
    using Expo = std::array<int, 3>;

    MPoly() = default;
    explicit MPoly(int nvars) : nvars_(nvars) {}
    static MPoly constant(const ExtElem& c, int nvars);
    static MPoly var(int v, int nvars);

    int nvars() const { return nvars_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    ExtElem constant_part() const;
    const std::map<Expo, ExtElem>& terms() const { return t_; }

    int deg_in(int v) const;
    int total_degree() const;
    bool depends_on(int v) const { return deg_in(v) > 0; }

    void add_term(const Expo& e, const ExtElem& c);

    friend MPoly operator+(const MPoly& a, const MPoly& b);
    friend MPoly operator-(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(const ExtElem& s, const MPoly& a);
    MPoly operator-() const;
    friend bool operator==(const MPoly& a, const MPoly& b) { return (a - b).is_zero(); }

    MPoly derivative(int v) const;
    MPoly pow(int e) const;

    // substitute x_v = n/d: returns sum_k c_k n^k d^(cap-k); cap >= deg_in(v)
    MPoly subst_homog(int v, const MPoly& n, const MPoly& d, int cap) const;
    // substitute x_v by a field constant
    MPoly subst_const(int v, const ExtElem& c) const;
    // renumber variables: var v removed, higher variables shift down
    MPoly drop_var(int v) const;
    // add a variable slot at position v (shifting higher ones up)
    MPoly insert_var(int v) const;

    // rebase every coefficient (for D5 component splits)
    MPoly rebased(const std::shared_ptr<const ExtField>& nf) const;

    std::complex<double> eval_complex(const std::array<std::complex<double>, 3>& x,
                                      int root_index = 0) const;
    ExtElem eval0() const;  // value of a 0-variable polynomial

    UPoly<ExtElem> to_upoly(int v) const;  // requires univariate in v
    static MPoly from_upoly(const UPoly<ExtElem>& p, int v, int nvars);

    std::string to_string(const std::array<const char*, 3>& names = {"t", "u", "v"}) const;

private:
    int nvars_ = 0;
    std::map<Expo, ExtElem> t_;
};

// Projective pair num : den (a rational map to P^1); den == 0 encodes the
// constant infinity. Invariant: not both identically zero.
struct RF {
    MPoly num, den;

    static RF constant(const ExtElem& c, int nvars);
    static RF infinity(int nvars);
    static RF var(int v, int nvars);

    int nvars() const { return num.nvars(); }
    bool is_finite_constant() const { return num.is_constant() && den.is_constant() && !den.is_zero(); }
    bool is_constant() const { return num.is_constant() && den.is_constant(); }
    bool is_identically(const ExtElem& c) const;  // as a projective value
    bool is_identically_inf() const { return den.is_zero(); }

    friend RF operator+(const RF& a, const RF& b);
    friend RF operator-(const RF& a, const RF& b);
    friend RF operator*(const RF& a, const RF& b);
    friend RF operator/(const RF& a, const RF& b);
    RF operator-() const;

    // cross-multiplied equality of the two rational maps
    bool same_function(const RF& o) const;

    RF subst(int v, const RF& value) const;  // compose with x_v = value
    RF subst_point(int v, const struct PValue& value) const;
    RF drop_var(int v) const;
    RF insert_var(int v) const;
    RF derivative(int v) const;  // (n'd - nd')/d^2
    RF rebased(const std::shared_ptr<const ExtField>& nf) const;

    // reduce by the univariate gcd (only applies when nvars <= 1)
    RF reduced() const;

    std::complex<double> eval_complex(const std::array<std::complex<double>, 3>& x,
                                      int root_index = 0) const;
    std::string to_string() const;
};

// Projective point value (a : b) over the extension field.
struct PValue {
    ExtElem a, b;

    bool is_inf() const { return b.is_zero(); }
    bool is_zero_val() const { return a.is_zero() && !b.is_zero(); }
    ExtElem finite() const { return a * b.inverse(); }

    // split-aware predicates
    bool equals_value(const PValue& o) const;  // cross-multiplied, may SplitNeeded
    bool is_one_split() const;
    bool is_zero_split() const;
    bool is_inf_split() const;

    std::complex<double> eval_complex(int root_index = 0) const;
    std::string to_string() const;
};

PValue rf_value_at0(const RF& f);  // evaluate a 0-variable RF

}  // namespace reglab

#endif
