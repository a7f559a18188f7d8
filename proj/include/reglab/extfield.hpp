#ifndef REGLAB_EXTFIELD_HPP
#define REGLAB_EXTFIELD_HPP

#include <memory>

#include "reglab/cyclotomic.hpp"
#include "reglab/upoly.hpp"

namespace reglab {

class ExtField;

// Thrown when a predicate over K[x]/(m) cannot be decided because m splits;
// carries the discovered monic factor. Callers split the component into the
// (factor, cofactor) branches and retry (lazy D5 decomposition).
struct SplitNeeded {
    UPoly<CycloNum> factor;
    std::shared_ptr<const ExtField> field;
};

// K[theta]/(m(theta)) for a monic squarefree m over a cyclotomic field.
class ExtField : public std::enable_shared_from_this<ExtField> {
public:
    explicit ExtField(UPoly<CycloNum> modulus);
    const UPoly<CycloNum>& modulus() const { return modulus_; }
    int degree() const { return modulus_.degree(); }
    // numeric roots of the modulus, deterministically ordered
    const std::vector<std::complex<double>>& roots() const;

private:
    UPoly<CycloNum> modulus_;
    mutable std::vector<std::complex<double>> roots_;
};

// Element of K (field == null) or of K[theta]/(m). All predicates that
// depend on the residue class go through gcds and may throw SplitNeeded.
class ExtElem {
public:
    ExtElem() = default;
    ExtElem(const CycloNum& c);  // NOLINT: implicit constant embedding
    ExtElem(std::shared_ptr<const ExtField> fld, UPoly<CycloNum> rep);
    static ExtElem theta(const std::shared_ptr<const ExtField>& fld);

    const std::shared_ptr<const ExtField>& field() const { return fld_; }
    const UPoly<CycloNum>& rep() const { return rep_; }

    bool is_zero() const { return rep_.is_zero(); }
    bool is_constant() const { return rep_.degree() <= 0; }
    CycloNum constant_part() const { return rep_.coeff(0); }
    ExtElem one() const;

    ExtElem inverse() const;  // throws SplitNeeded / ZeroFunction
    // split-aware zero test: true/false only when unambiguous on every branch
    bool is_zero_split() const;
    bool equals_split(const ExtElem& o) const { return (*this - o).is_zero_split(); }

    // exact root-of-unity test inside the extension (bounded power search)
    bool is_root_of_unity(int* order = nullptr) const;

    std::complex<double> embed(int root_index = 0) const;
    std::string to_string() const;

    friend ExtElem operator+(const ExtElem& a, const ExtElem& b);
    friend ExtElem operator-(const ExtElem& a, const ExtElem& b);
    friend ExtElem operator*(const ExtElem& a, const ExtElem& b);
    ExtElem operator-() const;
    friend bool operator==(const ExtElem& a, const ExtElem& b) { return (a - b).is_zero(); }

    // rebase onto a factor of the current modulus (reduce mod new modulus)
    ExtElem rebased(const std::shared_ptr<const ExtField>& nf) const;

private:
    std::shared_ptr<const ExtField> fld_;  // null: plain cyclotomic constant
    UPoly<CycloNum> rep_;

    static void align(ExtElem& a, ExtElem& b);
    void reduce();
};

}  // namespace reglab

#endif
