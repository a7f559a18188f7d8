#ifndef REGLAB_ERRORS_HPP
#define REGLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace reglab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define REGLAB_DEFINE_ERROR(Name)                                        \
    struct Name : Error {                                                \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

// homological layer
REGLAB_DEFINE_ERROR(NonChainMap);
REGLAB_DEFINE_ERROR(SquaresDoNotCommute);
REGLAB_DEFINE_ERROR(NotExactSES);
REGLAB_DEFINE_ERROR(NotFiltered);
REGLAB_DEFINE_ERROR(InvalidComplex);

// Gysin layer
REGLAB_DEFINE_ERROR(GySquareNonzero);
REGLAB_DEFINE_ERROR(WrongColumn);
REGLAB_DEFINE_ERROR(NotAFiltration);

// cycle layer
REGLAB_DEFINE_ERROR(ImproperFacet);
REGLAB_DEFINE_ERROR(UnfactorableLocus);
REGLAB_DEFINE_ERROR(DegreeBoundExceeded);
REGLAB_DEFINE_ERROR(ZeroFunction);
REGLAB_DEFINE_ERROR(NotParametrized);
REGLAB_DEFINE_ERROR(ParseError);

// current / pairing layer
REGLAB_DEFINE_ERROR(NotASymbolGraph);
REGLAB_DEFINE_ERROR(SingularOnMembrane);
REGLAB_DEFINE_ERROR(IntersectionUnresolved);
REGLAB_DEFINE_ERROR(MisalignedStrata);
REGLAB_DEFINE_ERROR(NonProductBase);
REGLAB_DEFINE_ERROR(FlagNotInPolarLocus);

// quadrature layer
REGLAB_DEFINE_ERROR(MaxDepthExceeded);
REGLAB_DEFINE_ERROR(NonIntegrableSingularity);
REGLAB_DEFINE_ERROR(OnBranchCut);

// scenarios
REGLAB_DEFINE_ERROR(HypothesisViolated);

#undef REGLAB_DEFINE_ERROR

}  // namespace reglab

#endif
