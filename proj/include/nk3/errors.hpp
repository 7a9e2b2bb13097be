#pragma once

#include <stdexcept>
#include <string>

namespace nk3 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define NK3_DEFINE_ERROR(Name)                                          \
    struct Name : Error {                                               \
        Name() : Error(#Name) {}                                        \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

// fqf
NK3_DEFINE_ERROR(DegenerateForm);
NK3_DEFINE_ERROR(InconsistentQB);
NK3_DEFINE_ERROR(BadDenominator);
NK3_DEFINE_ERROR(DimensionMismatch);
NK3_DEFINE_ERROR(SubgroupTooLarge);
NK3_DEFINE_ERROR(NotIsotropic);
NK3_DEFINE_ERROR(MixedPrimes);
NK3_DEFINE_ERROR(NotEven);
NK3_DEFINE_ERROR(SingularGram);

// local
NK3_DEFINE_ERROR(NotAUnit);
NK3_DEFINE_ERROR(PrimeMismatch);
NK3_DEFINE_ERROR(BadNumerator);
NK3_DEFINE_ERROR(DegenerateEvenType);

// roots
NK3_DEFINE_ERROR(ParseError);
NK3_DEFINE_ERROR(IllegalComponent);
NK3_DEFINE_ERROR(BudgetExceeded);

// k3
NK3_DEFINE_ERROR(PDividesD);
NK3_DEFINE_ERROR(BadSigma);
NK3_DEFINE_ERROR(EvenP);
NK3_DEFINE_ERROR(SignatureOutOfRange);
NK3_DEFINE_ERROR(PNotCoprime);
NK3_DEFINE_ERROR(RankTooLarge);
NK3_DEFINE_ERROR(NotBoundaryCase);

// codes
NK3_DEFINE_ERROR(NotElementaryHost);

#undef NK3_DEFINE_ERROR

} // namespace nk3
