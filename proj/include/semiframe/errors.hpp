#pragma once

#include <stdexcept>
#include <string>

namespace semiframe {

// Base of every error raised by the library. Subclasses carry no extra state;
// the type names the failure and what() carries the context.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SEMIFRAME_ERROR(Name)                 \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    }

SEMIFRAME_ERROR(DimensionMismatch);
SEMIFRAME_ERROR(NotHermitian);
SEMIFRAME_ERROR(NotPositive);
SEMIFRAME_ERROR(SingularCalculus);
SEMIFRAME_ERROR(EmptyFamily);
SEMIFRAME_ERROR(InvalidGrid);
SEMIFRAME_ERROR(GridMismatch);
SEMIFRAME_ERROR(InconsistentScan);
SEMIFRAME_ERROR(DependentSpanningSet);
SEMIFRAME_ERROR(NotInvertible);
SEMIFRAME_ERROR(HypothesisViolated);
SEMIFRAME_ERROR(NotBiorthogonal);
SEMIFRAME_ERROR(NotTotal);
SEMIFRAME_ERROR(InvalidB);
SEMIFRAME_ERROR(WeightBelowOne);
SEMIFRAME_ERROR(NonpositiveSymbol);
SEMIFRAME_ERROR(UnknownGalleryCase);
SEMIFRAME_ERROR(ConfigError);

#undef SEMIFRAME_ERROR

}  // namespace semiframe
