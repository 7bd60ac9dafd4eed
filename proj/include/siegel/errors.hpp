#pragma once

#include <stdexcept>
#include <string>

namespace siegel {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exactnum
struct NonPositiveArgument : Error { using Error::Error; };
struct LogOfNonPositiveLog : Error { using Error::Error; };
struct IndeterminateSign : Error { using Error::Error; };

// numfield
struct ReduciblePolynomial : Error { using Error::Error; };
struct IrreducibilityUndetermined : Error { using Error::Error; };
struct InconsistentDiscriminant : Error { using Error::Error; };
struct UncertifiableDiscriminant : Error { using Error::Error; };
struct IndexDivisorPrime : Error { using Error::Error; };

// modgroup
struct InvalidLevel : Error { using Error::Error; };
struct IndexCapExceeded : Error { using Error::Error; };
struct NotASubgroup : Error { using Error::Error; };
struct NonIntegralDegree : Error { using Error::Error; };
struct MinusIdentityRequired : Error { using Error::Error; };

// bounds
struct DegenerateLogFactor : Error { using Error::Error; };
struct ExcludedPrime : Error { using Error::Error; };

// heights
struct ZeroDenominator : Error { using Error::Error; };
struct RootIsolationFailure : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct InternalInconsistency : Error { using Error::Error; };
struct NotAnSInteger : Error { using Error::Error; };

} // namespace siegel
