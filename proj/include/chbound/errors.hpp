#pragma once

#include <stdexcept>

namespace chbound {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroVectorError : Error { using Error::Error; };
struct LengthMismatchError : Error { using Error::Error; };
struct DimensionMismatchError : Error { using Error::Error; };
struct NotHermitianError : Error { using Error::Error; };
struct NonPositiveEpsilonError : Error { using Error::Error; };
struct DegenerateStateError : Error { using Error::Error; };
struct InvalidNError : Error { using Error::Error; };
struct EtaOutOfRangeError : Error { using Error::Error; };
struct TooManySitesError : Error { using Error::Error; };
struct NoViolationPossibleError : Error { using Error::Error; };
struct EtaTooSmallError : Error { using Error::Error; };
struct NoViolationError : Error { using Error::Error; };
struct DimensionTooLargeError : Error { using Error::Error; };
struct ConvergenceFailureError : Error { using Error::Error; };

}  // namespace chbound
