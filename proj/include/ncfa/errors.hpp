#ifndef NCFA_ERRORS_HPP
#define NCFA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ncfa {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct NotInSubalgebra : Error { using Error::Error; };
struct NotFaithfulOnD : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct DiskConditionViolated : Error { using Error::Error; };
struct NotModuleMap : Error { using Error::Error; };
struct NotStrictContraction : Error { using Error::Error; };
struct SingularResolvent : Error { using Error::Error; };
struct DomainMismatch : Error { using Error::Error; };
struct AtomOnOrOutsideCircle : Error { using Error::Error; };
struct NonPositiveWeight : Error { using Error::Error; };
struct DegenerateState : Error { using Error::Error; };
struct TruncationTooSmall : Error { using Error::Error; };
struct BadConfig : Error { using Error::Error; };
struct IOError : Error { using Error::Error; };

} // namespace ncfa

#endif
