#pragma once

#include <stdexcept>
#include <string>

namespace atomkit {

// Base of every error the library throws; kind() is the stable name the CLI
// reports on stderr.
class Error : public std::domain_error {
public:
    using std::domain_error::domain_error;
    virtual const char* kind() const noexcept { return "DomainError"; }
};

#define ATOMKIT_ERROR(Name)                                          \
    class Name : public Error {                                      \
    public:                                                          \
        using Error::Error;                                          \
        const char* kind() const noexcept override { return #Name; } \
    };

ATOMKIT_ERROR(DomainError)
ATOMKIT_ERROR(EmptySpaceError)
ATOMKIT_ERROR(ForbiddenTransition)
ATOMKIT_ERROR(SupercriticalCoupling)
ATOMKIT_ERROR(ConsistencyError)
ATOMKIT_ERROR(SearchFailure)
ATOMKIT_ERROR(SolverError)
ATOMKIT_ERROR(QuadratureError)
ATOMKIT_ERROR(ForwardSingularity)
ATOMKIT_ERROR(HeadOnCollision)
ATOMKIT_ERROR(SingularOrbit)
ATOMKIT_ERROR(SingularPoint)
ATOMKIT_ERROR(ConstraintViolation)
ATOMKIT_ERROR(PoleError)

#undef ATOMKIT_ERROR

}  // namespace atomkit
