#pragma once

#include <stdexcept>
#include <string>

namespace bkmod {

enum class ErrorKind {
    NotPrime,
    DegreeTooLarge,
    TruncationExceeded,
    NotSupported,
    ContextCap,
    CuspidalDegenerate,
    BadResidue,
    CongruenceFailed,
    RangeError,
    PeriodError,
    ZeroCoefficient,
    ContextMismatch,
    KindMismatch,
    InvalidShape,
    NotTypeTau,
    TruncationUnstable,
    NoNonzeroMap,
    NotInPTau,
    ScalarType,
    SteinbergWeight,
    NoSolution,
    Overflow,
    Internal,
};

const char* error_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace bkmod
