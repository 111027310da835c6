#include "bkmod/error.hpp"

namespace bkmod {

const char* error_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::TruncationExceeded: return "TruncationExceeded";
    case ErrorKind::NotSupported: return "NotSupported";
    case ErrorKind::ContextCap: return "ContextCap";
    case ErrorKind::CuspidalDegenerate: return "CuspidalDegenerate";
    case ErrorKind::BadResidue: return "BadResidue";
    case ErrorKind::CongruenceFailed: return "CongruenceFailed";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::PeriodError: return "PeriodError";
    case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::InvalidShape: return "InvalidShape";
    case ErrorKind::NotTypeTau: return "NotTypeTau";
    case ErrorKind::TruncationUnstable: return "TruncationUnstable";
    case ErrorKind::NoNonzeroMap: return "NoNonzeroMap";
    case ErrorKind::NotInPTau: return "NotInPTau";
    case ErrorKind::ScalarType: return "ScalarType";
    case ErrorKind::SteinbergWeight: return "SteinbergWeight";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace bkmod
