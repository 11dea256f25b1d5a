#include "status.hpp"

namespace qtw {

const char* status_name(Status s) {
    switch (s) {
    case Status::Ok: return "Ok";
    case Status::InvalidArgument: return "InvalidArgument";
    case Status::ParseError: return "ParseError";
    case Status::DivisionByZero: return "DivisionByZero";
    case Status::ZeroMap: return "ZeroMap";
    case Status::NotHLinear: return "NotHLinear";
    case Status::NotQuaternionic: return "NotQuaternionic";
    case Status::KernelPoint: return "KernelPoint";
    case Status::PoleError: return "PoleError";
    case Status::InsufficientSamples: return "InsufficientSamples";
    case Status::AmbiguousRecovery: return "AmbiguousRecovery";
    case Status::InconsistentSamples: return "InconsistentSamples";
    case Status::RankTooLow: return "RankTooLow";
    case Status::ZeroVector: return "ZeroVector";
    case Status::DomainEscape: return "DomainEscape";
    case Status::NotQuaternionicAt: return "NotQuaternionicAt";
    }
    return "Unknown";
}

} // namespace qtw
