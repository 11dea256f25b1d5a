#pragma once

#include <stdexcept>
#include <string>

namespace qtw {

// Outcome codes shared between the C++ core and the C API.  Values are
// stable; the C header mirrors them one-to-one.
enum class Status : int {
    Ok = 0,
    InvalidArgument = 1,
    ParseError = 2,
    DivisionByZero = 10,
    ZeroMap = 11,
    NotHLinear = 12,
    NotQuaternionic = 13,
    KernelPoint = 20,
    PoleError = 21,
    InsufficientSamples = 22,
    AmbiguousRecovery = 23,
    InconsistentSamples = 24,
    RankTooLow = 25,
    ZeroVector = 26,
    DomainEscape = 30,
    NotQuaternionicAt = 31,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
public:
    Error(Status code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    Status code() const noexcept { return code_; }

private:
    Status code_;
};

[[noreturn]] inline void fail(Status code, const std::string& what) {
    throw Error(code, what);
}

} // namespace qtw
