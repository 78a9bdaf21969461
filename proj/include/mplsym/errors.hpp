#pragma once

#include <stdexcept>
#include <string>

namespace mplsym {

// Base class for all library errors. `kind()` names the failing condition.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define MPLSYM_ERROR(Name)                                                  \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}        \
    }

MPLSYM_ERROR(ParseError);
MPLSYM_ERROR(PoleAtPoint);
MPLSYM_ERROR(BadPrimePoint);
MPLSYM_ERROR(NotFactorable);
MPLSYM_ERROR(WeightMismatch);
MPLSYM_ERROR(MixedWeight);
MPLSYM_ERROR(NonGenericDecorations);
MPLSYM_ERROR(PreconditionViolated);
MPLSYM_ERROR(ZeroArgument);
MPLSYM_ERROR(Unsolvable);
MPLSYM_ERROR(NotIntegrable);
MPLSYM_ERROR(ReconstructionFailed);
MPLSYM_ERROR(OutOfRegion);
MPLSYM_ERROR(DivergentSpec);
MPLSYM_ERROR(RingMismatch);

#undef MPLSYM_ERROR

}  // namespace mplsym
