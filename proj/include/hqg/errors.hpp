#pragma once

#include <stdexcept>
#include <string>

namespace hqg {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string &what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string &kind() const { return kind_; }

private:
    std::string kind_;
};

#define HQG_ERROR(Name)                                                  \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string &what) : Error(#Name, what) {}  \
    };

HQG_ERROR(LabelMismatch)
HQG_ERROR(NotDensityMatrix)
HQG_ERROR(BranchAmbiguity)
HQG_ERROR(NotPSD)
HQG_ERROR(NotNormal)
HQG_ERROR(CapExceeded)
HQG_ERROR(UnsupportedSpec)
HQG_ERROR(FactorizationMismatch)
HQG_ERROR(DecompositionFailed)
HQG_ERROR(BoundsExceeded)
HQG_ERROR(NotIsometric)
HQG_ERROR(NullState)
HQG_ERROR(InvalidPath)
HQG_ERROR(NotCentral)
HQG_ERROR(NotImagePreserving)
HQG_ERROR(SupportLeak)
HQG_ERROR(NotCorrectable)
HQG_ERROR(IllConditioned)
HQG_ERROR(RepresentationRepairFailed)
HQG_ERROR(NotIsometryAfterContraction)
HQG_ERROR(CutoffTooLarge)
HQG_ERROR(ScaleExceeded)
HQG_ERROR(DualityAbsent)
HQG_ERROR(HypothesisViolated)
HQG_ERROR(NonPositiveP)
HQG_ERROR(ConfigError)

#undef HQG_ERROR

}  // namespace hqg
