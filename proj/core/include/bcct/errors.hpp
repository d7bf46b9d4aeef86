#pragma once

#include <stdexcept>
#include <string>

namespace bcct {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OverlapError : Error { using Error::Error; };
struct EntropyDivergence : Error { using Error::Error; };
struct DegenerateArc : Error { using Error::Error; };
struct BandTooLarge : Error { using Error::Error; };
struct OutsideDomain : Error { using Error::Error; };
struct ResolutionError : Error { using Error::Error; };
struct WeightNotLogIntegrable : Error { using Error::Error; };
struct IngredientMismatch : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct RangeExhausted : Error { using Error::Error; };
struct NotADivisor : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace bcct
