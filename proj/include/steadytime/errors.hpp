#pragma once

#include <stdexcept>
#include <string>

namespace steadytime {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct NoSteadyState : Error { using Error::Error; };
struct NothingToDo : Error { using Error::Error; };
struct InconsistentConstraint : Error { using Error::Error; };
struct ExcludedPoint : Error { using Error::Error; };
struct DegenerateMoments : Error { using Error::Error; };
struct NumericalInconsistency : Error { using Error::Error; };
struct EigenBracketError : Error { using Error::Error; };
struct RootBracketError : Error { using Error::Error; };
struct PrecisionError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace steadytime
