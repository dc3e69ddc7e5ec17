#pragma once

#include <stdexcept>
#include <string>

namespace rwl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterViolation : Error { using Error::Error; };
struct NonFiniteInput : Error { using Error::Error; };
struct NonPositiveSpeed : Error { using Error::Error; };
struct LambdaOutOfRange : Error { using Error::Error; };
struct NonFiniteState : Error { using Error::Error; };
struct CurveLeftDomain : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

} // namespace rwl
