#pragma once

#include <stdexcept>
#include <string>

namespace ncoop {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidCode : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct NotPartialCooperative : Error { using Error::Error; };
struct TopologyMismatch : Error { using Error::Error; };

// config ingestion
struct ConfigError : Error { using Error::Error; };
struct ParseError : ConfigError { using ConfigError::ConfigError; };
struct ValidationError : ConfigError { using ConfigError::ConfigError; };

} // namespace ncoop
