#pragma once

#include <stdexcept>
#include <string>

namespace orbarith {

enum class ErrorKind {
    NonPrimeModulus,
    ZeroInput,
    EvenModulus,
    ZeroArgument,
    ZeroVector,
    UnsupportedRank,
    Unsupported,
    PointNotOnAmbient,
    AllRepresentativesVanish,
    InvalidMember,
    InvalidModel,
    Inconclusive,
    ParseError,
    ExpectationFailed,
};

const char* to_string(ErrorKind kind);

// Stable process exit codes used by the CLI: 2 input, 3 domain, 4 inconclusive,
// 5 expectation failed.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace orbarith
