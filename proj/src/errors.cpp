#include "orbarith/errors.hpp"

namespace orbarith {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
        case ErrorKind::ZeroInput: return "ZeroInput";
        case ErrorKind::EvenModulus: return "EvenModulus";
        case ErrorKind::ZeroArgument: return "ZeroArgument";
        case ErrorKind::ZeroVector: return "ZeroVector";
        case ErrorKind::UnsupportedRank: return "UnsupportedRank";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::PointNotOnAmbient: return "PointNotOnAmbient";
        case ErrorKind::AllRepresentativesVanish: return "AllRepresentativesVanish";
        case ErrorKind::InvalidMember: return "InvalidMember";
        case ErrorKind::InvalidModel: return "InvalidModel";
        case ErrorKind::Inconclusive: return "Inconclusive";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ExpectationFailed: return "ExpectationFailed";
    }
    return "Unknown";
}

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError:
        case ErrorKind::InvalidModel:
        case ErrorKind::ZeroVector:
            return 2;
        case ErrorKind::Inconclusive:
            return 4;
        case ErrorKind::ExpectationFailed:
            return 5;
        default:
            return 3;
    }
}

}  // namespace orbarith
