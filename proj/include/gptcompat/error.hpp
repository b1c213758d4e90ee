#pragma once

#include <stdexcept>
#include <string>

namespace gptcompat {

enum class Errc {
    // geometry
    EmptyInput,
    DimensionMismatch,
    DegeneratePolytope,
    NotASimplex,
    OutsidePolytope,
    // effects
    DegenerateFacet,
    CannotExpose,
    BiasOutOfRange,
    ParameterOutOfRange,
    InconsistentVertexValues,
    EffectInvalid,
    // lp
    NumericalBreakdown,
    NotOptimal,
    // compat
    InfeasibleP,
    SolverFailure,
    NotIncompatible,
    DegenerateDual,
    InvalidCertificate,
    SimplexInput,
    SearchExhausted,
    // cli / io
    BadShape,
    FileNotFound,
    ParseError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::EmptyInput: return "EmptyInput";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::DegeneratePolytope: return "DegeneratePolytope";
        case Errc::NotASimplex: return "NotASimplex";
        case Errc::OutsidePolytope: return "OutsidePolytope";
        case Errc::DegenerateFacet: return "DegenerateFacet";
        case Errc::CannotExpose: return "CannotExpose";
        case Errc::BiasOutOfRange: return "BiasOutOfRange";
        case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
        case Errc::InconsistentVertexValues: return "InconsistentVertexValues";
        case Errc::EffectInvalid: return "EffectInvalid";
        case Errc::NumericalBreakdown: return "NumericalBreakdown";
        case Errc::NotOptimal: return "NotOptimal";
        case Errc::InfeasibleP: return "InfeasibleP";
        case Errc::SolverFailure: return "SolverFailure";
        case Errc::NotIncompatible: return "NotIncompatible";
        case Errc::DegenerateDual: return "DegenerateDual";
        case Errc::InvalidCertificate: return "InvalidCertificate";
        case Errc::SimplexInput: return "SimplexInput";
        case Errc::SearchExhausted: return "SearchExhausted";
        case Errc::BadShape: return "BadShape";
        case Errc::FileNotFound: return "FileNotFound";
        case Errc::ParseError: return "ParseError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace gptcompat
