#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace incr {

/// Error codes for every failure mode the library can report.
/// Grouped roughly by module; shared codes (DomainViolation, BadParam)
/// are thrown wherever the same precondition recurs.
enum class Errc {
    // realfn / catalog
    UnknownName,
    BadArity,
    BadParam,
    BadInterval,
    DomainViolation,
    MissingDerivOracle,
    MissingExactOracle,
    // slope
    EqualPoints,
    OrderingViolated,
    // witness
    EqualEndpointValues,
    WrongOrientation,
    StepFloorReached,
    EndpointsNotEqual,
    NoInteriorExtremum,
    TargetNotBracketed,
    // inequalities
    NegativeK,
    BadBounds,
    DomainMismatch,
    // cantor
    LevelTooDeep,
    OutOfUnitInterval,
    TolTooSmall,
    // polyop
    DegreeExceedsSpace,
    // theoremgraph
    UnknownStatement,
    // exprparse
    SyntaxError,
    UnknownIdentifier,
    DifferentiateAbs,
    // internal consistency checks that are asserted, never assumed
    InvariantViolation,
};

const char* errc_name(Errc code);

/// Single exception type carrying a code plus optional payloads:
/// `offset` is the byte offset of a parse error, `where` the location
/// a step-size floor was hit.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Error(Errc code, const std::string& message, std::size_t offset)
        : std::runtime_error(std::string(errc_name(code)) + " at byte " + std::to_string(offset) +
                             ": " + message),
          code_(code),
          offset_(offset) {}

    static Error at_location(Errc code, const std::string& message, double where) {
        Error e(code, message);
        e.where_ = where;
        return e;
    }

    Errc code() const noexcept { return code_; }
    std::size_t offset() const noexcept { return offset_; }
    double where() const noexcept { return where_; }

private:
    Errc code_;
    std::size_t offset_ = 0;
    double where_ = 0.0;
};

} // namespace incr
