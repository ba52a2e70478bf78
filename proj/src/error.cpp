#include "incr/error.hpp"

namespace incr {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::UnknownName: return "UnknownName";
    case Errc::BadArity: return "BadArity";
    case Errc::BadParam: return "BadParam";
    case Errc::BadInterval: return "BadInterval";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::MissingDerivOracle: return "MissingDerivOracle";
    case Errc::MissingExactOracle: return "MissingExactOracle";
    case Errc::EqualPoints: return "EqualPoints";
    case Errc::OrderingViolated: return "OrderingViolated";
    case Errc::EqualEndpointValues: return "EqualEndpointValues";
    case Errc::WrongOrientation: return "WrongOrientation";
    case Errc::StepFloorReached: return "StepFloorReached";
    case Errc::EndpointsNotEqual: return "EndpointsNotEqual";
    case Errc::NoInteriorExtremum: return "NoInteriorExtremum";
    case Errc::TargetNotBracketed: return "TargetNotBracketed";
    case Errc::NegativeK: return "NegativeK";
    case Errc::BadBounds: return "BadBounds";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::LevelTooDeep: return "LevelTooDeep";
    case Errc::OutOfUnitInterval: return "OutOfUnitInterval";
    case Errc::TolTooSmall: return "TolTooSmall";
    case Errc::DegreeExceedsSpace: return "DegreeExceedsSpace";
    case Errc::UnknownStatement: return "UnknownStatement";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownIdentifier: return "UnknownIdentifier";
    case Errc::DifferentiateAbs: return "DifferentiateAbs";
    case Errc::InvariantViolation: return "InvariantViolation";
    }
    return "UnknownError";
}

} // namespace incr
