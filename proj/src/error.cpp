#include "matgeo/error.hpp"

namespace matgeo {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::DegreeTooLarge: return "DegreeTooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::DomainTooLarge: return "DomainTooLarge";
    case Errc::DistanceCapExceeded: return "DistanceCapExceeded";
    case Errc::Singular: return "Singular";
    case Errc::NotAdjacent: return "NotAdjacent";
    case Errc::NotAdjacentSet: return "NotAdjacentSet";
    case Errc::NotMaximal: return "NotMaximal";
    case Errc::WrongKinds: return "WrongKinds";
    case Errc::Disjoint: return "Disjoint";
    case Errc::ZeroNotMember: return "ZeroNotMember";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::Mismatch: return "Mismatch";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidXi: return "InvalidXi";
    case Errc::SingularTwist: return "SingularTwist";
    case Errc::NotHom: return "NotHom";
    case Errc::NoHomExists: return "NoHomExists";
    case Errc::NoFit: return "NoFit";
    case Errc::UnsupportedField: return "UnsupportedField";
    case Errc::FormatError: return "FormatError";
    case Errc::IncompleteDomain: return "IncompleteDomain";
    case Errc::DuplicateKey: return "DuplicateKey";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace matgeo
