#pragma once

#include <stdexcept>
#include <string>

namespace matgeo {

enum class Errc {
  NotPrime,
  DegreeTooLarge,
  DivisionByZero,
  FieldMismatch,
  ShapeMismatch,
  DomainTooLarge,
  DistanceCapExceeded,
  Singular,
  NotAdjacent,
  NotAdjacentSet,
  NotMaximal,
  WrongKinds,
  Disjoint,
  ZeroNotMember,
  PreconditionViolated,
  Mismatch,
  BudgetExceeded,
  InvalidParams,
  InvalidXi,
  SingularTwist,
  NotHom,
  NoHomExists,
  NoFit,
  UnsupportedField,
  FormatError,
  IncompleteDomain,
  DuplicateKey,
  IoError,
};

const char* errc_name(Errc c);

// witness is a serialized object (matrix text or JSON) when the error carries one
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg, std::string witness = {})
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code),
        witness_(std::move(witness)) {}

  Errc code() const { return code_; }
  const std::string& witness() const { return witness_; }

 private:
  Errc code_;
  std::string witness_;
};

}  // namespace matgeo
