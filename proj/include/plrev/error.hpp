#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "plrev/rational.hpp"

namespace plrev {

enum class ErrorCode {
  NonMonotone,
  DuplicateX,
  NotArcInvariantImage,
  DegenerateInterval,
  NoFixedPoint,
  WrongDegree,
  OutOfDomain,
  HasFixedPoint,
  DirectionMismatch,
  SeamMismatch,
  NotCommuting,
  EmptyFixedSet,
  PreconditionFailed,
  NotAReverser,
  SignatureMismatch,
  NotInvolution,
  Infeasible,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this exception. `point` carries
// an exact witness location when one exists (offending seam, counterexample,
// infeasibility certificate).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<Rational> point = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        message_(what),
        point_(std::move(point)) {}

  ErrorCode code() const noexcept { return code_; }
  // what() without the code prefix.
  const std::string& message() const noexcept { return message_; }
  const std::optional<Rational>& point() const noexcept { return point_; }

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<Rational> point_;
};

}  // namespace plrev
