#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace springer {

// Base of every library error. what() carries the offending detail.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SPRINGER_ERROR(Name)             \
  class Name : public Error {            \
   public:                               \
    explicit Name(const std::string& m)  \
        : Error(#Name ": " + m) {}       \
  }

SPRINGER_ERROR(DivisionByZero);
SPRINGER_ERROR(FieldMismatch);
SPRINGER_ERROR(AmbientMismatch);
SPRINGER_ERROR(ShapeMismatch);
SPRINGER_ERROR(SingularGram);
SPRINGER_ERROR(SingularMatrix);
SPRINGER_ERROR(InvalidShape);
SPRINGER_ERROR(NotTypeDPartition);
SPRINGER_ERROR(NotACupEndpoint);
SPRINGER_ERROR(NoAxisCrossingCup);
SPRINGER_ERROR(SizeMismatch);
SPRINGER_ERROR(ValidationError);
SPRINGER_ERROR(BadParity);
SPRINGER_ERROR(IndexOutOfRange);
SPRINGER_ERROR(SingularG);
SPRINGER_ERROR(NotAdmissible);
SPRINGER_ERROR(NotStable);
SPRINGER_ERROR(MissingSqrtMinusOne);
SPRINGER_ERROR(BadParameters);
SPRINGER_ERROR(ParamCountMismatch);
SPRINGER_ERROR(NotInComponent);
SPRINGER_ERROR(NotContained);
SPRINGER_ERROR(TooSmall);
SPRINGER_ERROR(WrongCase);
SPRINGER_ERROR(CapExceeded);

#undef SPRINGER_ERROR

// Parse failures carry the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& m, std::size_t pos)
      : Error("SyntaxError at " + std::to_string(pos) + ": " + m), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace springer
