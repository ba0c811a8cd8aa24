#pragma once

#include <stdexcept>
#include <string>

namespace wq {

// Every library error derives from Error and carries a stable kind tag that
// reports and the CLI use verbatim.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define WQ_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

WQ_DEFINE_ERROR(NotPrime);
WQ_DEFINE_ERROR(InvalidArgument);
WQ_DEFINE_ERROR(DivisionByZero);
WQ_DEFINE_ERROR(FieldMismatch);
WQ_DEFINE_ERROR(InfeasibleConstraint);
WQ_DEFINE_ERROR(RingMismatch);
WQ_DEFINE_ERROR(MissingImage);
WQ_DEFINE_ERROR(UnknownVariable);
WQ_DEFINE_ERROR(ZeroPolynomial);
WQ_DEFINE_ERROR(ExponentOverflow);
WQ_DEFINE_ERROR(ResourceBudgetExceeded);
WQ_DEFINE_ERROR(EmptyLocus);
WQ_DEFINE_ERROR(PseudoReflectionForced);
WQ_DEFINE_ERROR(EnumerationBudgetExceeded);
WQ_DEFINE_ERROR(CapTooSmall);
WQ_DEFINE_ERROR(NoRelationFound);
WQ_DEFINE_ERROR(CenterNotInSingularLocus);
WQ_DEFINE_ERROR(NonCoordinateCenter);
WQ_DEFINE_ERROR(InconsistentTower);
WQ_DEFINE_ERROR(ExponentOutOfRange);

#undef WQ_DEFINE_ERROR

// Parse errors carry a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line, int column)
      : Error("SyntaxError", what + " at line " + std::to_string(line) +
                                 ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace wq
