#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfree {

enum class ErrorKind {
  ShapeMismatch,
  MalformedInput,
  CapExceeded,
  NotInSemigroup,
  AntisymmetryViolation,
  RecoveryMismatch,
  DimensionMismatch,
  OddIndex,
  NonzeroIndex,
  NotChargeDiagonal,
  DegenerateForm,
  NormBoundViolation,
  NotGaugeCompatible,
  OrthonormalityFailure,
  ImplementationDefect,
  NotInvariant,
  CutoffTooSmall,
  LevelOutOfRange,
  Mismatch,
  WindowTooSmall,
  NonMonotone,
  Unstable,
  NoCommonPhase,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so the CLI can map it
// onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) raise(kind, what);
}

}  // namespace qfree
